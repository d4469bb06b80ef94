"""Closed-form word lengths and ball sizes for S = S0 ∪ {t, t^-1}.

These are independent of the BFS engine and serve as oracles where balls
are too large to enumerate.  With the standard generating set a word moves
a cursor along Z (``t`` moves it down by one, ``t^-1`` up) and writes
S0-letters at the cursor, so

    l_S(g) = sum_i l_S0(g|_i) + shortest walk from 0 to -rho(g)
             visiting every position of supp(g).
"""
from __future__ import annotations

from .wreath import GroupShape, WreathElement


def walk_length(lo: int, hi: int, end: int) -> int:
    """Shortest walk on Z from 0 to ``end`` covering [lo, hi] (lo <= 0, end <= hi)."""
    left_first = -lo + (hi - lo) + (hi - end)
    right_first = hi + (hi - lo) + (end - lo)
    return min(left_first, right_first)


def standard_length(g: WreathElement, shape: GroupShape) -> int:
    """Exact ``l_S(g)`` for the standard generating set ``S0 ∪ {t^±1}``."""
    H = shape.H
    letters = sum(H.geodesic_length(v) for _, v in g.coords)
    if shape.variant == "direct":
        return letters + abs(g.rho)
    end = -g.rho
    lo = min(0, end)
    hi = max(0, end)
    if g.coords:
        lo = min(lo, g.coords[0][0])
        hi = max(hi, g.coords[-1][0])
    return letters + walk_length(lo, hi, end)


def _polymul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), n + 1 - i)):
                out[i + j] += x * b[j]
    return out


def _prefix(a):
    out, tot = [], 0
    for x in a:
        tot += x
        out.append(tot)
    return out


def standard_ball_sizes(shape: GroupShape, n_max: int) -> list[int]:
    """``|B_S(n)|`` for n = 0..n_max by counting over walks and coordinate weights."""
    H = shape.H
    sph = H.sphere_sizes(n_max)
    if shape.variant == "direct":
        hb = _prefix(sph)
        return [sum(hb[n - abs(r)] for r in range(-n, n + 1)) for n in range(n_max + 1)]

    P = sph[:]
    Q = [0] + sph[1:]  # non-identity coordinates
    # cum[a][L][k]: number of assignments to L positions, a of them forced
    # non-identity, with total S0-weight <= k.
    powers = [[1] + [0] * n_max]
    for _ in range(n_max + 1):
        powers.append(_polymul(powers[-1], P, n_max))
    forced = {0: [_prefix(p) for p in powers]}
    forced[1] = [None] + [_prefix(_polymul(Q, powers[L - 1], n_max)) for L in range(1, n_max + 2)]
    QQ = _polymul(Q, Q, n_max)
    forced[2] = [None, None] + [_prefix(_polymul(QQ, powers[L - 2], n_max))
                                for L in range(2, n_max + 2)]

    sizes = []
    for n in range(n_max + 1):
        total = 0
        for end in range(-n, n + 1):
            a0, b0 = min(0, end), max(0, end)
            lo = a0
            while True:
                if walk_length(lo, b0, end) > n:
                    break
                hi = b0
                while True:
                    w = walk_length(lo, hi, end)
                    if w > n:
                        break
                    L = hi - lo + 1
                    a = (lo < a0) + (hi > b0)
                    total += forced[a][L][n - w]
                    hi += 1
                lo -= 1
        sizes.append(total)
    return sizes
