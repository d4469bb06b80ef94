"""Perturbations of elements along geodesic itineraries, and their inverses.

Two families are implemented:

* dot variants: cut a geodesic word at a tower index and pull the two
  halves apart by ``t^-(3q + 4C)``; the original element is read back
  from the two separated support clusters;
* J-variants of base elements: split the geodesic itinerary at its
  extremal points into ``x y z``, edit two coordinates by a fixed
  ``u != 1`` and reassemble as ``x' t^-2C y'^-1 t^-2C z'`` (or with
  ``t^2C`` when the minimum is reached first).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .cayley import BallIndex, GeneratingSet
from .errors import DegenerateTowerError, MalformedVariantError, PreconditionError
from .itinerary import Itinerary, evaluate, itinerary_of, split
from .wreath import (
    GroupShape,
    WreathElement,
    inverse,
    multiply_all,
    t_power,
)

POS_INF = math.inf
NEG_INF = -math.inf


@dataclass(frozen=True)
class TowerReduction:
    position: int
    ell: int
    kappa: tuple[int, ...]


def tower_factors(I: Itinerary, i: int, S: GeneratingSet) -> list:
    """The H-factors ``(s_iota(k))|_(i - sigma(k-1))`` whose product is ``g|_i``."""
    e = S.shape.H.identity
    return [S[j].coord(i - I.sigma[k], e) for k, j in enumerate(I.iota)]


def reduced_tower(g: WreathElement, witness, i: int, S: GeneratingSet) -> TowerReduction:
    """Cancel, left to right, maximal identity-valued runs of factors at position i.

    Equivalent to erasing loops from the walk of prefix products: from the
    current prefix value, jump to its last occurrence and keep the next factor.
    """
    H = S.shape.H
    I = itinerary_of(S, witness)
    factors = tower_factors(I, i, S)
    prefix = [H.identity]
    for f in factors:
        prefix.append(H.multiply(prefix[-1], f))
    last = {}
    for k, v in enumerate(prefix):
        last[v] = k
    l = len(factors)
    kappa = []
    cur = 0
    while True:
        cur = last[prefix[cur]]
        if cur == l:
            break
        kappa.append(cur + 1)
        cur += 1
    if not kappa:
        raise DegenerateTowerError(f"coordinate at position {i} reduces to the empty product")
    return TowerReduction(i, len(kappa), tuple(kappa))


def pick_position(g: WreathElement, I: Itinerary, C: int, f_n: float, H) -> int | None:
    """Smallest i in (minit - C, maxit + C) with ``l_S0(g|_i) > f(n)``, if any."""
    for p, v in g.coords:
        if I.minit - C < p < I.maxit + C and H.geodesic_length(v) > f_n:
            return p
    return None


def dot_shift(q_n: float, C: int) -> int:
    return 3 * math.ceil(q_n) + 4 * C


def dot_variant(g: WreathElement, j: int, q_n: float, tower: TowerReduction, witness,
                S: GeneratingSet) -> WreathElement:
    """``g_(j,1) t^-(3q + 4C) g_(j,2)`` for the cut at ``kappa(j)``."""
    if not 1 <= j <= tower.ell:
        raise IndexError(f"tower index {j} outside 1..{tower.ell}")
    shape = S.shape
    I = itinerary_of(S, witness)
    I1, I2 = split(I, tower.kappa[j - 1])
    g1 = evaluate(S, I1, shape)
    g2 = evaluate(S, I2, shape)
    return multiply_all([g1, t_power(-dot_shift(q_n, S.C)), g2], shape)


def recover_from_dot(h: WreathElement, q_n: float, C: int, shape: GroupShape) -> WreathElement:
    q = math.ceil(q_n)
    M = 3 * q + 4 * C
    lo, hi = -q - C, q + C
    first = [p for p in h.support if p <= hi]
    second = [p for p in h.support if p > hi]
    if (first and first[0] < lo) or (second and (second[0] < lo + M or second[-1] > hi + M)):
        raise MalformedVariantError("support does not split into the two expected windows")
    # gap between the clusters (min/max of an empty set are +/- infinity)
    tau = (second[0] if second else POS_INF) - (first[-1] if first else NEG_INF)
    if tau < q + 2 * C:
        raise MalformedVariantError(f"support gap {tau} smaller than q + 2C = {q + 2 * C}")
    H = shape.H
    coords = dict(h.coords)
    e = H.identity
    out = {}
    for i in range(lo, hi + 1):
        v = H.multiply(coords.get(i, e), coords.get(i + M, e))
        if v != e:
            out[i] = v
    return WreathElement(tuple(sorted(out.items())), h.rho + M)


@dataclass(frozen=True)
class SigmaSplit:
    g: WreathElement
    sigma_plus: int
    sigma_minus: int
    k_plus: int
    k_minus: int
    x: WreathElement
    y: WreathElement
    z: WreathElement
    itineraries: tuple[Itinerary, Itinerary, Itinerary]

    @property
    def orientation(self) -> str:
        return "plusfirst" if self.k_plus <= self.k_minus else "minusfirst"


def xyz_split(g: WreathElement, witness, S: GeneratingSet) -> SigmaSplit:
    if g.rho != 0:
        raise PreconditionError("x/y/z split is defined for base-group elements only")
    shape = S.shape
    I = itinerary_of(S, witness)
    sp, sm = I.maxit, I.minit
    kp = I.sigma.index(sp)
    km = I.sigma.index(sm)
    a, b = (kp, km) if kp <= km else (km, kp)
    I1, rest = split(I, a)
    I2, I3 = split(rest, b - a)
    x, y, z = (evaluate(S, It, shape) for It in (I1, I2, I3))
    return SigmaSplit(g, sp, sm, kp, km, x, y, z, (I1, I2, I3))


@dataclass(frozen=True)
class JVariant:
    J: tuple[int, int]
    element: WreathElement
    orientation: str
    xdot: WreathElement
    ydot: WreathElement
    zdot: WreathElement


def _edit(g, edits, H, shape):
    """Apply ``{position: (left, right)}`` multiplications to coordinates of g."""
    coords = dict(g.coords)
    e = H.identity
    for i, (left, right) in edits.items():
        v = H.multiply(H.multiply(left, coords.get(i, e)), right)
        if v == e:
            coords.pop(i, None)
        else:
            coords[i] = v
    return WreathElement(tuple(sorted(coords.items())), g.rho)


def valid_J_sets(sp: SigmaSplit):
    return list(combinations(range(sp.sigma_minus, sp.sigma_plus + 1), 2))


def j_variant(sp: SigmaSplit, J, u, C: int, shape: GroupShape) -> JVariant:
    J = tuple(sorted(set(J)))
    if len(J) != 2:
        raise PreconditionError("J must have exactly two elements")
    if not (sp.sigma_minus <= J[0] and J[1] <= sp.sigma_plus):
        raise PreconditionError(f"J must lie in [{sp.sigma_minus}, {sp.sigma_plus}]")
    H = shape.H
    if u == H.identity:
        raise PreconditionError("u must not be the identity")
    e = H.identity
    ui = H.inverse(u)
    smin, smax = sp.sigma_minus, sp.sigma_plus
    xe, ye, ze = {}, {}, {}
    if sp.orientation == "plusfirst":
        # x runs 0 -> sigma+, y runs sigma+ -> sigma-, z runs sigma- -> 0
        for j in J:
            if j >= 0:
                xe[j] = (e, u)
                ye[j - smax] = (ui, e)
            else:
                ye[j - smax] = (e, ui)
                ze[j - smin] = (u, e)
        sep = t_power(-2 * C)
    else:
        # x runs 0 -> sigma-, y runs sigma- -> sigma+, z runs sigma+ -> 0
        for j in J:
            if j <= 0:
                xe[j] = (e, u)
                ye[j - smin] = (ui, e)
            else:
                ye[j - smin] = (e, ui)
                ze[j - smax] = (u, e)
        sep = t_power(2 * C)
    xd = _edit(sp.x, xe, H, shape)
    yd = _edit(sp.y, ye, H, shape)
    zd = _edit(sp.z, ze, H, shape)
    h = multiply_all([xd, sep, inverse(yd, shape), sep, zd], shape)
    return JVariant(J, h, sp.orientation, xd, yd, zd)


def _blocks(sigma_plus, sigma_minus, C, orientation):
    """(offset, lo, hi, rho) of the x', y'^-1, z' blocks inside a J-variant."""
    span = sigma_plus - sigma_minus
    if orientation == "plusfirst":
        return [
            (0, sigma_minus - C + 1, sigma_plus + C - 1, -sigma_plus),
            (sigma_plus + 2 * C, -C + 1, span + C - 1, -span),
            (2 * sigma_plus - sigma_minus + 4 * C, -C + 1, span + C - 1, sigma_minus),
        ]
    return [
        (0, sigma_minus - C + 1, sigma_plus + C - 1, -sigma_minus),
        (sigma_minus - 2 * C, -span - C + 1, C - 1, span),
        (2 * sigma_minus - sigma_plus - 4 * C, -span - C + 1, C - 1, sigma_plus),
    ]


def recover_from_jvariant(h: WreathElement, sigma_plus: int, u, C: int, shape: GroupShape,
                          ball: BallIndex | None = None):
    """Rebuild g (and J, when ``ball`` supplies the geodesic representatives).

    The orientation is read off the sign of ``rho(h)``; together with
    ``sigma_plus`` it determines ``sigma_minus`` and the three coordinate
    windows.  Returns ``(g, J)`` with ``J = None`` if no ball is given.
    """
    if h.rho < 0:
        orientation = "plusfirst"
        twice = h.rho + 4 * C
        if twice % 2:
            raise MalformedVariantError("rho(h) has the wrong parity")
        sigma_minus = sigma_plus + twice // 2
    elif h.rho > 0:
        orientation = "minusfirst"
        twice = h.rho - 4 * C
        if twice % 2:
            raise MalformedVariantError("rho(h) has the wrong parity")
        sigma_minus = sigma_plus - twice // 2
    else:
        raise MalformedVariantError("J-variants never lie in the base group")
    if not (sigma_minus <= 0 <= sigma_plus and sigma_minus < sigma_plus):
        raise MalformedVariantError("inconsistent extremal itinerary points")

    blocks = _blocks(sigma_plus, sigma_minus, C, orientation)
    parts = [dict() for _ in blocks]
    for p, v in h.coords:
        for b, (off, lo, hi, _) in enumerate(blocks):
            if lo <= p - off <= hi:
                parts[b][p - off] = v
                break
        else:
            raise MalformedVariantError(f"coordinate at {p} outside every window")
    xd, yinv, zd = (WreathElement(tuple(sorted(part.items())), rho)
                    for part, (_, _, _, rho) in zip(parts, blocks))
    yd = inverse(yinv, shape)
    g = multiply_all([xd, yd, zd], shape)
    if g.rho != 0:
        raise MalformedVariantError("recovered element is not in the base group")
    if ball is None:
        return g, None

    sp = xyz_split(g, ball.geodesic_witness(g), ball.S)
    if sp.sigma_plus != sigma_plus or sp.sigma_minus != sigma_minus or sp.orientation != orientation:
        raise MalformedVariantError("recovered element has different extremal points")
    H = shape.H
    if orientation == "plusfirst":
        J = [i for i in _diff(sp.x, xd, H) if i >= 0]
        J += [i + sigma_minus for i in _diff(sp.z, zd, H) if i + sigma_minus < 0]
    else:
        J = [i for i in _diff(sp.x, xd, H) if i <= 0]
        J += [i + sigma_plus for i in _diff(sp.z, zd, H) if i + sigma_plus > 0]
    J = tuple(sorted(J))
    if len(J) != 2 or j_variant(sp, J, u, C, shape).element != h:
        raise MalformedVariantError("could not identify J")
    return g, J


def _diff(a, b, H):
    ca, cb = dict(a.coords), dict(b.coords)
    e = H.identity
    return sorted(i for i in set(ca) | set(cb) if ca.get(i, e) != cb.get(i, e))
