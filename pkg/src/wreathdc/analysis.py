"""Finite-radius measurements on enumerated balls.

Everything here is exact at each computed radius; limsup and limit
quantities are never extrapolated, only reported as series.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from multiprocessing import get_context
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Callable, Sequence

from .cayley import BallIndex
from .errors import BudgetExceededError
from .itinerary import itinerary_of
from .normalform import sigma_window_membership
from .wreath import WreathElement, multiply

DEFAULT_PAIR_BUDGET = 2 * 10**9


@dataclass
class QFunction:
    """A tabulated non-decreasing function on 0..n_max; ``values[n]`` is q(n)."""

    values: tuple
    provenance: str

    def __call__(self, n: int):
        return self.values[n]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def is_nondecreasing(self) -> bool:
        return all(a <= b for a, b in zip(self.values, self.values[1:]))


def default_q(n_max: int) -> QFunction:
    """``q(n) = ceil(sqrt(log(n + 1)))``."""
    return QFunction(tuple(math.ceil(math.sqrt(math.log(n + 1))) for n in range(n_max + 1)),
                     "prescribed: ceil(sqrt(log(n+1)))")


def constant_q(value, n_max: int) -> QFunction:
    return QFunction((value,) * (n_max + 1), f"prescribed: constant {value}")


def f_alpha(alpha: float, q: QFunction, n_max: int | None = None) -> QFunction:
    """``f(n) = max{k^alpha / q(k) : 1 <= k <= n}``; ``f(0)`` is set to 0."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie strictly between 0 and 1")
    n_max = q.n_max if n_max is None else n_max
    vals = [0.0]
    best = -math.inf
    for k in range(1, n_max + 1):
        if q(k) <= 0:
            raise ValueError(f"q({k}) must be positive")
        best = max(best, k**alpha / q(k))
        vals.append(best)
    return QFunction(tuple(vals), f"f_alpha(alpha={alpha}) of {q.provenance}")


def binomial_root(alpha: float, n: int) -> float:
    """``C(n + ceil(alpha n), ceil(alpha n)) ** (1/n)`` via log-gamma."""
    if n < 1:
        raise ValueError("n must be positive")
    k = math.ceil(alpha * n)
    return math.exp((math.lgamma(n + k + 1) - math.lgamma(k + 1) - math.lgamma(n + 1)) / n)


def binomial_root_plain(alpha: float, n: int) -> float:
    """``C(n, ceil(alpha n)) ** (1/n)``."""
    k = math.ceil(alpha * n)
    return math.exp((math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)) / n)


def binomial_root_limit(alpha: float) -> float:
    """``(1 + alpha)^(1 + alpha) / alpha^alpha``, the n -> oo limit of binomial_root."""
    if alpha == 0:
        return 1.0
    return math.exp((1 + alpha) * math.log1p(alpha) - alpha * math.log(alpha))


@dataclass
class EmpiricalQ:
    q: QFunction
    ratios: tuple
    thresholds: tuple
    ratio_grows: bool


def empirical_q(ball_sizes: Sequence[int], threshold: Callable[[int], float] | None = None
                ) -> EmpiricalQ:
    """Greedy q with ``|B(n)| / |B(n - q(n))| >= threshold(n)``, made non-decreasing.

    ``ratio_grows`` reports whether the resulting ratio clears the threshold
    from radius 2 on and ends at its strict maximum over the computed range.
    """
    sizes = list(ball_sizes)
    if len(sizes) < 4:
        raise ValueError("need ball sizes for at least 4 radii")
    if any(s <= 0 for s in sizes):
        raise ValueError("ball sizes must be positive")
    threshold = threshold or (lambda n: math.log(n + 2))
    raw = []
    for n, b in enumerate(sizes):
        best = 0
        for k in range(n // 2, 0, -1):
            if b / sizes[n - k] >= threshold(n):
                best = k
                break
        raw.append(best)
    q = []
    for v in raw:
        q.append(max(v, q[-1]) if q else v)
    ratios = tuple(sizes[n] / sizes[n - q[n]] for n in range(len(sizes)))
    thresholds = tuple(threshold(n) for n in range(len(sizes)))
    grows = (all(ratios[n] >= thresholds[n] for n in range(2, len(sizes)))
             and all(ratios[-1] > r for r in ratios[:-1]))
    return EmpiricalQ(QFunction(tuple(q), "empirical from ball sizes"), ratios, thresholds, grows)


@dataclass
class DcRow:
    n: int
    ball_size: int
    commuting_pairs: int
    dc_value: float


def _commuting_by_level(elements, lengths, shape, lo, hi):
    """For a in elements[lo:hi] and b before or equal to a, count commuting
    ordered pairs per level max(l(a), l(b)) = l(a)."""
    out = {}
    for i in range(lo, hi):
        a = elements[i]
        c = 0
        for j in range(i):
            b = elements[j]
            if multiply(a, b, shape) == multiply(b, a, shape):
                c += 2
        c += 1
        out[lengths[i]] = out.get(lengths[i], 0) + c
    return out


_SHARED = None  # (elements, lengths, shape), inherited by forked workers


def _chunk_worker(bounds):
    return _commuting_by_level(*_SHARED, *bounds)


def dc_estimate(ball: BallIndex, radii: Sequence[int] | None = None,
                pair_budget: int = DEFAULT_PAIR_BUDGET, workers: int = 1) -> list[DcRow]:
    """Exact ordered commuting-pair counts in ``B(n)^2`` for each requested radius.

    Each unordered pair costs two multiplications.  If the budget does not
    cover the largest radius, the largest affordable radius is used and a
    :class:`BudgetExceededError` is raised after computing it only when no
    radius at all is affordable.
    """
    radii = sorted(set(range(ball.radius + 1) if radii is None else radii))
    affordable = [r for r in radii if ball.size(r) * (ball.size(r) + 1) <= pair_budget]
    if not affordable:
        raise BudgetExceededError("pair budget too small for any radius", None)
    top = affordable[-1]
    N = ball.size(top)
    elements, lengths = ball.elements[:N], ball.lengths[:N]
    if workers > 1:
        bounds = [round(N * math.sqrt(k / workers)) for k in range(workers + 1)]
        global _SHARED
        _SHARED = (elements, lengths, ball.shape)
        try:
            with ProcessPoolExecutor(workers, mp_context=get_context("fork")) as ex:
                parts = list(ex.map(_chunk_worker, zip(bounds, bounds[1:])))
        finally:
            _SHARED = None
    else:
        parts = [_commuting_by_level(elements, lengths, ball.shape, 0, N)]
    per_level = {}
    for part in parts:
        for lvl, c in part.items():
            per_level[lvl] = per_level.get(lvl, 0) + c
    rows = []
    tot = 0
    for k in range(top + 1):
        tot += per_level.get(k, 0)
        if k in affordable:
            size = ball.size(k)
            rows.append(DcRow(k, size, tot, tot / size**2))
    return rows


def dc_complete(rows: Sequence[DcRow], radii: Sequence[int]) -> bool:
    return {r.n for r in rows} >= set(radii)


def commuting_pairs_bruteforce(elements, shape) -> int:
    return sum(1 for a in elements for b in elements
               if multiply(a, b, shape) == multiply(b, a, shape))


@dataclass
class DensityRow:
    n: int
    ball_size: int
    count: int
    density_value: float
    exact: Fraction


def density_estimate(ball: BallIndex, predicate: Callable[[WreathElement], bool]) -> list[DensityRow]:
    rows = []
    count = 0
    pos = 0
    for k, sphere in enumerate(ball.sphere_sizes):
        for g in ball.elements[pos: pos + sphere]:
            if predicate(g):
                count += 1
        pos += sphere
        frac = Fraction(count, pos)
        rows.append(DensityRow(k, pos, count, float(frac), frac))
    return rows


def in_base(g: WreathElement) -> bool:
    return g.rho == 0


@dataclass
class PartitionRow:
    n: int
    ball_size: int
    N_count: int
    R_q: int
    R_q_flat: int
    R_q_f: int | None
    q_n: float


def itinerary_spread(ball: BallIndex, g: WreathElement) -> int:
    return itinerary_of(ball.S, ball.geodesic_witness(g)).spread


def coords_within(g: WreathElement, radius: float, H) -> bool:
    return all(H.geodesic_length(v) <= radius for _, v in g.coords)


def r_partition(ball: BallIndex, q: QFunction, mode: str = "itinerary",
                f: QFunction | None = None) -> list[PartitionRow]:
    """Split ``N ∩ B(n)`` into ``R_q(n)`` and its complement at every radius.

    ``mode="itinerary"`` uses ``maxit - minit <= q(n)`` of the geodesic
    representative; ``mode="sigma"`` uses ``-q(n) <= sigma_minus <=
    sigma_plus <= q(n)`` of the normal form.  With ``f`` given, also counts
    the subset whose coordinates all have S0-length at most ``f(n)``.
    """
    if mode not in ("itinerary", "sigma"):
        raise ValueError("mode must be 'itinerary' or 'sigma'")
    H = ball.shape.H
    base = []  # (length, spread-or-window data, element)
    for g, ln in zip(ball.elements, ball.lengths):
        if g.rho == 0:
            base.append((ln, g))
    spreads = {}
    if mode == "itinerary":
        for _, g in base:
            spreads[g] = itinerary_spread(ball, g)
    rows = []
    for n in range(ball.radius + 1):
        qn = q(n)
        members = [g for ln, g in base if ln <= n]
        if mode == "itinerary":
            inside = [g for g in members if spreads[g] <= qn]
        else:
            inside = [g for g in members if sigma_window_membership(g, qn)]
        rqf = None
        if f is not None:
            rqf = sum(1 for g in inside if coords_within(g, f(n), H))
        rows.append(PartitionRow(n, ball.size(n), len(members), len(inside),
                                 len(members) - len(inside), rqf, qn))
    return rows


def r_q_f_subset(R_q: Sequence[WreathElement], f_n: float, H) -> int:
    return sum(1 for g in R_q if coords_within(g, f_n, H))


def r_sets(ball: BallIndex, n: int, q_n: float):
    """``(R_q(n), R_q_flat(n))`` as element lists, itinerary criterion."""
    inside, outside = [], []
    for g in ball.elements_upto(n):
        if g.rho != 0:
            continue
        (inside if itinerary_spread(ball, g) <= q_n else outside).append(g)
    return inside, outside


def centralizer_fraction(ball: BallIndex, g: WreathElement, n: int | None = None) -> Fraction:
    elems = ball.elements_upto(ball.radius if n is None else n)
    shape = ball.shape
    c = sum(1 for h in elems if multiply(g, h, shape) == multiply(h, g, shape))
    return Fraction(c, len(elems))


def centralizer_elements(ball: BallIndex, g: WreathElement, n: int | None = None) -> list:
    elems = ball.elements_upto(ball.radius if n is None else n)
    shape = ball.shape
    return [h for h in elems if multiply(g, h, shape) == multiply(h, g, shape)]


def example15_closed_forms(n: int) -> dict:
    """Ball size of ``F2 x Z``, its free-factor count, and their ratio."""
    if n < 0:
        raise ValueError("n must be non-negative")
    base = 2 * 3**n - 1
    ball = 4 * 3**n - 2 * n - 3
    return {"ball": ball, "base_count": base, "ratio": Fraction(base, ball)}


def example15_ball_by_sum(n: int) -> int:
    """``|B_F(n)| + 2 * sum_{i=1..n} |B_F(n - i)|`` with ``|B_F(k)| = 2*3^k - 1``."""
    bf = lambda k: 2 * 3**k - 1
    return bf(n) + 2 * sum(bf(n - i) for i in range(1, n + 1))


@dataclass
class CountingRow:
    n: int
    q_n: float
    R_q_flat: int
    ball_n_plus_D: int
    rhs: float
    holds: bool


def counting_inequality(partition: Sequence[PartitionRow], D_prime: int,
                        ball_size: Callable[[int], int | None]) -> list[CountingRow]:
    """``|B(n + D')| > q(n)/2 * |R_q_flat(n)|`` wherever ``ball_size(n + D')`` is known."""
    rows = []
    for r in partition:
        big = ball_size(r.n + D_prime)
        if big is None:
            continue
        rhs = r.q_n / 2 * r.R_q_flat
        rows.append(CountingRow(r.n, r.q_n, r.R_q_flat, big, rhs, big > rhs))
    return rows


def format_rows(rows, columns: Sequence[str] | None = None) -> str:
    """CSV text with a header; floats printed with 12 significant digits."""
    if columns is None:
        columns = [f.name for f in fields(rows[0])] if rows else []
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        d = asdict(r)
        w.writerow([_fmt(d[c]) for c in columns])
    return buf.getvalue()


def write_rows(path, rows, columns: Sequence[str] | None = None):
    with open(path, "w", newline="") as fh:
        fh.write(format_rows(rows, columns))


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)
