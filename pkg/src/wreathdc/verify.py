"""Property suites behind the ``verify`` subcommand.

Each suite returns a :class:`Report`; ``failures`` lists concrete
counterexamples (truncated) and ``failure_count`` their total number.
Word lengths of perturbed elements come from, in order of preference, a
BFS ball large enough to contain them, the closed-form length for the
standard generating set, or nothing (the check is then counted as
unchecked rather than passed).
"""
from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .analysis import QFunction, counting_inequality, default_q, f_alpha, r_partition
from .cayley import BallIndex, GeneratingSet, enumerate_ball
from .constructions import (
    dot_shift,
    dot_variant,
    j_variant,
    pick_position,
    recover_from_dot,
    recover_from_jvariant,
    reduced_tower,
    valid_J_sets,
    xyz_split,
)
from .coordgroup import DEFAULT_ELEMENT_CAP
from .errors import CapExceededError, PreconditionError, WreathError
from .formula import standard_ball_sizes, standard_length
from .itinerary import itinerary_constants, itinerary_of, insert_coordinate
from .normalform import emit_expression, nf_length, normal_form
from .wreath import format_element, t_power

SUITES = ("lemma25", "lemma34", "lemma37", "nf", "counting")
MAX_LISTED_FAILURES = 20


@dataclass
class VerifyConfig:
    n: int = 10
    samples: int = 100
    seed: int = 0
    q: QFunction | None = None
    alpha: float = 0.5
    u: object = None
    element_cap: int = DEFAULT_ELEMENT_CAP
    bfs_cap: int = 300_000


@dataclass
class Report:
    lemma: str
    samples: int = 0
    failure_count: int = 0
    max_length_slack: int | None = None
    allowed_slack: int | None = None
    checks: int = 0
    checked_bfs: int = 0
    checked_formula: int = 0
    unchecked: int = 0
    params: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def fail(self, **info):
        self.failure_count += 1
        if len(self.failures) < MAX_LISTED_FAILURES:
            self.failures.append(info)

    def slack(self, value: int):
        if self.max_length_slack is None or value > self.max_length_slack:
            self.max_length_slack = value

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    def write(self, path):
        Path(path).write_text(self.to_json())


def is_standard(S: GeneratingSet) -> bool:
    return set(S.elements) == set(GeneratingSet.standard(S.shape).elements)


class LengthOracle:
    """Exact word lengths up to a radius, from BFS when affordable."""

    def __init__(self, S: GeneratingSet, ball: BallIndex, radius: int, bfs_cap: int,
                 element_cap: int = DEFAULT_ELEMENT_CAP):
        self.S = S
        self.standard = is_standard(S)
        self.ball = ball
        if ball.radius < radius:
            cap = min(bfs_cap, element_cap)
            predicted = None
            if self.standard:
                predicted = standard_ball_sizes(S.shape, radius)[radius]
            if predicted is None or predicted <= cap:
                try:
                    self.ball = enumerate_ball(S, radius, cap)
                except CapExceededError:
                    pass
        self.radius = radius

    @property
    def bfs_radius(self) -> int:
        return self.ball.radius

    def __call__(self, g):
        """``(length, source)`` with source "bfs", "formula" or None."""
        ln = self.ball.word_length(g)
        if ln is not None:
            return ln, "bfs"
        if self.standard:
            return standard_length(g, self.S.shape), "formula"
        return None, None

    def exact(self, g):
        return self(g)[0]


def _count(report: Report, source):
    report.checks += 1
    if source == "bfs":
        report.checked_bfs += 1
    elif source == "formula":
        report.checked_formula += 1
    else:
        report.unchecked += 1


def _sample(rng: random.Random, population: list, k: int) -> list:
    if k >= len(population):
        return list(population)
    picks = sorted(rng.sample(range(len(population)), k))
    return [population[i] for i in picks]


def _default_u(S: GeneratingSet, u):
    H = S.shape.H
    if u is None:
        if not H.generators:
            raise PreconditionError("coordinate group has no generators to pick u from")
        return H.generators[0][1]
    return H.validate(u)


def _constants(S: GeneratingSet, u, ball: BallIndex, cfg: VerifyConfig):
    """Insertion constants, enlarging the ball until the t-powers they need appear."""
    probe = ball
    while True:
        try:
            return itinerary_constants(S, u, probe.word_length)
        except PreconditionError:
            if len(probe) >= cfg.bfs_cap:
                raise
            try:
                probe = enumerate_ball(S, probe.radius + 1, min(cfg.bfs_cap, cfg.element_cap))
            except CapExceededError:
                raise PreconditionError("t-powers needed for D lie beyond the BFS cap")


def lemma25(S: GeneratingSet, cfg: VerifyConfig, ball: BallIndex | None = None) -> Report:
    """Support inside (minit - C, maxit + C); insertions cost at most D."""
    ball = ball if ball is not None and ball.radius >= cfg.n else enumerate_ball(S, cfg.n, cfg.element_cap)
    u = _default_u(S, cfg.u)
    consts = _constants(S, u, ball, cfg)
    rep = Report("lemma25", allowed_slack=consts.D,
                 params={"n": cfg.n, "seed": cfg.seed, "C": consts.C, "D": consts.D,
                         "m_S": consts.m_S, "u": S.shape.H.format(u)})
    C = consts.C
    members = ball.elements_upto(cfg.n)
    itins = []
    for g in members:
        I = itinerary_of(S, ball.geodesic_witness(g))
        itins.append(I)
        rep.checks += 1
        if g.coords and not (I.minit - C < g.coords[0][0] and g.coords[-1][0] < I.maxit + C):
            rep.fail(kind="support", element=format_element(g, S.shape), itinerary=str(I))
    oracle = LengthOracle(S, ball, cfg.n + consts.D, cfg.bfs_cap, cfg.element_cap)
    rng = random.Random(cfg.seed)
    for _ in range(cfg.samples):
        k = rng.randrange(len(members))
        g, I = members[k], itins[k]
        j = rng.randint(I.minit - consts.m_S, I.maxit + consts.m_S)
        side = rng.choice(("left", "right"))
        ins = insert_coordinate(g, I, u, j, side, S, consts, oracle.exact)
        length, source = oracle(ins.element)
        _count(rep, source)
        rep.samples += 1
        if length is None:
            continue
        rep.slack(length - len(I))
        if length > ins.bound:
            rep.fail(kind="insertion", element=format_element(g, S.shape), j=j, side=side,
                     length=length, bound=ins.bound)
    return rep


def r_flow(ball: BallIndex, n: int, q_n: float, f_n: float) -> list:
    """``R_q(n) minus R_q^f(n)``: base elements of B(n) with itinerary spread at most
    q(n) and some coordinate of S0-length above f(n)."""
    S = ball.S
    H = S.shape.H
    out = []
    for g in ball.elements_upto(n):
        if g.rho != 0:
            continue
        I = itinerary_of(S, ball.geodesic_witness(g))
        if I.spread <= q_n and pick_position(g, I, S.C, f_n, H) is not None:
            out.append(g)
    return out


def lemma34(S: GeneratingSet, cfg: VerifyConfig, ball: BallIndex | None = None) -> Report:
    """Dot variants are distinct, short and invertible."""
    n = cfg.n
    ball = ball if ball is not None and ball.radius >= n else enumerate_ball(S, n, cfg.element_cap)
    q = cfg.q or default_q(n)
    f = f_alpha(cfg.alpha, q, n)
    q_n, f_n = q(n), f(n)
    C = S.C
    M = dot_shift(q_n, C)
    lt = ball.word_length(t_power(1))
    if lt is None:
        raise PreconditionError("t is not in the enumerated ball")
    radius = n + M * lt
    rep = Report("lemma34", allowed_slack=M * lt,
                 params={"n": n, "seed": cfg.seed, "q_n": q_n, "f_n": f_n, "C": C,
                         "shift": M, "radius_bound": radius, "alpha": cfg.alpha})
    flow = r_flow(ball, n, q_n, f_n)
    rep.params["flow_size"] = len(flow)
    oracle = LengthOracle(S, ball, radius, cfg.bfs_cap, cfg.element_cap)
    rng = random.Random(cfg.seed)
    H = S.shape.H
    for g in _sample(rng, flow, cfg.samples):
        rep.samples += 1
        w = ball.geodesic_witness(g)
        I = itinerary_of(S, w)
        i = pick_position(g, I, C, f_n, H)
        tower = reduced_tower(g, w, i, S)
        seen = {}
        for j in range(1, tower.ell + 1):
            h = dot_variant(g, j, q_n, tower, w, S)
            if h in seen:
                rep.fail(kind="collision", element=format_element(g, S.shape), j=j, other=seen[h])
            seen[h] = j
            length, source = oracle(h)
            _count(rep, source)
            if length is not None:
                rep.slack(length - len(w))
                if length > radius:
                    rep.fail(kind="length", element=format_element(g, S.shape), j=j,
                             length=length, bound=radius)
            try:
                back = recover_from_dot(h, q_n, C, S.shape)
            except WreathError as exc:
                rep.fail(kind="recover", element=format_element(g, S.shape), j=j, error=str(exc))
                continue
            if back != g:
                rep.fail(kind="recover", element=format_element(g, S.shape), j=j,
                         got=format_element(back, S.shape))
    return rep


def lemma37(S: GeneratingSet, cfg: VerifyConfig, ball: BallIndex | None = None) -> Report:
    """J-variants: length within D', recovery of (g, J), injectivity in J."""
    n = cfg.n
    ball = ball if ball is not None and ball.radius >= n else enumerate_ball(S, n, cfg.element_cap)
    u = _default_u(S, cfg.u)
    if u == S.shape.H.identity:
        raise PreconditionError("u must not be the identity")
    consts = _constants(S, u, ball, cfg)
    C = consts.C
    rep = Report("lemma37", allowed_slack=consts.D_prime,
                 params={"n": n, "seed": cfg.seed, "C": C, "D": consts.D,
                         "D_prime": consts.D_prime, "u": S.shape.H.format(u)})
    pool = []
    for g in ball.elements_upto(n):
        if g.rho == 0:
            sp = xyz_split(g, ball.geodesic_witness(g), S)
            if sp.sigma_plus - sp.sigma_minus >= 1:
                pool.append(g)
    rep.params["pool_size"] = len(pool)
    oracle = LengthOracle(S, ball, n + consts.D_prime, cfg.bfs_cap, cfg.element_cap)
    rng = random.Random(cfg.seed)
    for g in _sample(rng, pool, cfg.samples):
        rep.samples += 1
        w = ball.geodesic_witness(g)
        sp = xyz_split(g, w, S)
        seen = {}
        for J in valid_J_sets(sp):
            v = j_variant(sp, J, u, C, S.shape)
            h = v.element
            label = format_element(g, S.shape)
            if h in seen:
                rep.fail(kind="collision", element=label, J=list(J), other=list(seen[h]))
            seen[h] = J
            length, source = oracle(h)
            _count(rep, source)
            if length is not None:
                rep.slack(length - len(w))
                if length > len(w) + consts.D_prime:
                    rep.fail(kind="length", element=label, J=list(J), length=length,
                             bound=len(w) + consts.D_prime)
            try:
                back, J2 = recover_from_jvariant(h, sp.sigma_plus, u, C, S.shape, ball)
            except WreathError as exc:
                rep.fail(kind="recover", element=label, J=list(J), error=str(exc))
                continue
            if back != g or J2 != J:
                rep.fail(kind="recover", element=label, J=list(J),
                         got=format_element(back, S.shape), got_J=list(J2 or ()))
    return rep


def nf_suite(S: GeneratingSet, cfg: VerifyConfig, ball: BallIndex | None = None) -> Report:
    """Normal-form length equals BFS length on all of ``N ∩ B(n)``."""
    if not is_standard(S):
        raise PreconditionError("normal forms need the standard generating set S0 ∪ {t, t^-1}")
    n = cfg.n
    ball = ball if ball is not None and ball.radius >= n else enumerate_ball(S, n, cfg.element_cap)
    rep = Report("nf", allowed_slack=0, params={"n": n})
    for g in ball.elements_upto(n):
        if g.rho != 0:
            continue
        rep.samples += 1
        rep.checks += 1
        rep.checked_bfs += 1
        nf = normal_form(g, S.shape)
        want = ball.word_length(g)
        got = nf_length(nf)
        rep.slack(got - want)
        if got != want:
            rep.fail(kind="length", element=format_element(g, S.shape), nf=got, bfs=want)
        for order in ("left_first", "right_first"):
            word = emit_expression(nf, S, order)
            if len(word) != got or S.evaluate(word) != g:
                rep.fail(kind="expression", element=format_element(g, S.shape), order=order)
    return rep


def counting_suite(S: GeneratingSet, cfg: VerifyConfig, ball: BallIndex | None = None) -> Report:
    """``|B(n + D')| > q(n)/2 |R_q_flat(n)|`` at every radius with both sides known."""
    n = cfg.n
    ball = ball if ball is not None and ball.radius >= n else enumerate_ball(S, n, cfg.element_cap)
    u = _default_u(S, cfg.u)
    consts = _constants(S, u, ball, cfg)
    q = cfg.q or default_q(n)
    part = r_partition(ball, q)
    sizes = ball.ball_sizes
    formula = standard_ball_sizes(S.shape, n + consts.D_prime) if is_standard(S) else None

    def size(k):
        if k < len(sizes):
            return sizes[k]
        return formula[k] if formula is not None else None

    rows = counting_inequality(part, consts.D_prime, size)
    rep = Report("counting", params={"n": n, "D_prime": consts.D_prime,
                                     "q": [q(k) for k in range(n + 1)]})
    for r in rows:
        rep.samples += 1
        rep.checks += 1
        if r.n + consts.D_prime <= ball.radius:
            rep.checked_bfs += 1
        else:
            rep.checked_formula += 1
        if not r.holds:
            rep.fail(kind="inequality", n=r.n, lhs=r.ball_n_plus_D, rhs=r.rhs)
    rep.unchecked = len(part) - len(rows)
    return rep


RUNNERS = {
    "lemma25": lemma25,
    "lemma34": lemma34,
    "lemma37": lemma37,
    "nf": nf_suite,
    "counting": counting_suite,
}


def run_suite(name: str, S: GeneratingSet, cfg: VerifyConfig, ball: BallIndex | None = None) -> Report:
    if name not in RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    rep = RUNNERS[name](S, cfg, ball)
    if rep.samples == 0:
        rep.fail(kind="empty", reason="nothing to check at this radius")
    return rep
