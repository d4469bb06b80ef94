"""The acceptance experiments, each producing a verdict and its artifacts.

``run_all`` evaluates criteria 1-10 and returns their artifacts as text so
that determinism (criterion 11) is a byte comparison of two runs.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import analysis as an
from .cayley import GeneratingSet, enumerate_ball
from .coordgroup import CoordinateGroup
from .itinerary import itinerary_of
from .normalform import nf_length, normal_form
from .presets import FIVE_WORD, FIVE_WORD_LONG, example15, lamplighter, five_generators
from .verify import VerifyConfig, run_suite
from .wreath import GroupShape

TITLES = {
    1: "five-generator itineraries",
    2: "F2 x Z ball sizes and density",
    3: "normal-form minimality on C2 and C3 wreath Z",
    4: "support window and insertion bound",
    5: "dot variants: distinct, short, recoverable",
    6: "J-variants: bound, recovery, injectivity",
    7: "counting inequality",
    8: "binomial-root numerics",
    9: "degree of commutativity",
    10: "density trends",
    11: "determinism",
}


@dataclass
class CriterionResult:
    number: int
    passed: bool
    detail: str
    artifacts: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:>2} [{verdict}] {TITLES[self.number]}: {self.detail}"


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def _csv(rows, columns=None) -> str:
    return an.format_rows(rows, columns)


class Context:
    """Balls shared between criteria within one run."""

    def __init__(self):
        self._cache = {}

    def ball(self, key, S, n):
        if key not in self._cache or self._cache[key].radius < n:
            self._cache[key] = enumerate_ball(S, n)
        return self._cache[key]


def criterion1(ctx) -> CriterionResult:
    t0 = time.perf_counter()
    S = five_generators()
    g = S.evaluate(FIVE_WORD)
    I = itinerary_of(S, FIVE_WORD)
    I2 = itinerary_of(S, FIVE_WORD_LONG)
    elapsed = time.perf_counter() - t0
    ok = (g.rho == 3 and g.support == (-1, 1, 2, 6)
          and I.sigma == (0, 2, 2, 5, 3, 1, 1, -1, -1, -3) and (I.maxit, I.minit) == (5, -3)
          and len(I2) == 18 and (I2.maxit, I2.minit) == (6, -4) and elapsed < 1)
    data = {"rho": g.rho, "support": list(g.support), "sigma": list(I.sigma),
            "maxit": I.maxit, "minit": I.minit, "long_maxit": I2.maxit, "long_minit": I2.minit}
    detail = (f"rho={g.rho} supp={list(g.support)} maxit/minit={I.maxit}/{I.minit} "
              f"long={I2.maxit}/{I2.minit} in {elapsed:.3f}s")
    return CriterionResult(1, ok, detail, {"c01_example28.json": _json(data)})


def criterion2(ctx) -> CriterionResult:
    S = example15()
    ball = ctx.ball("ex15", S, 10)
    rows = an.density_estimate(ball, an.in_base)
    sizes_ok = all(ball.size(n) == 4 * 3**n - 2 * n - 3 for n in range(7))
    base_ok = all(rows[n].count == 2 * 3**n - 1 for n in range(7))
    closed = an.example15_closed_forms(10)
    dens10 = rows[10].exact
    ok = sizes_ok and base_ok and dens10 == Fraction(118097, 236173) == closed["ratio"]
    detail = (f"sizes n<=6 {'match' if sizes_ok else 'differ'}, "
              f"|B∩F| {'match' if base_ok else 'differ'}, density(10)={dens10}")
    return CriterionResult(2, ok, detail, {"c02_example15_density.csv": _csv(rows, [
        "n", "ball_size", "count", "density_value"])})


def criterion3(ctx) -> CriterionResult:
    out = {}
    mismatches = 0
    for m in (2, 3):
        S = lamplighter(m)
        ball = ctx.ball(f"C{m}", S, 12)
        checked = bad = 0
        for g, ln in zip(ball.elements, ball.lengths):
            if g.rho == 0:
                checked += 1
                bad += nf_length(normal_form(g, S.shape)) != ln
        out[f"C{m}"] = {"checked": checked, "mismatches": bad}
        mismatches += bad
    detail = ", ".join(f"{k}: {v['checked']} elements, {v['mismatches']} mismatches"
                       for k, v in out.items())
    return CriterionResult(3, mismatches == 0, detail, {"c03_normal_forms.json": _json(out)})


def _suite_result(number, rep, need_samples, extra_ok=True, note=""):
    ok = rep.ok and rep.samples >= need_samples and extra_ok
    detail = (f"{rep.samples} samples, {rep.failure_count} failures, checks bfs/formula/unchecked="
              f"{rep.checked_bfs}/{rep.checked_formula}/{rep.unchecked}, "
              f"max slack {rep.max_length_slack} of {rep.allowed_slack}{note}")
    return CriterionResult(number, ok, detail, {f"c{number:02d}_{rep.lemma}.json": rep.to_json()})


def criterion4(ctx) -> CriterionResult:
    S = lamplighter()
    rep = run_suite("lemma25", S, VerifyConfig(n=10, samples=500), ctx.ball("C2", S, 12))
    return _suite_result(4, rep, 500, rep.checked_bfs == 500)


def criterion5(ctx) -> CriterionResult:
    S = lamplighter(5)
    rep = run_suite("lemma34", S, VerifyConfig(n=8, samples=100), ctx.ball("C5", S, 8))
    return _suite_result(5, rep, 100, rep.unchecked == 0)


def criterion6(ctx) -> CriterionResult:
    S = lamplighter(5)
    rep = run_suite("lemma37", S, VerifyConfig(n=8, samples=100), ctx.ball("C5", S, 8))
    return _suite_result(6, rep, 100)


def criterion7(ctx) -> CriterionResult:
    S = lamplighter()
    rep = run_suite("counting", S, VerifyConfig(n=12), ctx.ball("C2", S, 12))
    ok = rep.ok and rep.samples == 13
    detail = f"{rep.samples} radii, {rep.failure_count} violations, D'={rep.params['D_prime']}"
    return CriterionResult(7, ok, detail, {"c07_counting.json": rep.to_json()})


def criterion8(ctx) -> CriterionResult:
    t0 = time.perf_counter()
    a = an.binomial_root(1, 10**4)
    b = an.binomial_root(0.5, 10**5)
    lim_half = an.binomial_root_limit(0.5)
    c = an.binomial_root_limit(1e-6)
    elapsed = time.perf_counter() - t0
    ok = (abs(a - 4) < 0.01 and abs(b - 1.5**1.5 / 0.5**0.5) < 1e-3 and c < 1.0001
          and elapsed < 1)
    data = {"root_alpha1_n1e4": f"{a:.12g}", "root_alpha05_n1e5": f"{b:.12g}",
            "limit_alpha05": f"{lim_half:.12g}", "limit_alpha1e-6": f"{c:.12g}"}
    detail = f"{a:.5f} vs 4, {b:.6f} vs {lim_half:.6f}, limit(1e-6)={c:.8f}, {elapsed:.4f}s"
    return CriterionResult(8, ok, detail, {"c08_numerics.json": _json(data)})


def criterion9(ctx) -> CriterionResult:
    shape = GroupShape("direct", CoordinateGroup.symmetric3())
    s3 = enumerate_ball(GeneratingSet.parse(["102", "120"], shape), 3)
    s3_row = an.dc_estimate(s3)[-1]
    s3_dc = Fraction(s3_row.commuting_pairs, s3_row.ball_size**2)
    S = lamplighter()
    radii = range(4, 11)
    rows = an.dc_estimate(ctx.ball("C2", S, 12), radii)
    complete = an.dc_complete(rows, radii)
    ok = (len(s3) == 6 and s3_dc == Fraction(1, 2) and complete
          and rows[-1].dc_value < rows[0].dc_value)
    detail = (f"S3 dc={s3_dc}; lamplighter dc(4)={rows[0].dc_value:.4f} "
              f"dc(10)={rows[-1].dc_value:.4f}{'' if complete else ' (incomplete)'}")
    return CriterionResult(9, ok, detail, {"c09_dc_lamplighter.csv": _csv(rows)})


def criterion10(ctx) -> CriterionResult:
    lamp = an.density_estimate(ctx.ball("C2", lamplighter(), 12), an.in_base)
    ex = an.density_estimate(ctx.ball("ex15", example15(), 10), an.in_base)
    band = [ex[n].density_value for n in (8, 9, 10)]
    ok = lamp[12].exact < lamp[6].exact and all(0.49 <= d <= 0.51 for d in band)
    detail = (f"lamplighter dens(6)={lamp[6].density_value:.4f} dens(12)={lamp[12].density_value:.4f}; "
              f"F2xZ dens(8..10)={', '.join(f'{d:.5f}' for d in band)}")
    cols = ["n", "ball_size", "count", "density_value"]
    return CriterionResult(10, ok, detail, {"c10_density_lamplighter.csv": _csv(lamp, cols),
                                           "c10_density_example15.csv": _csv(ex, cols)})


CRITERIA = {1: criterion1, 2: criterion2, 3: criterion3, 4: criterion4, 5: criterion5,
            6: criterion6, 7: criterion7, 8: criterion8, 9: criterion9, 10: criterion10}


def run_criterion(k: int, ctx: Context | None = None) -> CriterionResult:
    ctx = ctx or Context()
    t0 = time.perf_counter()
    res = CRITERIA[k](ctx)
    res.seconds = time.perf_counter() - t0
    return res


def run_all(ctx: Context | None = None) -> list[CriterionResult]:
    ctx = ctx or Context()
    return [run_criterion(k, ctx) for k in sorted(CRITERIA)]


def artifacts_of(results) -> dict:
    out = {}
    for r in results:
        out.update(r.artifacts)
    return out


def criterion11(first=None) -> CriterionResult:
    """Two consecutive full runs must give byte-identical artifacts."""
    t0 = time.perf_counter()
    a = artifacts_of(first if first is not None else run_all())
    b = artifacts_of(run_all())
    differing = sorted(k for k in set(a) | set(b) if a.get(k) != b.get(k))
    ok = not differing and len(a) >= 10
    detail = f"{len(a)} artifacts compared, {len(differing)} differ"
    if differing:
        detail += f": {', '.join(differing)}"
    manifest = "".join(f"{k}\t{len(v.encode())}\n" for k, v in sorted(a.items()))
    return CriterionResult(11, ok, detail, {"c11_manifest.tsv": manifest},
                           time.perf_counter() - t0)


def write_artifacts(results, directory):
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for name, text in artifacts_of(results).items():
        (directory / name).write_text(text)
