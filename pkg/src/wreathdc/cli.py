"""Command-line front end: ``wreathdc {ball,nf,itinerary,verify,analyze,export}``.

Exit status: 0 on success, 1 if a verification failed or a budget cut the
work short, 2 for invalid input, 3 if the element cap was hit.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import analysis
from .cayley import GeneratingSet, cached_ball, enumerate_ball, growth_stats
from .coordgroup import DEFAULT_ELEMENT_CAP, CoordinateGroup
from .errors import BudgetExceededError, CapExceededError, WreathError
from .itinerary import itinerary_of
from .normalform import emit_expression, nf_length, normal_form
from .presets import PRESETS, preset
from .verify import SUITES, VerifyConfig, run_suite
from .wreath import GroupShape, format_element, parse_element

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunConfig:
    S: GeneratingSet
    n: int
    q: analysis.QFunction
    alpha: float
    seed: int
    threads: int
    out: Path
    pair_budget: int
    element_cap: int
    use_cache: bool


def load_generating_set(group: str | None, gens: list[str] | None, preset_name: str | None
                        ) -> GeneratingSet:
    """Resolve ``--preset`` / ``--group`` / ``--gens`` into a generating set.

    A group file holds either a coordinate-group config or an object
    ``{"shape": "wreath"|"direct", "H": {...}, "generators": [...]}``.
    Without explicit generators the standard set S0 ∪ {t, t^-1} is used.
    """
    if preset_name:
        if group or gens:
            raise ValueError("--preset cannot be combined with --group or --gens")
        return preset(preset_name)
    if group is None:
        shape = GroupShape("wreath", CoordinateGroup.cyclic(2))
        literals = None
    else:
        cfg = json.loads(Path(group).read_text())
        if "H" in cfg:
            shape = GroupShape(cfg.get("shape", "wreath"), CoordinateGroup.from_config(cfg["H"]))
            literals = cfg.get("generators")
        else:
            shape = GroupShape("wreath", CoordinateGroup.from_config(cfg))
            literals = None
    if gens:
        literals = gens
    if literals is None:
        return GeneratingSet.standard(shape)
    return GeneratingSet.parse(literals, shape)


def parse_q(text: str, n_max: int) -> analysis.QFunction:
    if text == "default":
        return analysis.default_q(n_max)
    return analysis.constant_q(float(text), n_max)


def _ball(cfg: RunConfig, n: int | None = None):
    n = cfg.n if n is None else n
    if cfg.use_cache:
        return cached_ball(cfg.S, n, cfg.element_cap)
    return enumerate_ball(cfg.S, n, cfg.element_cap)


def _outfile(cfg: RunConfig, name: str) -> Path:
    cfg.out.mkdir(parents=True, exist_ok=True)
    return cfg.out / name


def cmd_ball(cfg: RunConfig, args) -> int:
    ball = cached_ball(cfg.S, cfg.n, cfg.element_cap)
    stats = growth_stats(ball.ball_sizes)
    stats.write_csv(_outfile(cfg, "growth.csv"))
    for k, size in enumerate(ball.ball_sizes):
        print(f"{k}\t{size}")
    return EXIT_OK


def cmd_nf(cfg: RunConfig, args) -> int:
    shape = cfg.S.shape
    g = parse_element(args.element, shape)
    nf = normal_form(g, shape)
    print(f"element      {format_element(g, shape)}")
    print(f"sigma        [{nf.sigma_minus}, {nf.sigma_plus}]")
    print(f"length       {nf_length(nf)}")
    for order in ("left_first", "right_first"):
        word = emit_expression(nf, cfg.S, order)
        print(f"{order:<12} {' '.join(cfg.S.labels[j - 1] for j in word) or '1'}")
    return EXIT_OK


def cmd_itinerary(cfg: RunConfig, args) -> int:
    word = tuple(int(x) for x in args.word.replace(",", " ").split())
    I = itinerary_of(cfg.S, word)
    print(f"element  {format_element(cfg.S.evaluate(word), cfg.S.shape)}")
    print(f"itinerary {I}")
    print(f"maxit    {I.maxit}")
    print(f"minit    {I.minit}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, args) -> int:
    H = cfg.S.shape.H
    u = H.parse(args.u) if args.u is not None else None
    vc = VerifyConfig(n=cfg.n, samples=args.samples, seed=cfg.seed, q=cfg.q,
                      alpha=cfg.alpha, u=u, element_cap=cfg.element_cap)
    report = run_suite(args.suite, cfg.S, vc, _ball(cfg))
    report.write(_outfile(cfg, f"verify-{args.suite}.json"))
    status = "PASS" if report.ok else "FAIL"
    print(f"{status} {args.suite}: samples={report.samples} failures={report.failure_count} "
          f"max_length_slack={report.max_length_slack}")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_analyze(cfg: RunConfig, args) -> int:
    what = args.what
    if what == "asymptotics":
        rows = []
        for n in (10, 100, 1000, 10**4, 10**5):
            rows.append([cfg.alpha, n, f"{analysis.binomial_root(cfg.alpha, n):.12g}"])
        limit = analysis.binomial_root_limit(cfg.alpha)
        with _outfile(cfg, "asymptotics.csv").open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["alpha", "n", "binomial_root", "limit"])
            for r in rows:
                w.writerow(r + [f"{limit:.12g}"])
        print(f"limit {limit:.12g}")
        return EXIT_OK

    ball = _ball(cfg)
    status = EXIT_OK
    if what == "dc":
        radii = range(args.n_min, cfg.n + 1)
        try:
            rows = analysis.dc_estimate(ball, radii, cfg.pair_budget, cfg.threads)
        except BudgetExceededError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
        if not analysis.dc_complete(rows, radii):
            print(f"incomplete: pair budget stopped at radius {rows[-1].n}", file=sys.stderr)
            status = EXIT_FAIL
        analysis.write_rows(_outfile(cfg, "dc.csv"), rows)
        last = rows[-1]
    elif what == "density":
        rows = analysis.density_estimate(ball, analysis.in_base)
        analysis.write_rows(_outfile(cfg, "density.csv"), rows,
                            ["n", "ball_size", "count", "density_value"])
        last = rows[-1]
    elif what == "partition":
        f = analysis.f_alpha(cfg.alpha, cfg.q, cfg.n)
        rows = analysis.r_partition(ball, cfg.q, args.mode, f)
        analysis.write_rows(_outfile(cfg, "partition.csv"), rows)
        last = rows[-1]
    else:  # argparse restricts the choices
        raise ValueError(what)
    print(", ".join(f"{k}={analysis._fmt(v)}" for k, v in vars(last).items() if k != "exact"))
    return status


def cmd_export(cfg: RunConfig, args) -> int:
    ball = _ball(cfg)
    shape = cfg.S.shape
    with _outfile(cfg, "ball.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "element", "length", "word"])
        for k, g in enumerate(ball.elements):
            word = " ".join(map(str, ball.geodesic_witness(g)))
            w.writerow([k, format_element(g, shape), ball.lengths[k], word])
    with _outfile(cfg, "generators.json").open("w") as fh:
        json.dump(cfg.S.to_config(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"wrote {len(ball)} elements")
    return EXIT_OK


COMMANDS = {
    "ball": cmd_ball,
    "nf": cmd_nf,
    "itinerary": cmd_itinerary,
    "verify": cmd_verify,
    "analyze": cmd_analyze,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="JSON group config")
    common.add_argument("--gens", nargs="+", metavar="LITERAL",
                        help="generator literals such as 'a@4 t^-3' (inverses added)")
    common.add_argument("--preset", choices=sorted(PRESETS))
    common.add_argument("--n", type=int, default=8, help="ball radius")
    common.add_argument("--q", default="default", help="'default' or a constant")
    common.add_argument("--alpha", type=float, default=0.5)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", default="out")
    common.add_argument("--pair-budget", type=int, default=analysis.DEFAULT_PAIR_BUDGET)
    common.add_argument("--element-cap", type=int, default=DEFAULT_ELEMENT_CAP)
    common.add_argument("--cache", action="store_true",
                        help="reuse ball caches (directory from WREATHDC_CACHE)")

    p = argparse.ArgumentParser(prog="wreathdc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("ball", parents=[common], help="enumerate a ball, write growth.csv")
    sp = sub.add_parser("nf", parents=[common], help="normal form of a base-group element")
    sp.add_argument("element")
    sp = sub.add_parser("itinerary", parents=[common], help="itinerary of a generator word")
    sp.add_argument("word", help="1-based generator indices, e.g. 2,5,1,4")
    sp = sub.add_parser("verify", parents=[common], help="run a property suite")
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--u", help="coordinate-group element used for insertions")
    sp = sub.add_parser("analyze", parents=[common], help="write a CSV series")
    sp.add_argument("what", choices=("dc", "density", "partition", "asymptotics"))
    sp.add_argument("--n-min", type=int, default=0, help="smallest radius for dc")
    sp.add_argument("--mode", choices=("itinerary", "sigma"), default="itinerary")
    sub.add_parser("export", parents=[common], help="write the ball as CSV")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        S = load_generating_set(args.group, args.gens, args.preset)
        cfg = RunConfig(S, args.n, parse_q(args.q, max(args.n, 1)), args.alpha, args.seed,
                        args.threads, Path(args.out), args.pair_budget, args.element_cap,
                        args.cache)
        return COMMANDS[args.command](cfg, args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (WreathError, ValueError, OSError, IndexError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
