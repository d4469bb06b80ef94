#!/usr/bin/env python3
"""Run the acceptance experiments and write their CSV/JSON artifacts.

    python scripts/run_experiments.py --out results/
    python scripts/run_experiments.py --criteria 1 8 9

Criterion 11 (determinism) reruns everything, so it is only evaluated when
all of 1-10 are selected.
"""
import argparse
import sys

from wreathdc.acceptance import CRITERIA, Context, criterion11, run_criterion, write_artifacts


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="results", help="artifact directory")
    p.add_argument("--criteria", type=int, nargs="+", default=sorted(CRITERIA),
                   choices=sorted(CRITERIA))
    args = p.parse_args(argv)

    ctx = Context()
    results = []
    for k in sorted(set(args.criteria)):
        res = run_criterion(k, ctx)
        print(f"{res.line} ({res.seconds:.1f}s)", flush=True)
        results.append(res)
    if len(results) == len(CRITERIA):
        res = criterion11(results)
        print(f"{res.line} ({res.seconds:.1f}s)")
        results.append(res)
    write_artifacts(results, args.out)
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed; artifacts in {args.out}/")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
