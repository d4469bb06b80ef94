#!/usr/bin/env python3
"""Ball sizes, growth roots and an empirical q for the preset groups.

Writes one growth CSV per preset plus ``empirical_q.csv``; BFS radii are
chosen so every ball stays well under a million elements.
"""
import argparse
import csv
from pathlib import Path

from wreathdc.analysis import empirical_q
from wreathdc.cayley import enumerate_ball, growth_stats
from wreathdc.presets import preset

RADII = {"lamplighter": 16, "lamplighter3": 12, "lamplighter5": 10, "example15": 9, "paper-S5": 7}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="results/growth")
    p.add_argument("--presets", nargs="+", default=sorted(RADII), choices=sorted(RADII))
    args = p.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    with (out / "empirical_q.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["preset", "n", "q", "ratio", "threshold"])
        for name in args.presets:
            sizes = enumerate_ball(preset(name), RADII[name]).ball_sizes
            stats = growth_stats(sizes)
            stats.write_csv(out / f"growth_{name}.csv")
            eq = empirical_q(sizes)
            for n in range(len(sizes)):
                w.writerow([name, n, eq.q(n), f"{eq.ratios[n]:.12g}", f"{eq.thresholds[n]:.12g}"])
            print(f"{name:<13} |B({RADII[name]})| = {sizes[-1]:>8}  growth root <= "
                  f"{stats.upper_bound:.4f}  q({RADII[name]}) = {eq.q(RADII[name])}  "
                  f"ratio grows: {eq.ratio_grows}")


if __name__ == "__main__":
    main()
