"""How close the three bounds come to the left-hand side.

For each surface whose hypothesis holds, tabulate median and best
tightness (lhs / bound) of T1, T2 and T3 over a point grid, for a few
exponents. Rows are written as CSV to stdout.

    python scripts/tightness_survey.py --grid 9 --q 1.5 --q 2 --q 4
"""

import argparse
import csv
import statistics
import sys
import warnings

from hadamard_coord.cli import parse_rect
from hadamard_coord.domain import HypothesisNotVerified
from hadamard_coord.inequalities import bound_t1, bound_t2, bound_t3
from hadamard_coord.surfaces import CATALOG


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rect", default="0,1,0,1")
    ap.add_argument("--grid", type=int, default=9)
    ap.add_argument("--q", type=float, action="append")
    args = ap.parse_args()
    rect = parse_rect(args.rect)
    qs = args.q or [1.5, 2.0, 4.0]
    k = [(i + 0.5) / args.grid for i in range(args.grid)]
    pts = [(rect.a + s * rect.width, rect.c + t * rect.height) for s in k for t in k]

    jobs = [("T1", None, lambda s, p, q: bound_t1(s, rect, p))]
    jobs += [("T2", q, lambda s, p, q: bound_t2(s, rect, p, q)) for q in qs]
    jobs += [("T3", q, lambda s, p, q: bound_t3(s, rect, p, q)) for q in qs]

    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["function", "theorem", "q", "median_tightness", "max_tightness", "argmax_x", "argmax_y"])
    for name, entry in CATALOG.items():
        for theorem, q, fn in jobs:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", HypothesisNotVerified)
                reps = [fn(entry.surface, p, q) for p in pts]
            if any(r.hypothesis_status != "holds" for r in reps) or all(r.bound == 0 for r in reps):
                continue
            ts = [r.tightness for r in reps]
            best = max(reps, key=lambda r: r.tightness)
            out.writerow([name, theorem, "" if q is None else f"{q:g}",
                          f"{statistics.median(ts):.6f}", f"{best.tightness:.6f}",
                          f"{best.x:.6g}", f"{best.y:.6g}"])


if __name__ == "__main__":
    main()
