"""Identity residuals as the quadrature is refined.

For each catalog surface and rectangle, report the worst residual over a
cell-centred point grid at several (nodes, panels) settings. Useful for
picking the cheapest rule that still clears a target tolerance.

    python scripts/identity_sweep.py --grid 5 --target 1e-8
"""

import argparse
import warnings

from hadamard_coord.cli import parse_rect
from hadamard_coord.domain import HypothesisNotVerified
from hadamard_coord.inequalities import verify_identity
from hadamard_coord.quadrature import QuadratureSpec
from hadamard_coord.surfaces import CATALOG

RULES = [(2, 1), (4, 1), (4, 4), (8, 2), (8, 8), (16, 8)]


def points(rect, n):
    k = [(i + 0.5) / n for i in range(n)]
    return [(rect.a + s * rect.width, rect.c + t * rect.height) for s in k for t in k]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rect", action="append", default=None)
    ap.add_argument("--grid", type=int, default=5)
    ap.add_argument("--target", type=float, default=1e-8)
    args = ap.parse_args()
    rects = [parse_rect(r) for r in args.rect or ["0,1,0,1", "-1,2,0,3", "0.5,1.5,-0.5,0.5"]]

    print(f"{'function':<10} {'rect':<22}" + "".join(f"{f'{n}x{m}':>11}" for n, m in RULES))
    for name, entry in CATALOG.items():
        for rect in rects:
            cells = []
            for n, m in RULES:
                spec = QuadratureSpec(n, m)
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", HypothesisNotVerified)
                    worst = max(
                        verify_identity(entry.surface, rect, pt, spec).residual
                        for pt in points(rect, args.grid)
                    )
                mark = "" if worst <= args.target else "*"
                cells.append(f"{worst:10.2e}{mark or ' '}")
            print(f"{name:<10} {rect.label():<22}" + "".join(cells))
    print(f"\n* above target {args.target:g}")


if __name__ == "__main__":
    main()
