"""Command-line harness: identity sweeps, bound tables, chain and convexity checks.

Exit codes: 0 all rows pass, 1 at least one mathematical violation,
2 usage or configuration error. Every command writes rows with the same
fixed column set (CSV or JSON); numbers carry 12 significant digits so
identical configs give byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .convexity import DEFAULT_GRID, check_coordinate_convexity, check_full_convexity, check_hypothesis
from .domain import (
    UNIT_SQUARE,
    ExponentOutOfRange,
    HadamardError,
    HypothesisNotVerified,
    PointOutsideDomain,
    Rectangle,
    Tolerances,
    make_rectangle,
)
from .inequalities import (
    CHAIN_LEVELS,
    COROLLARIES,
    BoundReport,
    bound_t1,
    bound_t2,
    bound_t3,
    chain_1_1,
    corollary,
    verify_identity,
)
from .quadrature import QuadratureSpec
from .surfaces import CATALOG, catalog_lookup

log = logging.getLogger("hadamard_coord")

COLUMNS = (
    "function", "rect", "x", "y", "theorem", "q", "lhs", "bound", "slack",
    "tightness", "hypothesis_status", "residual", "status",
)
THEOREMS = ("T1", "T2", "T3") + COROLLARIES
THREADS_ENV = "HADAMARD_COORD_THREADS"


class ConfigError(Exception):
    pass


@dataclass
class SweepConfig:
    functions: list[str]
    rects: list[Rectangle]
    grid: int = 5
    theorems: list[str] = field(default_factory=lambda: ["T1"])
    q_values: list[float] = field(default_factory=list)
    point: Optional[tuple[float, float]] = None
    output: Optional[Path] = None
    format: str = "csv"
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    tolerances: Tolerances = field(default_factory=Tolerances)
    grid_given: bool = False

    def __post_init__(self):
        if not self.functions or not self.rects or not self.theorems:
            raise ConfigError("functions, rects and theorems must be non-empty")
        if self.grid < 1:
            raise ConfigError("grid must be >= 1")
        for name in self.functions:
            catalog_lookup(name)

    def points(self, rect: Rectangle) -> list[tuple[float, float]]:
        """The explicit point, or a cell-centred grid x grid lattice."""
        if self.point is not None:
            return [self.point]
        k = (np.arange(self.grid) + 0.5) / self.grid
        xs = rect.a + k * rect.width
        ys = rect.c + k * rect.height
        return [(float(x), float(y)) for x in xs for y in ys]


# ---------------------------------------------------------------- rows


def fmt(value) -> str:
    if value is None or value == "":
        return ""
    if isinstance(value, str):
        return value
    return format(float(value), ".12g")


def make_row(**values) -> dict[str, str]:
    unknown = set(values) - set(COLUMNS)
    if unknown:
        raise KeyError(f"unknown columns {unknown}")
    return {col: fmt(values.get(col)) for col in COLUMNS}


def bound_row(rep: BoundReport, abs_tol: float) -> dict[str, str]:
    if rep.hypothesis_status == "fails":
        status = "warning"
    else:
        status = "pass" if rep.valid(abs_tol) else "fail"
    return make_row(
        function=rep.surface, rect=rep.rect.label(), x=rep.x, y=rep.y,
        theorem=rep.theorem, q=rep.q, lhs=rep.lhs, bound=rep.bound,
        slack=rep.slack, tightness=rep.tightness,
        hypothesis_status=rep.hypothesis_status, status=status,
    )


def summarize(rows) -> dict[str, int]:
    counts = {"rows": len(rows), "pass": 0, "fail": 0, "warning": 0}
    for row in rows:
        counts[row["status"]] += 1
    return counts


def render(rows, fmt_name: str, command: str, extra=None) -> str:
    if fmt_name == "json":
        def num(v):
            if v == "":
                return None
            try:
                return float(v)
            except ValueError:
                return v

        doc = {
            "command": command,
            "columns": list(COLUMNS),
            "rows": [{k: num(v) for k, v in r.items()} for r in rows],
            "summary": summarize(rows),
        }
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def emit(cfg: SweepConfig, rows, command: str, extra=None) -> int:
    text = render(rows, cfg.format, command, extra)
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        cfg.output.parent.mkdir(parents=True, exist_ok=True)
        cfg.output.write_text(text)
    s = summarize(rows)
    print(
        f"{command}: {s['rows']} rows, pass={s['pass']} fail={s['fail']} warning={s['warning']}",
        file=sys.stderr,
    )
    return 1 if s["fail"] else 0


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return min(8, os.cpu_count() or 1)
    try:
        return max(0, int(raw))
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def run_tasks(fn, tasks):
    """Map ``fn`` over ``tasks`` keeping input order."""
    n = worker_count()
    if n <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, tasks))


# ---------------------------------------------------------------- commands


def cmd_verify_lemma(cfg: SweepConfig) -> int:
    tasks = [
        (name, rect, pt)
        for name in cfg.functions
        for rect in cfg.rects
        for pt in cfg.points(rect)
    ]

    def one(task):
        name, rect, pt = task
        rep = verify_identity(catalog_lookup(name).surface, rect, pt, cfg.quad, cfg.tolerances)
        return make_row(
            function=name, rect=rect.label(), x=rep.x, y=rep.y, theorem="identity",
            lhs=rep.lhs, residual=rep.residual, status="pass" if rep.passed else "fail",
        )

    rows = run_tasks(one, tasks)
    worst = max((float(r["residual"]) for r in rows), default=0.0)
    return emit(cfg, rows, "verify-lemma", {"max_residual": worst})


def _check_exponents(cfg: SweepConfig):
    needs_q = [t for t in cfg.theorems if t in ("T2", "T3") or t.startswith("C2")]
    if needs_q and not cfg.q_values:
        raise ConfigError(f"{', '.join(needs_q)} need at least one --q")
    for t in cfg.theorems:
        if t not in THEOREMS:
            raise ConfigError(f"unknown theorem {t!r}; choose from {', '.join(THEOREMS)}")
        for q in cfg.q_values:
            if (t == "T2" or t.startswith("C2")) and not q > 1:
                raise ExponentOutOfRange(f"{t} needs q > 1, got {q:g}")
            if t == "T3" and not q >= 1:
                raise ExponentOutOfRange(f"T3 needs q >= 1, got {q:g}")


def _bound_tasks(cfg: SweepConfig):
    tasks = []
    for name in cfg.functions:
        for rect in cfg.rects:
            for theorem in cfg.theorems:
                qs = [None] if theorem in ("T1", "C1_1", "C1_2", "C1_3") else cfg.q_values
                pts = [None] if theorem in COROLLARIES else cfg.points(rect)
                for pt in pts:
                    for q in qs:
                        tasks.append((name, rect, pt, theorem, q))
    return tasks


def evaluate_bound(name, rect, pt, theorem, q, quad) -> BoundReport:
    surface = catalog_lookup(name).surface
    if theorem == "T1":
        return bound_t1(surface, rect, pt, quad)
    if theorem == "T2":
        return bound_t2(surface, rect, pt, q, quad)
    if theorem == "T3":
        return bound_t3(surface, rect, pt, q, quad)
    return corollary(theorem, surface, rect, q, quad)


def cmd_bounds(cfg: SweepConfig) -> int:
    _check_exponents(cfg)
    tasks = _bound_tasks(cfg)

    def one(task):
        name, rect, pt, theorem, q = task
        return bound_row(evaluate_bound(name, rect, pt, theorem, q, cfg.quad), cfg.tolerances.abs_tol)

    return emit(cfg, run_tasks(one, tasks), "bounds")


def cmd_chain(cfg: SweepConfig) -> int:
    tasks = [(name, rect) for name in cfg.functions for rect in cfg.rects]
    tol = cfg.tolerances

    def one(task):
        name, rect = task
        return chain_1_1(catalog_lookup(name).surface, rect, cfg.quad, tol)

    reports = run_tasks(one, tasks)
    rows, chains = [], []
    for rep in reports:
        chains.append(
            {"function": rep.surface, "rect": rep.rect.label(),
             "values": [float(fmt(v)) for v in rep.values], "ordered": rep.ordered,
             "hypothesis_status": rep.hypothesis_status}
        )
        for k, (lo, hi) in enumerate(rep.links()):
            ok = lo <= hi or tol.close(lo, hi)
            if rep.hypothesis_status == "fails":
                status = "warning"
            else:
                status = "pass" if ok else "fail"
            rows.append(
                make_row(
                    function=rep.surface, rect=rep.rect.label(),
                    theorem=f"chain:{CHAIN_LEVELS[k]}<={CHAIN_LEVELS[k + 1]}",
                    lhs=lo, bound=hi, slack=hi - lo,
                    tightness=0.0 if hi == 0 else lo / hi,
                    hypothesis_status=rep.hypothesis_status, status=status,
                )
            )
    return emit(cfg, rows, "chain", {"chains": chains})


def cmd_check_convexity(cfg: SweepConfig) -> int:
    grid = cfg.grid if cfg.grid_given else DEFAULT_GRID
    if grid < 2:
        raise ConfigError("check-convexity needs --grid >= 2")
    rows, witnesses = [], []

    def add(name, rect, kind, q, verdict, informational=False):
        if verdict.holds:
            status = "pass"
        else:
            status = "warning" if informational else "fail"
        rows.append(
            make_row(
                function=name, rect=rect.label(), theorem=kind, q=q,
                hypothesis_status="holds" if verdict.holds else "fails",
                residual=verdict.worst_violation, status=status,
            )
        )
        witnesses.append(
            {"function": name, "rect": rect.label(), "check": kind, "q": q,
             "witness": verdict.witness, "note": verdict.note}
        )
        if not verdict.holds:
            log.info("%s %s on %s: %s", name, kind, rect.label(), verdict.describe())

    for name in cfg.functions:
        surface = catalog_lookup(name).surface
        for rect in cfg.rects:
            add(name, rect, "full-convexity", None, check_full_convexity(surface.eval, rect, grid), True)
            add(name, rect, "coordinate-convexity", None, check_coordinate_convexity(surface.eval, rect, grid))
            for q in cfg.q_values or [None]:
                if q is not None and not q >= 1:
                    raise ExponentOutOfRange(f"q must be >= 1, got {q:g}")
                add(name, rect, "hypothesis", q, check_hypothesis(surface, rect, q, grid))
    return emit(cfg, rows, "check-convexity", {"witnesses": witnesses})


def cmd_tighten(cfg: SweepConfig) -> int:
    if len(cfg.functions) != 1 or len(cfg.rects) != 1 or len(cfg.theorems) != 1:
        raise ConfigError("tighten needs exactly one --fn, one --rect and one --theorem")
    theorem = cfg.theorems[0]
    if theorem not in ("T1", "T2", "T3"):
        raise ConfigError("tighten supports T1, T2 or T3")
    _check_exponents(cfg)
    if theorem != "T1" and len(cfg.q_values) != 1:
        raise ConfigError(f"tighten with {theorem} needs exactly one --q")
    q = cfg.q_values[0] if theorem != "T1" else None
    name, rect = cfg.functions[0], cfg.rects[0]
    # Candidates in lexicographic (x, y) order; strict < keeps the smallest on ties.
    reports = run_tasks(
        lambda pt: evaluate_bound(name, rect, pt, theorem, q, cfg.quad), cfg.points(rect)
    )
    best = reports[0]
    for rep in reports[1:]:
        if rep.bound < best.bound:
            best = rep
    return emit(cfg, [bound_row(best, cfg.tolerances.abs_tol)], "tighten",
                {"candidates": len(reports)})


def cmd_list_functions(_cfg=None) -> int:
    for name, entry in CATALOG.items():
        facts = "; ".join(entry.expected_properties)
        print(f"{name}\t{entry.surface.notes}\t[{facts}]")
    return 0


COMMANDS = {
    "verify-lemma": cmd_verify_lemma,
    "bounds": cmd_bounds,
    "chain": cmd_chain,
    "check-convexity": cmd_check_convexity,
    "tighten": cmd_tighten,
}


# ---------------------------------------------------------------- parsing


def parse_pair(text: str) -> tuple[float, float]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ConfigError(f"expected x,y but got {text!r}")
    return float(parts[0]), float(parts[1])


def parse_rect(text: str) -> Rectangle:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise ConfigError(f"expected a,b,c,d but got {text!r}")
    return make_rectangle(*(float(p) for p in parts))


def read_config_file(path: Path) -> dict[str, list[str]]:
    """``key=value`` lines; repeated keys accumulate, '#' starts a comment."""
    out: dict[str, list[str]] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("_", "-")
        out.setdefault(key, []).extend(v.strip() for v in value.split(";") if v.strip())
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="optional key=value file; flags override it")
    common.add_argument("--fn", action="append", help="catalog surface name (repeatable)")
    common.add_argument("--rect", action="append", help="a,b,c,d (repeatable)")
    common.add_argument("--point", help="x,y; replaces the point grid")
    common.add_argument("--grid", type=int, help="points per axis")
    common.add_argument("--theorem", action="append", help="T1|T2|T3|C1_1..C2_5 (repeatable)")
    common.add_argument("--q", action="append", type=float, help="exponent q (repeatable)")
    common.add_argument("--nodes", type=int, help="Gauss-Legendre nodes per panel")
    common.add_argument("--panels", type=int, help="panels per axis")
    common.add_argument("--oracles", action="store_true", default=None,
                        help="use closed-form integrals where the surface has them")
    common.add_argument("--out", type=Path, help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--abs-tol", type=float)
    common.add_argument("--rel-tol", type=float)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="hadamard-coord",
        description="Verify Hadamard-type identities and bounds for co-ordinated convex functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    sub.add_parser("list-functions", help="print catalog names")
    return parser


def config_from_args(args) -> SweepConfig:
    file_values = read_config_file(args.config) if getattr(args, "config", None) else {}

    def pick(key, flag_value, convert=str, many=False):
        if flag_value is not None:
            return flag_value
        if key in file_values:
            vals = [convert(v) for v in file_values[key]]
            return vals if many else vals[-1]
        return None

    def to_bool(v):
        return str(v).lower() in ("1", "true", "yes", "on")

    functions = pick("fn", args.fn, many=True) or list(CATALOG)
    rect_texts = pick("rect", args.rect, many=True)
    rects = [parse_rect(r) for r in rect_texts] if rect_texts else [UNIT_SQUARE]
    point = pick("point", args.point)
    grid = pick("grid", args.grid, int)
    theorems = pick("theorem", args.theorem, many=True) or ["T1"]
    q_values = pick("q", args.q, float, many=True) or []
    nodes = pick("nodes", args.nodes, int) or 16
    panels = pick("panels", args.panels, int) or 8
    oracles = pick("oracles", args.oracles, to_bool) or False
    out = pick("out", args.out, Path)
    fmt_name = pick("format", args.format) or "csv"
    if fmt_name not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {fmt_name!r}")
    abs_tol = pick("abs-tol", args.abs_tol, float) or 1e-9
    rel_tol = pick("rel-tol", args.rel_tol, float) or 1e-9
    try:
        quad = QuadratureSpec(nodes, panels, oracles)
        tolerances = Tolerances(abs_tol, rel_tol)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return SweepConfig(
        functions=list(functions),
        rects=rects,
        grid=grid if grid is not None else 5,
        theorems=[t.upper() for t in theorems],
        q_values=list(q_values),
        point=parse_pair(point) if point is not None else None,
        output=out,
        format=fmt_name,
        quad=quad,
        tolerances=tolerances,
        grid_given=grid is not None,
    )


def _glue_values(argv):
    """Attach ``--rect``/``--point`` values so argparse accepts '-1,2,0,3'."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--rect", "--point"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_values(sys.argv[1:] if argv is None else list(argv)))
    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    if args.command == "list-functions":
        return cmd_list_functions()
    try:
        cfg = config_from_args(args)
        if cfg.point is not None:
            for rect in cfg.rects:
                if not rect.contains(*cfg.point):
                    raise PointOutsideDomain(f"point {cfg.point} outside {rect.label()}")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", HypothesisNotVerified)
            return COMMANDS[args.command](cfg)
    except (ConfigError, HadamardError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
