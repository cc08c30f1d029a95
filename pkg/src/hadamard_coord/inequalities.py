"""Corner/edge identity for rectangles and the bounds built on it.

For a free point (x, y) in [a,b]x[c,d] the corner functional

    A = [(x-a)(y-c) f(a,c) + (x-a)(d-y) f(a,d) + (b-x)(y-c) f(b,c)
         + (b-x)(d-y) f(b,d)
         - (x-a) int f(a,.) - (b-x) int f(b,.)
         - (d-y) int f(.,d) - (y-c) int f(.,c)] / area

plus the mean of f over the rectangle equals the sum of four kernel
integrals of the mixed partial D over [0,1]^2, one per corner cell. The
bounds below estimate that sum through co-ordinated convexity of |D| or
|D|^q evaluated at nine points: (x,y), the four edge feet and the corners.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Union

import numpy as np

from .convexity import DEFAULT_GRID, ConvexityVerdict, check_coordinate_convexity, check_hypothesis
from .domain import (
    DEFAULT_TOLERANCES,
    EvalPoint,
    ExponentOutOfRange,
    HolderExponents,
    HypothesisNotVerified,
    Rectangle,
    Tolerances,
    holder_from_q,
    make_point,
)
from .quadrature import (
    DEFAULT_QUAD,
    QuadratureSpec,
    double_integral,
    edge_integrals,
    integrate_unit_square,
    line_u,
    line_v,
)
from .surfaces import Surface, mixed_partial

PointLike = Union[EvalPoint, tuple]


class Corner(Enum):
    AC = "AC"
    AD = "AD"
    BC = "BC"
    BD = "BD"


@dataclass(frozen=True)
class CornerCell:
    """One of the four corner-anchored pieces of the identity.

    The kernel is ``kernel_sign * (1-t)(1-s)``: AC uses (t-1)(s-1),
    AD (t-1)(1-s), BC (1-t)(s-1), BD (1-t)(1-s).
    """

    corner: Corner
    xi: float
    eta: float
    kernel_sign: float
    coefficient: float

    def transform(self, x, y, t, s):
        return t * x + (1 - t) * self.xi, s * y + (1 - s) * self.eta

    def kernel(self, t, s):
        return self.kernel_sign * (1 - t) * (1 - s)


@dataclass(frozen=True)
class CellWeights:
    K: float
    L: float
    M: float
    N: float

    def as_tuple(self):
        return (self.K, self.L, self.M, self.N)


def _point(rect: Rectangle, point: PointLike) -> EvalPoint:
    if isinstance(point, EvalPoint):
        if point.rect != rect:
            return make_point(rect, point.x, point.y)
        return point
    x, y = point
    return make_point(rect, x, y)


def cell_weights(rect: Rectangle, point: PointLike) -> CellWeights:
    pt = _point(rect, point)
    a, b, c, d = rect.as_tuple()
    x, y, area = pt.x, pt.y, rect.area
    return CellWeights(
        (x - a) ** 2 * (y - c) ** 2 / area,
        (x - a) ** 2 * (d - y) ** 2 / area,
        (b - x) ** 2 * (y - c) ** 2 / area,
        (b - x) ** 2 * (d - y) ** 2 / area,
    )


def corner_cells(rect: Rectangle, point: PointLike, proof_coefficients: bool = False):
    """The four cells AC, AD, BC, BD.

    ``proof_coefficients`` swaps in the first-power coefficients that the
    integration-by-parts derivation prints for the BC and BD cells. It exists
    only so tests can show that variant breaks the identity.
    """
    pt = _point(rect, point)
    a, b, c, d = rect.as_tuple()
    x, y, area = pt.x, pt.y, rect.area
    K, L, M, N = cell_weights(rect, pt).as_tuple()
    if proof_coefficients:
        M = (b - x) * (y - c) / area
        N = (b - x) * (d - y) / area
    return (
        CornerCell(Corner.AC, a, c, 1.0, K),
        CornerCell(Corner.AD, a, d, -1.0, L),
        CornerCell(Corner.BC, b, c, -1.0, M),
        CornerCell(Corner.BD, b, d, 1.0, N),
    )


# ---------------------------------------------------------------- identity


def corner_functional_A(
    surface: Surface, rect: Rectangle, point: PointLike, quad: QuadratureSpec = DEFAULT_QUAD
) -> float:
    pt = _point(rect, point)
    a, b, c, d = rect.as_tuple()
    x, y = pt.x, pt.y
    f = surface.eval
    fa_c, fa_d, fb_c, fb_d = (float(f(u, v)) for u, v in ((a, c), (a, d), (b, c), (b, d)))
    ia, ib, ic, id_ = edge_integrals(surface, rect, quad)
    corners = (
        (x - a) * (y - c) * fa_c
        + (x - a) * (d - y) * fa_d
        + (b - x) * (y - c) * fb_c
        + (b - x) * (d - y) * fb_d
    )
    edges = (x - a) * ia + (b - x) * ib + (d - y) * id_ + (y - c) * ic
    return (corners - edges) / rect.area


def lemma_lhs(
    surface: Surface, rect: Rectangle, point: PointLike, quad: QuadratureSpec = DEFAULT_QUAD
) -> float:
    """A + mean of f over the rectangle (signed)."""
    return corner_functional_A(surface, rect, point, quad) + double_integral(
        surface, rect, quad
    ) / rect.area


def kernel_term(
    surface: Surface,
    rect: Rectangle,
    point: PointLike,
    cell: Union[CornerCell, Corner, str],
    quad: QuadratureSpec = DEFAULT_QUAD,
    proof_coefficients: bool = False,
) -> float:
    pt = _point(rect, point)
    if not isinstance(cell, CornerCell):
        key = Corner(cell) if isinstance(cell, str) else cell
        cell = {c.corner: c for c in corner_cells(rect, pt, proof_coefficients)}[key]
    if cell.coefficient == 0.0:
        return 0.0

    def integrand(t, s):
        u, v = cell.transform(pt.x, pt.y, t, s)
        return cell.kernel(t, s) * mixed_partial(surface, u, v)

    return cell.coefficient * integrate_unit_square(integrand, quad)


def kernel_sum(
    surface: Surface,
    rect: Rectangle,
    point: PointLike,
    quad: QuadratureSpec = DEFAULT_QUAD,
    proof_coefficients: bool = False,
) -> float:
    pt = _point(rect, point)
    return sum(
        kernel_term(surface, rect, pt, cell, quad)
        for cell in corner_cells(rect, pt, proof_coefficients)
    )


@dataclass(frozen=True)
class IdentityReport:
    surface: str
    rect: Rectangle
    x: float
    y: float
    lhs: float
    kernel_sum: float
    residual: float
    tol: float
    passed: bool
    note: str = ""


FD_IDENTITY_TOL = 1e-5


def verify_identity(
    surface: Surface,
    rect: Rectangle,
    point: PointLike,
    quad: QuadratureSpec = DEFAULT_QUAD,
    tol: Union[Tolerances, float, None] = None,
) -> IdentityReport:
    """Both sides of the identity and their residual.

    With a float ``tol`` the check is ``residual <= tol``; with
    :class:`Tolerances` it is the mixed absolute/relative rule. Surfaces
    without an analytic mixed partial fall back to finite differences and
    the tolerance is loosened to 1e-5.
    """
    pt = _point(rect, point)
    lhs = lemma_lhs(surface, rect, pt, quad)
    rhs = kernel_sum(surface, rect, pt, quad)
    residual = abs(lhs - rhs)
    note = ""
    if tol is None:
        tol = DEFAULT_TOLERANCES
    if surface.mixed is None:
        tol, note = FD_IDENTITY_TOL, "finite-difference D; tolerance 1e-5"
    if isinstance(tol, Tolerances):
        limit = tol.abs_tol + tol.rel_tol * max(abs(lhs), abs(rhs))
    else:
        limit = float(tol)
    return IdentityReport(
        surface.name, rect, pt.x, pt.y, lhs, rhs, residual, limit, residual <= limit, note
    )


# ---------------------------------------------------------------- bounds


@dataclass(frozen=True)
class BoundReport:
    theorem: str
    lhs: float
    bound: float
    surface: str
    rect: Rectangle
    x: float
    y: float
    q: Optional[float] = None
    hypothesis_status: str = "unchecked"
    note: str = ""

    @property
    def slack(self) -> float:
        return self.bound - self.lhs

    @property
    def tightness(self) -> float:
        return 0.0 if self.bound == 0 else self.lhs / self.bound

    def valid(self, abs_tol: float = DEFAULT_TOLERANCES.abs_tol) -> bool:
        if self.bound == 0:
            return abs(self.lhs) <= abs_tol
        return self.lhs <= self.bound + abs_tol


@lru_cache(maxsize=1024)
def _cached_hypothesis(surface: Surface, rect: Rectangle, q, grid: int) -> ConvexityVerdict:
    return check_hypothesis(surface, rect, q, grid)


def _hypothesis(surface, rect, q, check, grid, label) -> tuple[str, str]:
    if not check:
        return "unchecked", ""
    verdict = _cached_hypothesis(surface, rect, q, grid)
    if verdict.holds:
        return "holds", verdict.note
    what = "|D|" if q is None else f"|D|^{q:g}"
    msg = f"{label}: {what} of {surface.name} not co-ordinated convex ({verdict.describe()})"
    warnings.warn(msg, HypothesisNotVerified, stacklevel=3)
    return "fails", msg


def nine_point_values(surface: Surface, rect: Rectangle, point: PointLike) -> dict[str, float]:
    """|D| at (x,y), the edge feet (a,y), (b,y), (x,c), (x,d) and the corners."""
    pt = _point(rect, point)
    a, b, c, d = rect.as_tuple()
    x, y = pt.x, pt.y
    keys = ("xy", "ay", "by", "xc", "xd", "ac", "ad", "bc", "bd")
    us = np.array([x, a, b, x, x, a, a, b, b])
    vs = np.array([y, y, y, c, d, c, d, c, d])
    vals = np.abs(np.asarray(mixed_partial(surface, us, vs), dtype=float))
    return dict(zip(keys, (float(v) for v in vals)))


# Per cell: (corner key, the two edge-foot keys) in the order (x,.) then (.,y).
_CELL_POINTS = {
    "AC": ("ac", "xc", "ay"),
    "AD": ("ad", "xd", "ay"),
    "BC": ("bc", "xc", "by"),
    "BD": ("bd", "xd", "by"),
}


def _sums(rect: Rectangle, pt: EvalPoint):
    a, b, c, d = rect.as_tuple()
    return (pt.x - a) ** 2 + (b - pt.x) ** 2, (pt.y - c) ** 2 + (d - pt.y) ** 2


def bound_t1_value(rect: Rectangle, point: PointLike, D: dict[str, float]) -> float:
    """Nine-term bound from the |D| samples ``D`` (as returned by nine_point_values)."""
    pt = _point(rect, point)
    a, b, c, d = rect.as_tuple()
    x, y = pt.x, pt.y
    Sx, Sy = _sums(rect, pt)
    total = (
        Sx * Sy / 4 * D["xy"]
        + (x - a) ** 2 * Sy / 2 * D["ay"]
        + (b - x) ** 2 * Sy / 2 * D["by"]
        + (y - c) ** 2 * Sx / 2 * D["xc"]
        + (d - y) ** 2 * Sx / 2 * D["xd"]
        + (x - a) ** 2 * (y - c) ** 2 * D["ac"]
        + (x - a) ** 2 * (d - y) ** 2 * D["ad"]
        + (b - x) ** 2 * (y - c) ** 2 * D["bc"]
        + (b - x) ** 2 * (d - y) ** 2 * D["bd"]
    )
    return total / (9 * rect.area)


def bound_t2_value(rect: Rectangle, point: PointLike, D: dict[str, float], exps: HolderExponents) -> float:
    pt = _point(rect, point)
    p, q = exps.p, exps.q
    weights = cell_weights(rect, pt).as_tuple()
    total = 0.0
    for w, (corner_key, foot_x, foot_y) in zip(weights, _CELL_POINTS.values()):
        bracket = D["xy"] ** q + D[foot_x] ** q + D[foot_y] ** q + D[corner_key] ** q
        total += w * bracket ** (1.0 / q)
    return total / (2 ** (2.0 / q) * (p + 1) ** (2.0 / p))


def bound_t3_value(rect: Rectangle, point: PointLike, D: dict[str, float], q: float) -> float:
    pt = _point(rect, point)
    weights = cell_weights(rect, pt).as_tuple()
    total = 0.0
    for w, (corner_key, foot_x, foot_y) in zip(weights, _CELL_POINTS.values()):
        mean = (
            D["xy"] ** q / 36 + D[foot_x] ** q / 18 + D[foot_y] ** q / 18 + D[corner_key] ** q / 9
        )
        total += w * mean ** (1.0 / q)
    return 0.25 ** (1.0 - 1.0 / q) * total


def bound_t1(
    surface: Surface,
    rect: Rectangle,
    point: PointLike,
    quad: QuadratureSpec = DEFAULT_QUAD,
    check: bool = True,
    grid: int = DEFAULT_GRID,
) -> BoundReport:
    """Bound on |A + mean f| when |D| is co-ordinated convex."""
    pt = _point(rect, point)
    status, note = _hypothesis(surface, rect, None, check, grid, "T1")
    lhs = abs(lemma_lhs(surface, rect, pt, quad))
    bound = bound_t1_value(rect, pt, nine_point_values(surface, rect, pt))
    return BoundReport("T1", lhs, bound, surface.name, rect, pt.x, pt.y, None, status, note)


def bound_t2(
    surface: Surface,
    rect: Rectangle,
    point: PointLike,
    exps: Union[HolderExponents, float],
    quad: QuadratureSpec = DEFAULT_QUAD,
    check: bool = True,
    grid: int = DEFAULT_GRID,
) -> BoundReport:
    """Hoelder-type bound when |D|^q (q > 1) is co-ordinated convex."""
    if not isinstance(exps, HolderExponents):
        exps = holder_from_q(exps)
    pt = _point(rect, point)
    status, note = _hypothesis(surface, rect, exps.q, check, grid, "T2")
    lhs = abs(lemma_lhs(surface, rect, pt, quad))
    bound = bound_t2_value(rect, pt, nine_point_values(surface, rect, pt), exps)
    return BoundReport("T2", lhs, bound, surface.name, rect, pt.x, pt.y, exps.q, status, note)


def bound_t3(
    surface: Surface,
    rect: Rectangle,
    point: PointLike,
    q: float,
    quad: QuadratureSpec = DEFAULT_QUAD,
    check: bool = True,
    grid: int = DEFAULT_GRID,
) -> BoundReport:
    """Power-mean bound when |D|^q (q >= 1) is co-ordinated convex."""
    q = float(q)
    if not (math.isfinite(q) and q >= 1):
        raise ExponentOutOfRange(f"power-mean bound needs q >= 1, got {q}")
    pt = _point(rect, point)
    status, note = _hypothesis(surface, rect, None if q == 1 else q, check, grid, "T3")
    lhs = abs(lemma_lhs(surface, rect, pt, quad))
    bound = bound_t3_value(rect, pt, nine_point_values(surface, rect, pt), q)
    return BoundReport("T3", lhs, bound, surface.name, rect, pt.x, pt.y, q, status, note)


# ---------------------------------------------------------------- corollaries

COROLLARIES = ("C1_1", "C1_2", "C1_3", "C2_1", "C2_2", "C2_3", "C2_4", "C2_5")


def corollary_point(cid: str, rect: Rectangle) -> tuple[float, float]:
    a, b, c, d = rect.as_tuple()
    points = {
        "1": (a, c),
        "2": (b, d),
        "3": (a, d),
        "4": (b, c),
        "5": rect.midpoint,
    }
    if cid not in COROLLARIES:
        raise ValueError(f"unknown corollary {cid!r}; valid: {', '.join(COROLLARIES)}")
    if cid == "C1_3":
        return rect.midpoint
    return points[cid[-1]]


def corollary(
    cid: str,
    surface: Surface,
    rect: Rectangle,
    q: Optional[float] = None,
    quad: QuadratureSpec = DEFAULT_QUAD,
    check: bool = True,
    grid: int = DEFAULT_GRID,
) -> BoundReport:
    """C1_* substitute into the T1 bound, C2_* into the T2 bound (needs q)."""
    pt = corollary_point(cid, rect)
    if cid.startswith("C1"):
        rep = bound_t1(surface, rect, pt, quad, check, grid)
    else:
        if q is None:
            raise ExponentOutOfRange(f"{cid} needs q > 1")
        rep = bound_t2(surface, rect, pt, q, quad, check, grid)
    return BoundReport(
        cid, rep.lhs, rep.bound, rep.surface, rect, rep.x, rep.y, rep.q,
        rep.hypothesis_status, rep.note,
    )


# ---------------------------------------------------------------- chain


@dataclass(frozen=True)
class ChainReport:
    surface: str
    rect: Rectangle
    values: tuple[float, float, float, float, float]
    ordered: bool
    hypothesis_status: str
    note: str = ""

    def links(self):
        """Consecutive (smaller, larger) pairs of the chain."""
        return list(zip(self.values[:-1], self.values[1:]))


CHAIN_LEVELS = ("midpoint", "midlines", "mean", "edges", "corners")


def chain_values(surface: Surface, rect: Rectangle, quad: QuadratureSpec = DEFAULT_QUAD):
    a, b, c, d = rect.as_tuple()
    mx, my = rect.midpoint
    w, h = rect.width, rect.height
    f = surface.eval
    centre = float(f(mx, my))
    midlines = 0.5 * (line_u(surface, my, a, b, quad) / w + line_v(surface, mx, c, d, quad) / h)
    mean = double_integral(surface, rect, quad) / rect.area
    ia, ib, ic, id_ = edge_integrals(surface, rect, quad)
    edges = 0.25 * (ic / w + id_ / w + ia / h + ib / h)
    corners = 0.25 * sum(float(f(u, v)) for u, v in ((a, c), (a, d), (b, c), (b, d)))
    return (centre, midlines, mean, edges, corners)


def chain_1_1(
    surface: Surface,
    rect: Rectangle,
    quad: QuadratureSpec = DEFAULT_QUAD,
    tol: Tolerances = DEFAULT_TOLERANCES,
    check: bool = True,
    grid: int = DEFAULT_GRID,
) -> ChainReport:
    """The five-level Hadamard chain for co-ordinated convex f, with ordering verdict."""
    values = chain_values(surface, rect, quad)
    ordered = all(
        lo <= hi or tol.close(lo, hi) for lo, hi in zip(values[:-1], values[1:])
    )
    status, note = "unchecked", ""
    if check:
        verdict = check_coordinate_convexity(surface.eval, rect, grid)
        status = "holds" if verdict.holds else "fails"
        if not verdict.holds:
            note = f"chain: {surface.name} not co-ordinated convex ({verdict.describe()})"
            warnings.warn(note, HypothesisNotVerified, stacklevel=2)
    return ChainReport(surface.name, rect, values, ordered, status, note)
