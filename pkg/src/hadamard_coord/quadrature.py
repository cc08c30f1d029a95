"""Composite Gauss-Legendre rules on intervals and rectangles.

Node/weight tables are computed once per order by Newton iteration on the
Legendre polynomial and cached as read-only arrays. Integrands are called
with numpy arrays; scalar-valued callables (e.g. ``lambda v: 1.0``) are
broadcast.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .domain import DegenerateDomain, Rectangle


@dataclass(frozen=True)
class QuadratureSpec:
    nodes_per_panel: int = 16
    panels_per_axis: int = 8
    # Use a surface's closed-form edge/double integrals when it has them.
    use_oracles: bool = False

    def __post_init__(self):
        if self.nodes_per_panel < 2 or self.panels_per_axis < 1:
            raise ValueError(
                f"need nodes_per_panel >= 2 and panels_per_axis >= 1, got {self}"
            )


DEFAULT_QUAD = QuadratureSpec()


def _legendre_and_derivative(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p0 = np.ones_like(x)
    p1 = x.copy()
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the ``n``-point rule on [-1, 1], ascending nodes."""
    if n < 1:
        raise ValueError("order must be positive")
    k = np.arange(1, n + 1)
    # Tricomi initial guess, descending in x
    x = np.cos(np.pi * (k - 0.25) / (n + 0.5))
    for _ in range(100):
        p, dp = _legendre_and_derivative(n, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    _, dp = _legendre_and_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    x, w = x[::-1].copy(), w[::-1].copy()
    # enforce exact symmetry
    x = 0.5 * (x - x[::-1])
    w = 0.5 * (w + w[::-1])
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def composite_rule(lo: float, hi: float, spec: QuadratureSpec = DEFAULT_QUAD):
    """Nodes and weights of the composite rule on ``[lo, hi]``."""
    if not lo < hi:
        raise DegenerateDomain(f"empty interval [{lo}, {hi}]")
    x, w = gauss_legendre(spec.nodes_per_panel)
    edges = np.linspace(lo, hi, spec.panels_per_axis + 1)
    half = 0.5 * np.diff(edges)
    centre = 0.5 * (edges[:-1] + edges[1:])
    nodes = (centre[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _values(fn, *args) -> np.ndarray:
    out = np.asarray(fn(*args), dtype=float)
    return np.broadcast_to(out, np.broadcast(*args).shape)


def integrate_1d(
    g: Callable, lo: float, hi: float, spec: QuadratureSpec = DEFAULT_QUAD
) -> float:
    nodes, weights = composite_rule(lo, hi, spec)
    return float(weights @ _values(g, nodes))


def integrate_2d(
    f: Callable, rect: Rectangle, spec: QuadratureSpec = DEFAULT_QUAD
) -> float:
    """Tensor-product rule; ``f(U, V)`` is called once on the full node mesh."""
    xu, wu = composite_rule(rect.a, rect.b, spec)
    xv, wv = composite_rule(rect.c, rect.d, spec)
    U, V = np.meshgrid(xu, xv, indexing="ij")
    return float(wu @ _values(f, U, V) @ wv)


def integrate_unit_square(f: Callable, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    return integrate_2d(f, Rectangle(0.0, 1.0, 0.0, 1.0), spec)


def line_v(surface, u0: float, lo: float, hi: float, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """int_lo^hi f(u0, v) dv"""
    if spec.use_oracles and surface.exact is not None:
        return surface.exact.along_v(u0, lo, hi)
    f = surface.eval
    return integrate_1d(lambda v: f(np.full_like(v, u0), v), lo, hi, spec)


def line_u(surface, v0: float, lo: float, hi: float, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    """int_lo^hi f(u, v0) du"""
    if spec.use_oracles and surface.exact is not None:
        return surface.exact.along_u(v0, lo, hi)
    f = surface.eval
    return integrate_1d(lambda u: f(u, np.full_like(u, v0)), lo, hi, spec)


def edge_integrals(surface, rect: Rectangle, spec: QuadratureSpec = DEFAULT_QUAD):
    """Return the four edge integrals of ``surface`` over ``rect``.

    Order: (int_c^d f(a,v) dv, int_c^d f(b,v) dv, int_a^b f(u,c) du,
    int_a^b f(u,d) du). Closed forms are used when ``spec.use_oracles`` is
    set and the surface carries them.
    """
    a, b, c, d = rect.as_tuple()
    return (
        line_v(surface, a, c, d, spec),
        line_v(surface, b, c, d, spec),
        line_u(surface, c, a, b, spec),
        line_u(surface, d, a, b, spec),
    )


def double_integral(surface, rect: Rectangle, spec: QuadratureSpec = DEFAULT_QUAD) -> float:
    ex = surface.exact
    if spec.use_oracles and ex is not None:
        return ex.double(rect.a, rect.b, rect.c, rect.d)
    return integrate_2d(surface.eval, rect, spec)
