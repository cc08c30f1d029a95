"""Sampled secant-inequality checks for joint and co-ordinated convexity.

A verdict that holds means "not falsified at this grid resolution"; it is a
necessary-condition check, never a proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .domain import Rectangle
from .surfaces import Surface, abs_mixed_surface, default_step

DEFAULT_LAMBDAS = (0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75)
DEFAULT_GRID = 9

Witness = tuple[tuple[float, float], tuple[float, float], float]


@dataclass(frozen=True)
class ConvexityVerdict:
    holds: bool
    worst_violation: float
    witness: Optional[Witness]
    tol: float
    grid: int
    note: str = ""

    def describe(self) -> str:
        state = (
            f"not falsified at resolution {self.grid}"
            if self.holds
            else f"violated by {self.worst_violation:.6g} at {self.witness}"
        )
        return f"{state}{'; ' + self.note if self.note else ''}"


def _values(f, u, v) -> np.ndarray:
    return np.broadcast_to(np.asarray(f(u, v), dtype=float), np.broadcast(u, v).shape)


def _verdict(violations, witness_fn, sampled_max, grid, tol, note=""):
    if tol is None:
        tol = 1e-10 * (1.0 + sampled_max)
    flat = violations.ravel()
    worst = float(np.max(flat))
    tied = np.flatnonzero(flat == worst)
    witness = min(witness_fn(k) for k in tied)
    return ConvexityVerdict(worst <= tol, worst, witness, float(tol), grid, note)


def check_full_convexity(
    f,
    rect: Rectangle,
    grid: int = DEFAULT_GRID,
    lambdas: Sequence[float] = DEFAULT_LAMBDAS,
    tol: Optional[float] = None,
) -> ConvexityVerdict:
    """Joint convexity: f(lp + (1-l)z) <= l f(p) + (1-l) f(z) over grid pairs."""
    if grid < 2:
        raise ValueError("grid must be >= 2")
    lam = np.asarray(lambdas, dtype=float)
    us = np.linspace(rect.a, rect.b, grid)
    vs = np.linspace(rect.c, rect.d, grid)
    U, V = np.meshgrid(us, vs, indexing="ij")
    pu, pv = U.ravel(), V.ravel()
    fp = _values(f, pu, pv)
    i, j = np.triu_indices(pu.size, 1)
    L = lam[None, :]
    cu = L * pu[i, None] + (1 - L) * pu[j, None]
    cv = L * pv[i, None] + (1 - L) * pv[j, None]
    viol = _values(f, cu, cv) - (L * fp[i, None] + (1 - L) * fp[j, None])

    def witness(k):
        pair, li = divmod(int(k), lam.size)
        return (
            (float(pu[i[pair]]), float(pv[i[pair]])),
            (float(pu[j[pair]]), float(pv[j[pair]])),
            float(lam[li]),
        )

    return _verdict(viol, witness, float(np.max(np.abs(fp))), grid, tol)


def check_coordinate_convexity(
    f,
    rect: Rectangle,
    grid: int = DEFAULT_GRID,
    lambdas: Sequence[float] = DEFAULT_LAMBDAS,
    tol: Optional[float] = None,
    note: str = "",
) -> ConvexityVerdict:
    """Convexity of every partial map u -> f(u, y) and v -> f(x, v) on the grid."""
    if grid < 2:
        raise ValueError("grid must be >= 2")
    lam = np.asarray(lambdas, dtype=float)
    us = np.linspace(rect.a, rect.b, grid)
    vs = np.linspace(rect.c, rect.d, grid)
    i, j = np.triu_indices(grid, 1)
    L = lam[None, None, :]
    sampled = []

    # axis 0: u varies, v frozen along the first index
    V0 = vs[:, None, None]
    fu = _values(f, us[None, :], vs[:, None])
    cu = L * us[i][None, :, None] + (1 - L) * us[j][None, :, None]
    cu, V0 = np.broadcast_arrays(cu, V0)
    viol_u = _values(f, cu, V0) - (
        L * fu[:, i, None] + (1 - L) * fu[:, j, None]
    )
    sampled.append(np.max(np.abs(fu)))

    # axis 1: v varies, u frozen
    U0 = us[:, None, None]
    fv = _values(f, us[:, None], vs[None, :])
    cv = L * vs[i][None, :, None] + (1 - L) * vs[j][None, :, None]
    U0, cv = np.broadcast_arrays(U0, cv)
    viol_v = _values(f, U0, cv) - (
        L * fv[:, i, None] + (1 - L) * fv[:, j, None]
    )

    viol = np.concatenate([viol_u.ravel(), viol_v.ravel()])
    n_pairs, n_lam = i.size, lam.size
    half = viol_u.size

    def witness(k):
        k = int(k)
        axis_v = k >= half
        k = k - half if axis_v else k
        frozen, rest = divmod(k, n_pairs * n_lam)
        pair, li = divmod(rest, n_lam)
        if axis_v:
            x = float(us[frozen])
            return ((x, float(vs[i[pair]])), (x, float(vs[j[pair]])), float(lam[li]))
        y = float(vs[frozen])
        return ((float(us[i[pair]]), y), (float(us[j[pair]]), y), float(lam[li]))

    return _verdict(viol, witness, float(max(sampled)), grid, tol, note)


def check_hypothesis(
    surface: Surface,
    rect: Rectangle,
    q: Optional[float] = None,
    grid: int = DEFAULT_GRID,
    tol: Optional[float] = None,
) -> ConvexityVerdict:
    """Co-ordinated convexity of |D| (``q is None``) or of |D|^q.

    Without an analytic mixed partial the finite-difference stencil cannot
    reach the boundary, so the sample rectangle is inset by one step.
    """
    sample_rect, note = rect, ""
    if surface.mixed is None:
        corners = np.array([[rect.a, rect.c], [rect.b, rect.d], [rect.a, rect.d], [rect.b, rect.c]])
        h = float(np.max(default_step(corners[:, 0], corners[:, 1]))) * (1 + 1e-9)
        sample_rect = Rectangle(rect.a + h, rect.b - h, rect.c + h, rect.d - h)
        note = f"finite-difference D; grid inset by {h:.3g}"
    derived = abs_mixed_surface(surface, q, rect=rect)
    return check_coordinate_convexity(derived.eval, sample_rect, grid, tol=tol, note=note)
