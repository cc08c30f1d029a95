"""Functions under test: values, mixed second partials and exact integrals.

A :class:`Surface` wraps a vectorised ``f(u, v)``; ``mixed`` is the
analytic mixed partial d2f/dudv when known. Catalog entries also carry
closed-form edge and double integrals so identity checks never depend on a
single integrator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .domain import Rectangle, StencilOutsideDomain, UnknownSurface

Fn2 = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class SeparableTerm:
    """One term g(u)*h(v) with antiderivatives G, H (used by the oracles)."""

    g: Callable
    G: Callable
    h: Callable
    H: Callable


@dataclass(frozen=True)
class ExactIntegrals:
    terms: tuple[SeparableTerm, ...]

    def along_v(self, u0: float, lo: float, hi: float) -> float:
        """int_lo^hi f(u0, v) dv"""
        return float(sum(t.g(u0) * (t.H(hi) - t.H(lo)) for t in self.terms))

    def along_u(self, v0: float, lo: float, hi: float) -> float:
        """int_lo^hi f(u, v0) du"""
        return float(sum(t.h(v0) * (t.G(hi) - t.G(lo)) for t in self.terms))

    def double(self, a: float, b: float, c: float, d: float) -> float:
        return float(sum((t.G(b) - t.G(a)) * (t.H(d) - t.H(c)) for t in self.terms))


@dataclass(frozen=True, eq=False)
class Surface:
    name: str
    eval: Fn2
    mixed: Optional[Fn2] = None
    exact: Optional[ExactIntegrals] = None
    notes: str = ""

    def __call__(self, u, v):
        return self.eval(u, v)

    def scaled(self, alpha: float) -> "Surface":
        """alpha * f, with mixed partial and oracles scaled to match."""
        ex = None
        if self.exact is not None:
            ex = ExactIntegrals(
                tuple(
                    SeparableTerm(
                        (lambda g: lambda u: alpha * g(u))(t.g),
                        (lambda G: lambda u: alpha * G(u))(t.G),
                        t.h,
                        t.H,
                    )
                    for t in self.exact.terms
                )
            )
        mixed = None
        if self.mixed is not None:
            m = self.mixed
            mixed = lambda u, v: alpha * np.asarray(m(u, v), dtype=float)
        f = self.eval
        return Surface(
            name=f"{alpha:.12g}*{self.name}",
            eval=lambda u, v: alpha * np.asarray(f(u, v), dtype=float),
            mixed=mixed,
            exact=ex,
            notes=self.notes,
        )


@dataclass(frozen=True)
class CatalogEntry:
    surface: Surface
    default_rect: Rectangle
    # Facts checked by the convexity test suite; see FACTS below.
    expected_properties: tuple[str, ...] = field(default_factory=tuple)


# Vocabulary for CatalogEntry.expected_properties.
FACTS = (
    "fully convex",
    "not fully convex",
    "coordinate convex",
    "not coordinate convex",
    "coordinate-convex |D|",
    "not coordinate-convex |D|",
    "coordinate-convex |D|^q",
)


def default_step(u, v):
    return 1e-4 * np.maximum(1.0, np.maximum(np.abs(u), np.abs(v)))


def fd_mixed_partial(f: Fn2, u, v, step=None, rect: Optional[Rectangle] = None):
    """Cross central difference of f at (u, v); vectorised over arrays."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    h = default_step(u, v) if step is None else np.asarray(step, dtype=float)
    if rect is not None:
        inside = (
            (u - h >= rect.a) & (u + h <= rect.b) & (v - h >= rect.c) & (v + h <= rect.d)
        )
        if not np.all(inside):
            raise StencilOutsideDomain(
                f"stencil of width {np.max(h):.3g} leaves {rect.label()}"
            )
    val = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (
        4.0 * h * h
    )
    if val.ndim == 0:
        return float(val)
    return val


def mixed_partial(surface: Surface, u, v, step=None, rect: Optional[Rectangle] = None):
    """Mixed partial d2f/dudv: analytic when available, finite differences otherwise."""
    if surface.mixed is not None:
        out = np.broadcast_to(
            np.asarray(surface.mixed(u, v), dtype=float), np.broadcast(u, v).shape
        )
        return float(out) if out.ndim == 0 else np.array(out)
    return fd_mixed_partial(surface.eval, u, v, step, rect)


def abs_mixed_surface(surface: Surface, q: Optional[float] = None, rect=None) -> Surface:
    """The derived surface |D| (``q is None``) or |D|^q."""
    power = 1.0 if q is None else float(q)
    label = "|D|" if q is None else f"|D|^{power:g}"

    def ev(u, v):
        return np.abs(np.asarray(mixed_partial(surface, u, v, rect=rect), dtype=float)) ** power

    return Surface(name=f"{label}[{surface.name}]", eval=ev)


def _const(value):
    return lambda u: np.full_like(np.asarray(u, dtype=float), value)


def _power(k):
    return lambda u: np.asarray(u, dtype=float) ** k


def _antipower(k):
    return lambda u: np.asarray(u, dtype=float) ** (k + 1) / (k + 1)


def _monomial(i: int, j: int, coef: float = 1.0) -> SeparableTerm:
    return SeparableTerm(
        lambda u: coef * np.asarray(u, dtype=float) ** i,
        lambda u: coef * np.asarray(u, dtype=float) ** (i + 1) / (i + 1),
        _power(j),
        _antipower(j),
    )


def _build_catalog() -> dict[str, CatalogEntry]:
    unit = Rectangle(0.0, 1.0, 0.0, 1.0)
    entries = [
        CatalogEntry(
            Surface(
                "product",
                eval=lambda u, v: np.asarray(u, dtype=float) * v,
                mixed=lambda u, v: np.ones(np.broadcast(u, v).shape),
                exact=ExactIntegrals((_monomial(1, 1),)),
                notes="uv: bilinear, coordinate convex, not jointly convex",
            ),
            unit,
            (
                "not fully convex",
                "coordinate convex",
                "coordinate-convex |D|",
                "coordinate-convex |D|^q",
            ),
        ),
        CatalogEntry(
            Surface(
                "sqproduct",
                eval=lambda u, v: (np.asarray(u, dtype=float) * v) ** 2,
                mixed=lambda u, v: 4.0 * np.asarray(u, dtype=float) * v,
                exact=ExactIntegrals((_monomial(2, 2),)),
                notes="u^2 v^2: coordinate convex, not jointly convex",
            ),
            unit,
            (
                "not fully convex",
                "coordinate convex",
                "coordinate-convex |D|",
                "coordinate-convex |D|^q",
            ),
        ),
        CatalogEntry(
            Surface(
                "constant",
                eval=lambda u, v: np.ones(np.broadcast(u, v).shape),
                mixed=lambda u, v: np.zeros(np.broadcast(u, v).shape),
                exact=ExactIntegrals((_monomial(0, 0),)),
                notes="1: D vanishes identically",
            ),
            unit,
            (
                "fully convex",
                "coordinate convex",
                "coordinate-convex |D|",
                "coordinate-convex |D|^q",
            ),
        ),
        CatalogEntry(
            Surface(
                "exp",
                eval=lambda u, v: np.exp(np.asarray(u, dtype=float) + v),
                mixed=lambda u, v: np.exp(np.asarray(u, dtype=float) + v),
                exact=ExactIntegrals((SeparableTerm(np.exp, np.exp, np.exp, np.exp),)),
                notes="e^(u+v): jointly convex, D = f",
            ),
            unit,
            (
                "fully convex",
                "coordinate convex",
                "coordinate-convex |D|",
                "coordinate-convex |D|^q",
            ),
        ),
        CatalogEntry(
            Surface(
                "quartic",
                eval=lambda u, v: (
                    np.asarray(u, dtype=float) ** 4 + np.asarray(v, dtype=float) ** 4 + (u * v) ** 2
                ),
                mixed=lambda u, v: 4.0 * np.asarray(u, dtype=float) * v,
                exact=ExactIntegrals(
                    (_monomial(4, 0), _monomial(0, 4), _monomial(2, 2))
                ),
                notes="u^4 + v^4 + u^2 v^2: jointly convex (PSD Hessian)",
            ),
            unit,
            (
                "fully convex",
                "coordinate convex",
                "coordinate-convex |D|",
                "coordinate-convex |D|^q",
            ),
        ),
        CatalogEntry(
            Surface(
                "affine",
                eval=lambda u, v: 2.0 * np.asarray(u, dtype=float) + 3.0 * np.asarray(v, dtype=float) + 1.0,
                mixed=lambda u, v: np.zeros(np.broadcast(u, v).shape),
                exact=ExactIntegrals(
                    (_monomial(1, 0, 2.0), _monomial(0, 1, 3.0), _monomial(0, 0))
                ),
                notes="2u + 3v + 1: D vanishes identically",
            ),
            unit,
            (
                "fully convex",
                "coordinate convex",
                "coordinate-convex |D|",
                "coordinate-convex |D|^q",
            ),
        ),
        CatalogEntry(
            Surface(
                "trig",
                eval=lambda u, v: np.sin(u) * np.sin(v),
                mixed=lambda u, v: np.cos(u) * np.cos(v),
                exact=ExactIntegrals(
                    (SeparableTerm(np.sin, lambda u: -np.cos(u), np.sin, lambda v: -np.cos(v)),)
                ),
                notes="sin u sin v: violates every convexity hypothesis on the unit square",
            ),
            unit,
            (
                "not fully convex",
                "not coordinate convex",
                "not coordinate-convex |D|",
            ),
        ),
    ]
    return {e.surface.name: e for e in entries}


CATALOG: dict[str, CatalogEntry] = _build_catalog()

# The six surfaces every sweep and acceptance run covers by default.
CORE_SURFACES = ("product", "sqproduct", "constant", "exp", "quartic", "affine")


def catalog_names() -> list[str]:
    return list(CATALOG)


def catalog_lookup(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownSurface(
            f"unknown surface {name!r}; valid names: {', '.join(CATALOG)}"
        ) from None
