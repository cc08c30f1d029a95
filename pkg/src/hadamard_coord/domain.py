"""Validated value types shared across the package.

Everything here is an immutable dataclass; construct through the
``make_*`` helpers (or the class directly, which validates in
``__post_init__``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class HadamardError(ValueError):
    """Base class for every domain error raised by this package."""


class DegenerateDomain(HadamardError):
    pass


class PointOutsideDomain(HadamardError):
    pass


class ExponentOutOfRange(HadamardError):
    pass


class UnknownSurface(HadamardError):
    pass


class StencilOutsideDomain(HadamardError):
    pass


class HypothesisNotVerified(UserWarning):
    """Issued when a sampled convexity hypothesis fails; results are still produced."""


CONJUGACY_TOL = 1e-12


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


@dataclass(frozen=True)
class Rectangle:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if not _finite(self.a, self.b, self.c, self.d):
            raise DegenerateDomain(f"non-finite rectangle bounds {self.as_tuple()}")
        if not (self.a < self.b and self.c < self.d):
            raise DegenerateDomain(
                f"need a < b and c < d, got [{self.a}, {self.b}] x [{self.c}, {self.d}]"
            )

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def height(self) -> float:
        return self.d - self.c

    @property
    def area(self) -> float:
        return (self.b - self.a) * (self.d - self.c)

    @property
    def midpoint(self) -> tuple[float, float]:
        return (0.5 * (self.a + self.b), 0.5 * (self.c + self.d))

    def contains(self, x: float, y: float) -> bool:
        return self.a <= x <= self.b and self.c <= y <= self.d

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def label(self) -> str:
        return f"[{self.a:.12g},{self.b:.12g}]x[{self.c:.12g},{self.d:.12g}]"


@dataclass(frozen=True)
class EvalPoint:
    """Free point (x, y) of the identity; always checked against ``rect``."""

    rect: Rectangle
    x: float
    y: float

    def __post_init__(self):
        if not _finite(self.x, self.y) or not self.rect.contains(self.x, self.y):
            raise PointOutsideDomain(
                f"point ({self.x}, {self.y}) not in {self.rect.label()}"
            )


@dataclass(frozen=True)
class HolderExponents:
    p: float
    q: float

    def __post_init__(self):
        if not (self.p > 1 and self.q > 1):
            raise ExponentOutOfRange(f"need p > 1 and q > 1, got p={self.p}, q={self.q}")
        if abs(1.0 / self.p + 1.0 / self.q - 1.0) > CONJUGACY_TOL:
            raise ExponentOutOfRange(f"p={self.p}, q={self.q} are not conjugate")


@dataclass(frozen=True)
class Tolerances:
    abs_tol: float = 1e-9
    rel_tol: float = 1e-9

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise HadamardError("tolerances must be strictly positive")

    def close(self, u: float, v: float) -> bool:
        return abs(u - v) <= self.abs_tol + self.rel_tol * max(abs(u), abs(v))


DEFAULT_TOLERANCES = Tolerances()


def make_rectangle(a: float, b: float, c: float, d: float) -> Rectangle:
    return Rectangle(float(a), float(b), float(c), float(d))


def make_point(rect: Rectangle, x: float, y: float) -> EvalPoint:
    return EvalPoint(rect, float(x), float(y))


def holder_from_q(q: float) -> HolderExponents:
    """Conjugate pair with 1/p + 1/q = 1 for a given ``q > 1``."""
    q = float(q)
    if not (math.isfinite(q) and q > 1):
        raise ExponentOutOfRange(f"q must be > 1, got {q}")
    return HolderExponents(q / (q - 1.0), q)


UNIT_SQUARE = Rectangle(0.0, 1.0, 0.0, 1.0)
