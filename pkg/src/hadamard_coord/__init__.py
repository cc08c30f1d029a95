"""Numerical checks of Hadamard-type inequalities for co-ordinated convex functions."""

from .domain import (
    DegenerateDomain,
    EvalPoint,
    ExponentOutOfRange,
    HadamardError,
    HolderExponents,
    HypothesisNotVerified,
    PointOutsideDomain,
    Rectangle,
    StencilOutsideDomain,
    Tolerances,
    UnknownSurface,
    holder_from_q,
    make_point,
    make_rectangle,
)
from .quadrature import QuadratureSpec, edge_integrals, integrate_1d, integrate_2d
from .surfaces import CATALOG, CORE_SURFACES, Surface, catalog_lookup, mixed_partial
from .convexity import (
    ConvexityVerdict,
    check_coordinate_convexity,
    check_full_convexity,
    check_hypothesis,
)
from .inequalities import (
    BoundReport,
    bound_t1,
    bound_t2,
    bound_t3,
    chain_1_1,
    corner_functional_A,
    corollary,
    kernel_term,
    lemma_lhs,
    verify_identity,
)

__version__ = "0.1.0"
