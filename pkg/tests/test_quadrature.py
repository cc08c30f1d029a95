import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadamard_coord.domain import DegenerateDomain, make_rectangle
from hadamard_coord.quadrature import (
    QuadratureSpec,
    edge_integrals,
    gauss_legendre,
    integrate_1d,
    integrate_2d,
)
from hadamard_coord.surfaces import CATALOG, catalog_lookup
from oracles import closed_form_monomial


@pytest.mark.parametrize("n", [2, 3, 5, 16, 33, 64])
def test_nodes_match_reference_table(n):
    x, w = gauss_legendre(n)
    xr, wr = np.polynomial.legendre.leggauss(n)
    assert np.allclose(x, xr, atol=1e-15, rtol=0)
    assert np.allclose(w, wr, atol=1e-14, rtol=0)


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(1, 8)
    with pytest.raises(ValueError):
        QuadratureSpec(16, 0)


def test_1d_examples():
    assert integrate_1d(lambda v: v, 0, 1) == pytest.approx(0.5, abs=1e-15)
    assert integrate_1d(lambda v: v * v, 0, 1) == pytest.approx(1 / 3, abs=1e-15)
    assert abs(integrate_1d(np.exp, 0, 1) - (math.e - 1)) < 1e-12
    assert integrate_1d(lambda v: 1.0, 2, 5) == pytest.approx(3.0, rel=1e-15)


def test_1d_degenerate():
    with pytest.raises(DegenerateDomain):
        integrate_1d(np.exp, 1, 1)


def test_2d_examples(unit):
    assert integrate_2d(lambda u, v: u * v, unit) == pytest.approx(0.25, abs=1e-15)
    assert integrate_2d(lambda u, v: (u * v) ** 2, unit) == pytest.approx(1 / 9, abs=1e-15)
    assert integrate_2d(lambda u, v: 1.0, make_rectangle(-1, 2, 0, 3)) == pytest.approx(9, rel=1e-14)


@pytest.mark.parametrize("nodes", [2, 4, 8])
def test_exact_degree(nodes):
    spec = QuadratureSpec(nodes, 1)
    k = 2 * nodes - 1
    got = integrate_1d(lambda v: v**k, -0.5, 2.0, spec)
    assert got == pytest.approx((2.0 ** (k + 1) - (-0.5) ** (k + 1)) / (k + 1), rel=1e-13)


@pytest.mark.parametrize("i", range(8))
@pytest.mark.parametrize("j", range(8))
def test_polynomial_exactness(i, j, sweep_rect):
    a, b, c, d = sweep_rect.as_tuple()
    want = closed_form_monomial(i, j, a, b, c, d)
    got = integrate_2d(lambda u, v: u**i * v**j, sweep_rect)
    assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


@pytest.mark.parametrize(
    "name, want",
    [
        ("product", (0, 0.5, 0, 0.5)),
        ("sqproduct", (0, 1 / 3, 0, 1 / 3)),
        ("constant", (1, 1, 1, 1)),
    ],
)
@pytest.mark.parametrize("oracles", [False, True])
def test_edge_integrals(unit, name, want, oracles):
    got = edge_integrals(catalog_lookup(name).surface, unit, QuadratureSpec(use_oracles=oracles))
    assert np.allclose(got, want, atol=1e-14)


@pytest.mark.parametrize("name", list(CATALOG))
def test_refinement_does_not_increase_error(name, sweep_rect):
    s = CATALOG[name].surface
    a, b, c, d = sweep_rect.as_tuple()
    exact = s.exact.double(a, b, c, d)
    errs = [
        abs(integrate_2d(s.eval, sweep_rect, QuadratureSpec(2, m)) - exact) for m in (1, 2, 4, 8)
    ]
    for coarse, fine in zip(errs, errs[1:]):
        assert fine <= coarse + 1e-13 * max(1.0, abs(exact))


@settings(max_examples=50, deadline=None)
@given(
    alpha=st.floats(-10, 10),
    beta=st.floats(-10, 10),
    name_f=st.sampled_from(sorted(CATALOG)),
    name_g=st.sampled_from(sorted(CATALOG)),
)
def test_linearity(alpha, beta, name_f, name_g):
    r = make_rectangle(-1, 2, 0, 3)
    f, g = CATALOG[name_f].surface.eval, CATALOG[name_g].surface.eval
    lhs = integrate_2d(lambda u, v: alpha * f(u, v) + beta * g(u, v), r)
    rhs = alpha * integrate_2d(f, r) + beta * integrate_2d(g, r)
    scale = 1 + abs(alpha) * abs(integrate_2d(lambda u, v: np.abs(f(u, v)), r)) + abs(beta) * abs(
        integrate_2d(lambda u, v: np.abs(g(u, v)), r)
    )
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_axis_symmetry(unit):
    f = lambda u, v: np.exp(u * v) + u * u * v * v
    r = make_rectangle(-1, 2, -1, 2)
    assert integrate_2d(f, r) == pytest.approx(integrate_2d(lambda u, v: f(v, u), r), rel=1e-14)
