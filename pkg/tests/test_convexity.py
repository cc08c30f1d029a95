import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadamard_coord.convexity import (
    check_coordinate_convexity,
    check_full_convexity,
    check_hypothesis,
)
from hadamard_coord.domain import make_rectangle
from hadamard_coord.surfaces import CATALOG, Surface, catalog_lookup

LAMBDAS = (0.25, 0.5, 0.75)


def test_sum_of_squares_is_convex(unit):
    v = check_full_convexity(lambda u, w: u * u + w * w, unit, 5, LAMBDAS)
    assert v.holds


def test_product_not_jointly_convex(unit):
    v = check_full_convexity(lambda u, w: u * w, unit, 5, LAMBDAS)
    assert not v.holds
    assert v.worst_violation == pytest.approx(0.25)
    assert v.witness == ((0.0, 1.0), (1.0, 0.0), 0.5)


def test_constant_convex_with_zero_violation(unit):
    v = check_full_convexity(lambda u, w: np.ones(np.broadcast(u, w).shape), unit, 5, LAMBDAS)
    assert v.holds and v.worst_violation == 0


@pytest.mark.parametrize("f", [lambda u, v: u * v, lambda u, v: (u * v) ** 2])
def test_coordinate_convex_examples(unit, f):
    assert check_coordinate_convexity(f, unit, 5, LAMBDAS).holds


def test_concave_partial_map_fails(unit):
    v = check_coordinate_convexity(lambda u, w: -(u**2) + 0 * w, unit, 5, LAMBDAS)
    assert not v.holds
    # the witness lies on a frozen-y slice
    (x1, y1), (x2, y2), _ = v.witness
    assert y1 == y2


def test_hypothesis_examples(unit):
    assert check_hypothesis(catalog_lookup("product").surface, unit).holds
    assert check_hypothesis(catalog_lookup("sqproduct").surface, unit, q=2).holds
    assert check_hypothesis(catalog_lookup("sqproduct").surface, unit).holds


def test_hypothesis_with_fd_insets_grid(unit):
    bare = Surface("bare-sq", eval=lambda u, v: (u * v) ** 2)
    v = check_hypothesis(bare, unit, q=2)
    assert v.holds
    assert "inset" in v.note


FACT_CHECKS = {
    "fully convex": lambda s, r: check_full_convexity(s.eval, r).holds,
    "not fully convex": lambda s, r: not check_full_convexity(s.eval, r).holds,
    "coordinate convex": lambda s, r: check_coordinate_convexity(s.eval, r).holds,
    "not coordinate convex": lambda s, r: not check_coordinate_convexity(s.eval, r).holds,
    "coordinate-convex |D|": lambda s, r: check_hypothesis(s, r).holds,
    "not coordinate-convex |D|": lambda s, r: not check_hypothesis(s, r).holds,
    "coordinate-convex |D|^q": lambda s, r: all(
        check_hypothesis(s, r, q).holds for q in (1.5, 2, 3)
    ),
}


@pytest.mark.parametrize(
    "name, fact",
    [(n, f) for n, e in CATALOG.items() for f in e.expected_properties],
)
def test_declared_catalog_facts(name, fact):
    entry = CATALOG[name]
    assert FACT_CHECKS[fact](entry.surface, entry.default_rect)


@pytest.mark.parametrize("name", list(CATALOG))
def test_full_implies_coordinate(name, sweep_rect):
    f = CATALOG[name].surface.eval
    if check_full_convexity(f, sweep_rect).holds:
        assert check_coordinate_convexity(f, sweep_rect).holds


def test_separating_witness(unit):
    f = CATALOG["product"].surface.eval
    assert check_coordinate_convexity(f, unit, 9).holds
    assert not check_full_convexity(f, unit, 9).holds


@pytest.mark.parametrize("name", ["product", "trig", "sqproduct"])
def test_deterministic(name, unit):
    f = CATALOG[name].surface.eval
    assert check_full_convexity(f, unit, 7) == check_full_convexity(f, unit, 7)
    assert check_coordinate_convexity(f, unit, 7) == check_coordinate_convexity(f, unit, 7)


def test_ties_pick_smallest_witness(unit):
    # f = -u^2 - v^2 violates identically on every slice; the first slice wins
    v = check_coordinate_convexity(lambda u, w: -(u**2) - w**2, unit, 3, (0.5,))
    assert v.witness == ((0.0, 0.0), (0.0, 1.0), 0.5)


@settings(max_examples=40, deadline=None)
@given(
    cx=st.floats(0.1, 5), cy=st.floats(0.1, 5), cxy=st.floats(-1, 1),
    a=st.floats(-3, 0), c=st.floats(-3, 0),
)
def test_psd_quadratics_pass_both_checks(cx, cy, cxy, a, c):
    # PSD when cxy^2 <= cx*cy
    cxy = cxy * np.sqrt(cx * cy)
    f = lambda u, v: cx * u * u + 2 * cxy * u * v + cy * v * v
    r = make_rectangle(a, a + 2, c, c + 1)
    assert check_full_convexity(f, r, 5).holds
    assert check_coordinate_convexity(f, r, 5).holds
