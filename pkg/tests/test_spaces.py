import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from banachgeo.spaces import (
    DimensionError,
    Lp,
    MaxOf,
    Polyhedral,
    SpaceError,
    UnitVector,
    XMu,
    direction2,
    grid_angles,
    sphere_grid,
    unit_vector,
)

SQ2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# point values


def test_lp_known_values(l1, l2, linf):
    assert linf.norm([3.0, -4.0]) == 4.0
    assert l1.norm([3.0, -4.0]) == 7.0
    assert l2.norm([3.0, 4.0]) == 5.0
    p3 = Lp(3.0)
    assert p3.norm([1.0, 1.0]) == pytest.approx(2.0 ** (1.0 / 3.0))
    assert Lp(2.0, dim=3).norm([1.0, 2.0, 2.0]) == 3.0


def test_xmu_known_values(xmu12):
    assert xmu12.norm([1.0, 0.0]) == pytest.approx(1.2)
    # on the diagonal the Euclidean part dominates for mu < sqrt(2)
    assert xmu12.norm([1.0, 1.0]) == pytest.approx(SQ2)
    assert XMu(1.0).norm([0.3, -0.4]) == pytest.approx(0.5)


def test_polyhedral_square_is_sup_norm(linf):
    square = Polyhedral([[1, 1], [1, -1], [-1, 1], [-1, -1]])
    rng = np.random.default_rng(7)
    pts = rng.normal(size=(200, 2))
    np.testing.assert_allclose(square.norm(pts), linf.norm(pts), atol=1e-12)


def test_hexagon_values(hexagon):
    assert hexagon.norm([1.0, 0.0]) == pytest.approx(1.0)
    # midpoint of an edge direction: (0,1) hits the edge at height cos(30)
    assert hexagon.norm([0.0, 1.0]) == pytest.approx(2.0 / math.sqrt(3.0))
    assert hexagon.norm([0.5, math.sqrt(3.0) / 2.0]) == pytest.approx(1.0)


def test_max_of_matches_xmu(l2, linf, xmu12):
    combo = MaxOf([(1.0, l2), (1.2, linf)])
    rng = np.random.default_rng(11)
    pts = rng.normal(size=(500, 2))
    np.testing.assert_allclose(combo.norm(pts), xmu12.norm(pts), rtol=1e-14)


# ---------------------------------------------------------------------------
# axioms in bulk (>= 10^4 sampled pairs per space)


@pytest.mark.parametrize(
    "space",
    [Lp(2.0), Lp(1.0), Lp(math.inf), Lp(3.5), XMu(1.3),
     Polyhedral([[1, 1], [1, -1], [-1, 1], [-1, -1]])],
    ids=["l2", "l1", "linf", "p3.5", "xmu1.3", "square"],
)
def test_norm_axioms_bulk(space):
    rng = np.random.default_rng(0)
    x = rng.normal(size=(10_000, 2)) * rng.lognormal(size=(10_000, 1))
    y = rng.normal(size=(10_000, 2))
    c = rng.normal(size=10_000)
    nx, ny = space.norm(x), space.norm(y)
    assert np.all(nx >= 0)
    assert np.all(space.norm(x + y) <= nx + ny + 1e-9 * (nx + ny))
    np.testing.assert_allclose(space.norm(c[:, None] * x), np.abs(c) * nx, rtol=1e-12)
    np.testing.assert_allclose(space.norm(-x), nx, rtol=0, atol=0)


@given(
    st.floats(-50, 50), st.floats(-50, 50),
    st.floats(min_value=1.0, max_value=20.0),
)
def test_lp_triangle_hypothesis(a, b, p):
    space = Lp(p)
    x = np.array([a, b])
    y = np.array([1.0, -2.0])
    assert space.norm(x + y) <= space.norm(x) + space.norm(y) + 1e-9


def test_norm2_matches_norm():
    spaces = [Lp(2.0), Lp(1.0), Lp(math.inf), Lp(2.7), XMu(1.25),
              Polyhedral([[1, 1], [1, -1], [-1, 1], [-1, -1]]),
              MaxOf([(0.8, Lp(2.0)), (1.1, Lp(1.0))])]
    rng = np.random.default_rng(3)
    pts = rng.normal(size=(300, 2))
    for space in spaces:
        for a, b in pts:
            assert space.norm2(a, b) == pytest.approx(
                space.norm([a, b]), rel=1e-14, abs=1e-300
            )


def test_xmu_norms_nested():
    rng = np.random.default_rng(5)
    pts = rng.normal(size=(1000, 2))
    lo, hi = XMu(1.1), XMu(1.3)
    assert np.all(lo.norm(pts) <= hi.norm(pts) + 1e-15)


# ---------------------------------------------------------------------------
# sphere sampling


def test_sphere_grid_unit_and_nested(xmu12):
    pts = sphere_grid(xmu12, 64)
    assert len(pts) == 64
    for u in pts:
        assert xmu12.norm(u.vec) == pytest.approx(1.0, abs=1e-12)
    coarse = set(np.round(grid_angles(32), 12))
    fine = set(np.round(grid_angles(64), 12))
    assert coarse <= fine


def test_direction2_matches_unit_vector(hexagon):
    for th in np.linspace(0.0, 2.0 * math.pi, 37):
        a, b = direction2(hexagon, th)
        assert hexagon.norm([a, b]) == pytest.approx(1.0, abs=1e-12)


def test_unit_vector_normalizes(l1):
    u = unit_vector(l1, [3.0, -1.0])
    assert l1.norm(u.vec) == pytest.approx(1.0, abs=1e-15)


# ---------------------------------------------------------------------------
# validation errors


def test_bad_constructions():
    with pytest.raises(SpaceError):
        Lp(0.5)
    with pytest.raises(SpaceError):
        Lp(2.0, dim=1)
    with pytest.raises(SpaceError):
        XMu(0.9)
    with pytest.raises(SpaceError):
        Polyhedral([[1, 0], [0, 1]])  # not symmetric
    with pytest.raises(SpaceError):
        Polyhedral([[1, 0], [-1, 0], [2, 0], [-2, 0]])  # degenerate
    with pytest.raises(SpaceError):
        MaxOf([])
    with pytest.raises(SpaceError):
        MaxOf([(0.0, Lp(2.0))])
    with pytest.raises(SpaceError):
        MaxOf([(1.0, Lp(2.0, dim=2)), (1.0, Lp(2.0, dim=3))])


def test_dimension_checks(l2):
    with pytest.raises(DimensionError):
        l2.norm([1.0, 2.0, 3.0])
    with pytest.raises(DimensionError):
        Lp(2.0, dim=3).norm2(1.0, 2.0)
    with pytest.raises(ValueError):
        unit_vector(l2, [0.0, 0.0])
    with pytest.raises(ValueError):
        UnitVector(np.array([2.0, 0.0]), l2)


def test_grid_angle_validation():
    with pytest.raises(ValueError):
        grid_angles(1)
