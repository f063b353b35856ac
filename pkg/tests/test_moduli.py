import math

import pytest

from banachgeo.moduli import (
    ConstantEstimate,
    delta,
    eps0,
    james_direct,
    james_via_delta,
    rect_constant,
    rho,
    rho_prime0,
)

SQ2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# modulus of convexity


@pytest.mark.parametrize("eps", [0.5, 1.0, 1.5, 2.0])
def test_delta_euclidean_closed_form(l2, eps):
    exact = 1.0 - math.sqrt(1.0 - eps * eps / 4.0)
    assert delta(l2, eps).value == pytest.approx(exact, abs=1e-3)


def test_delta_monotone_in_eps(l1, linf, xmu12):
    for space in (l1, linf, xmu12):
        vals = [delta(space, e).value for e in (0.3, 0.8, 1.3, 1.8)]
        assert all(b >= a - 1e-9 for a, b in zip(vals, vals[1:]))


def test_delta_flat_norms_vanish_below_threshold(linf, l1):
    # the square ball has segments of length 2, so delta stays 0 up to eps = 2
    assert delta(linf, 1.5).value == pytest.approx(0.0, abs=1e-9)
    assert delta(l1, 1.0).value == pytest.approx(0.0, abs=1e-9)


def test_delta_eps_validation(l2):
    with pytest.raises(ValueError):
        delta(l2, -0.1)
    with pytest.raises(ValueError):
        delta(l2, 2.5)


# ---------------------------------------------------------------------------
# characteristic of convexity


def test_eps0_values(l2, linf, xmu12, hexagon):
    assert eps0(l2).value <= 0.03
    assert eps0(linf).value == pytest.approx(2.0, abs=0.02)
    mu = 1.2
    assert eps0(xmu12).value == pytest.approx(2.0 * math.sqrt(mu * mu - 1.0), abs=0.05)
    assert eps0(hexagon).value == pytest.approx(1.0, abs=0.05)


# ---------------------------------------------------------------------------
# James constant


def test_james_values(l2, l1, linf, xmu12, hexagon):
    assert james_direct(l2).value == pytest.approx(SQ2, abs=0.02)
    assert james_direct(linf).value == pytest.approx(2.0, abs=0.02)
    assert james_direct(l1).value == pytest.approx(2.0, abs=0.02)
    assert james_direct(xmu12).value == pytest.approx(1.2 * SQ2, abs=0.02)
    assert james_direct(hexagon).value == pytest.approx(1.5, abs=0.02)


def test_james_range_and_delta_consistency(l2, linf, xmu12, hexagon):
    for space in (l2, linf, xmu12, hexagon):
        direct = james_direct(space).value
        assert SQ2 - 0.02 <= direct <= 2.0 + 1e-9
        assert abs(direct - james_via_delta(space).value) <= 0.02


# ---------------------------------------------------------------------------
# modulus of smoothness


def test_rho_euclidean(l2):
    # rho(t) = sqrt(1 + t^2) - 1 in the Euclidean plane
    assert rho(l2, 1.0).value == pytest.approx(SQ2 - 1.0, abs=1e-3)
    assert rho(l2, 0.5).value == pytest.approx(math.sqrt(1.25) - 1.0, abs=1e-3)


def test_rho_prime0_values(l2, linf, hexagon):
    assert rho_prime0(l2).value <= 0.02
    assert rho_prime0(linf).value == pytest.approx(1.0, abs=0.05)
    assert rho_prime0(hexagon).value == pytest.approx(0.5, abs=0.05)


def test_rho_t_validation(l2):
    assert rho(l2, 0.0).value == 0.0
    with pytest.raises(ValueError):
        rho(l2, -1.0)


# ---------------------------------------------------------------------------
# rectangular constant


def test_rect_values(l2, linf, l1, hexagon):
    assert rect_constant(l2).value == pytest.approx(SQ2, abs=0.02)
    assert rect_constant(linf).value == pytest.approx(3.0, abs=0.02)
    assert rect_constant(l1).value == pytest.approx(3.0, abs=0.02)
    assert rect_constant(hexagon).value == pytest.approx(2.0, abs=0.02)


# ---------------------------------------------------------------------------
# estimate metadata and grid behavior


def test_estimate_metadata(l2):
    est = james_direct(l2, 128)
    assert est.kind == "sup-estimate"
    assert est.bias == "lower"
    assert est.grid == 128
    est = delta(l2, 1.0, 128)
    assert est.kind == "inf-estimate"
    assert est.bias == "upper"
    with pytest.raises(ValueError):
        ConstantEstimate(1.0, "guess", 64, False)
    with pytest.raises(ValueError):
        ConstantEstimate(math.inf, "sup-estimate", 64, False)


def test_sup_estimates_monotone_in_grid(linf, xmu12, hexagon):
    for space in (linf, xmu12, hexagon):
        james_vals = [james_direct(space, n).value for n in (64, 128, 256)]
        assert all(b >= a - 1e-10 for a, b in zip(james_vals, james_vals[1:]))
        rect_vals = [rect_constant(space, n).value for n in (64, 128, 256)]
        assert all(b >= a - 1e-10 for a, b in zip(rect_vals, rect_vals[1:]))
