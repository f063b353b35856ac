import math

import numpy as np
import pytest

from banachgeo.dw import (
    DwResult,
    Weights,
    dw_b,
    dw_b_direct,
    dw_direct,
    dw_general,
    dw_i,
    dw_objective,
    dw_s,
    ms_b,
    ms_objective,
    psi_inf,
    tform_objective,
)
from banachgeo.moduli import ConstantEstimate
from banachgeo.spaces import Lp, XMu

SQ2 = math.sqrt(2.0)
W11 = Weights(1.0, 1.0)
W21 = Weights(2.0, 1.0)


def revalue(space, result, w=W11, objective=None):
    """Re-evaluate a result at its witness; must reproduce the estimate."""
    u, v, t_or_s = result.witness
    if result.method == "t_form":
        return tform_objective(space, w, u.vec, v.vec, t_or_s)
    obj = objective or (lambda x, y: dw_objective(space, w, x, y))
    return obj(u.vec, t_or_s * v.vec)


# ---------------------------------------------------------------------------
# objectives


def test_dw_objective_antipodal_is_weight_sum(l2, linf):
    x = np.array([0.7, -0.3])
    for space in (l2, linf):
        assert dw_objective(space, W21, x, -x) == pytest.approx(3.0, rel=1e-14)
        # for y = -s*x the value is 2*(alpha + beta*s)/(1 + s)
        assert dw_objective(space, W21, x, -2.5 * x) == pytest.approx(
            2.0 * (2.0 + 2.5) / 3.5, rel=1e-14
        )
        assert ms_objective(space, x, -x) == 1.0


def test_objective_validation(l2):
    x = np.array([1.0, 0.0])
    with pytest.raises(ValueError):
        dw_objective(l2, W11, x, np.zeros(2))
    with pytest.raises(ValueError):
        dw_objective(l2, W11, np.zeros(2), x)
    with pytest.raises(ValueError):
        dw_objective(l2, W11, x, x)
    with pytest.raises(ValueError):
        ms_objective(l2, x, x)


def test_tform_matches_ratio_at_euclidean_optimum(l2):
    # at u = e1, v = e2, the inner minimum over t of the unit-weight t-form
    # is ||u+v|| / min ||(1-t)u + t v|| = sqrt(2) / (sqrt(2)/2) = 2
    u, v = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    assert tform_objective(l2, W11, u, v, 0.5) == pytest.approx(2.0, abs=1e-12)


def test_weights_validation():
    for bad in (0.0, -1.0, math.inf, math.nan):
        with pytest.raises(ValueError):
            Weights(bad, 1.0)
        with pytest.raises(ValueError):
            Weights(1.0, bad)


def test_param_validation(l2):
    with pytest.raises(ValueError):
        dw_general(l2, W11, 32)
    with pytest.raises(ValueError):
        dw_direct(l2, W11, 128, s_points=8)
    with pytest.raises(ValueError):
        DwResult(ConstantEstimate(1.0, "sup-estimate", 64, True), None, "guess")


# ---------------------------------------------------------------------------
# known values


def test_dw_euclidean_is_two(l2):
    assert dw_general(l2, W11, 256).estimate.value == pytest.approx(2.0, abs=0.01)
    assert dw_direct(l2, W11, 256).estimate.value == pytest.approx(2.0, abs=0.02)


def test_dw_sup_norm_is_doubled_weight_sum(linf, l1):
    for space in (linf, l1):
        for w in (W11, W21, Weights(0.5, 3.0)):
            target = 2.0 * (w.alpha + w.beta)
            assert dw_general(space, w, 256).estimate.value == pytest.approx(
                target, abs=0.02
            )
    assert dw_direct(linf, W21, 256).estimate.value == pytest.approx(6.0, abs=0.02)


def test_dw_b_values(l2, linf, hexagon):
    # Euclidean: over perpendicular pairs the optimum is sqrt(2(a^2+b^2))
    assert dw_b(l2, W11, 256).estimate.value == pytest.approx(2.0, abs=0.02)
    assert dw_b_direct(l2, W21, 256).estimate.value == pytest.approx(
        math.sqrt(10.0), abs=0.02
    )
    # square norm: max{2*alpha, alpha + 2*beta}
    for w, target in ((W11, 3.0), (W21, 4.0), (Weights(1.0, 2.0), 5.0),
                      (Weights(0.5, 3.0), 6.5)):
        assert dw_b(linf, w, 256).estimate.value == pytest.approx(target, abs=0.02)
    assert dw_b(hexagon, W11, 256).estimate.value == pytest.approx(2.25, abs=0.02)


def test_dw_s_values(l2, linf):
    assert dw_s(l2, 256).estimate.value == pytest.approx(2.0, abs=0.02)
    assert dw_s(linf, 256).estimate.value == pytest.approx(1.0 + SQ2, abs=0.02)


def test_dw_i_values(l2, linf):
    assert dw_i(l2, 128).estimate.value == pytest.approx(2.0, abs=0.02)
    val = dw_i(linf, 128).estimate.value
    assert 2.0 - 0.02 <= val <= 2.25 + 0.02


def test_ms_b_values(l2, linf, xmu12, hexagon):
    assert ms_b(l2, 256).estimate.value == pytest.approx(SQ2, abs=0.02)
    for space in (l2, linf, xmu12, hexagon):
        val = ms_b(space, 128).estimate.value
        assert 1.0 - 0.01 <= val <= 2.0 + 1e-6


def test_psi_inf_universal(l2, l1, linf, xmu12):
    for space in (l2, l1, linf, xmu12):
        assert psi_inf(space, 128).estimate.value == pytest.approx(2.0, abs=0.02)


# ---------------------------------------------------------------------------
# structural invariants


def test_witness_reproducibility(l2, linf, xmu12):
    for space in (l2, linf, xmu12):
        for res in (dw_general(space, W21, 128), dw_direct(space, W21, 128),
                    dw_b(space, W21, 128), dw_b_direct(space, W21, 128)):
            assert abs(revalue(space, res, W21) - res.estimate.value) <= 1e-9
        for res in (dw_s(space, 128), dw_i(space, 128)):
            assert abs(revalue(space, res) - res.estimate.value) <= 1e-9
        res = ms_b(space, 128)
        assert abs(
            revalue(space, res, objective=lambda x, y: ms_objective(space, x, y))
            - res.estimate.value
        ) <= 1e-9


def test_weight_scaling_exact(l2, linf, xmu12):
    for space in (l2, linf, xmu12):
        for c in (2.0, 3.0):
            base = dw_general(space, W21, 128).estimate.value
            scaled = dw_general(
                space, Weights(c * W21.alpha, c * W21.beta), 128
            ).estimate.value
            assert abs(scaled - c * base) <= 1e-9 * max(1.0, scaled)
            base_b = dw_b(space, W21, 128).estimate.value
            scaled_b = dw_b(
                space, Weights(c * W21.alpha, c * W21.beta), 128
            ).estimate.value
            assert abs(scaled_b - c * base_b) <= 1e-9 * max(1.0, scaled_b)


def test_grid_monotonicity(l2, l1, linf):
    for space in (l2, l1, linf):
        vals = [dw_general(space, W11, n).estimate.value for n in (64, 128, 256)]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
        vals = [dw_b(space, W11, n).estimate.value for n in (64, 128, 256)]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


def test_constrained_below_unconstrained(l2, linf, hexagon):
    for space in (l2, linf, hexagon):
        full = dw_general(space, W21, 128).estimate.value
        assert dw_b(space, W21, 128).estimate.value <= full + 0.02


def test_determinism(xmu12):
    a = dw_general(xmu12, W21, 128)
    b = dw_general(xmu12, W21, 128)
    assert a.estimate.value == b.estimate.value
    np.testing.assert_array_equal(a.witness[0].vec, b.witness[0].vec)
    np.testing.assert_array_equal(a.witness[1].vec, b.witness[1].vec)
    assert a.witness[2] == b.witness[2]


def test_cross_method_agreement_fast(xmu12, hexagon):
    for space in (xmu12, hexagon):
        t = dw_general(space, W21, 128).estimate.value
        d = dw_direct(space, W21, 128).estimate.value
        assert abs(t - d) <= 0.02
        tb = dw_b(space, W21, 128).estimate.value
        db = dw_b_direct(space, W21, 128).estimate.value
        assert abs(tb - db) <= 0.02


def test_xmu_family_interpolates():
    # dw grows with mu between the Euclidean and square extremes
    vals = [dw_general(XMu(m), W11, 128).estimate.value for m in (1.05, 1.2, 1.35)]
    assert all(b >= a - 1e-9 for a, b in zip(vals, vals[1:]))
    assert 2.0 - 0.02 <= vals[0] <= 4.0 + 0.02
    hi = dw_general(Lp(math.inf), W11, 128).estimate.value
    assert vals[-1] <= hi + 0.02
