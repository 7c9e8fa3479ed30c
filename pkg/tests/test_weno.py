from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from wbweno.weno import ReconstructionConfig, nonlinear_weights, reconstruct_left, reconstruct_right

from oracles import cell_averages, js_indicator_oracle, linear_weno_oracle, weno_oracle

LIN = {k: ReconstructionConfig(k, "linear") for k in (1, 2)}
NONLIN = {k: ReconstructionConfig(k) for k in (1, 2)}

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


def windows(k):
    return arrays(np.float64, 2 * k + 1, elements=finite)


# ---- config ---------------------------------------------------------------


def test_config_validation():
    with pytest.raises(ValueError):
        ReconstructionConfig(3)
    with pytest.raises(ValueError):
        ReconstructionConfig(1, "quadratic")
    with pytest.raises(ValueError):
        ReconstructionConfig(1, "nonlinear", 0.0)
    assert ReconstructionConfig.for_order(5).k == 2
    assert ReconstructionConfig.for_order(3, "linear").weight_mode == "linear"
    with pytest.raises(ValueError):
        ReconstructionConfig.for_order(4)


def test_window_length_checked():
    with pytest.raises(ValueError):
        reconstruct_left(np.zeros(4), NONLIN[1])


# ---- frozen values from the primitive-interpolation oracle ---------------


def test_frozen_linear_values():
    # oracle values: 1/6 and 9/10
    assert float(reconstruct_left(np.array([1.0, 0.0, 1.0]), LIN[1])) == pytest.approx(1 / 6, abs=1e-15)
    assert float(reconstruct_left(np.array([1.0, 2.0, 0.0, 3.0, 1.0]), LIN[2])) == pytest.approx(0.9, abs=1e-15)
    assert linear_weno_oracle([1, 0, 1], 1) == Fraction(1, 6)


def test_frozen_nonlinear_values():
    # produced by the indicator-integration oracle
    cases = [
        (1, [1.0, 0.2, -0.7], -0.2277638527398578),
        (2, [0.3, 1.1, -0.4, 2.0, 0.7], -0.15158650988447483),
        (2, [1.0, 1.0, 1.0, 5.0, 5.0], 1.0000000000000204),
        (1, [0.0, 1.0, 1.0], 1.00000000000025),
    ]
    for k, w, expected in cases:
        got = float(reconstruct_left(np.array(w), NONLIN[k]))
        assert got == pytest.approx(expected, rel=1e-13, abs=1e-14)


@pytest.mark.parametrize("k", [1, 2])
def test_linear_weights_exact_on_polynomial_averages(k):
    rng = np.random.default_rng(3)
    for _ in range(20):
        coeffs = [Fraction(int(c), 7) for c in rng.integers(-20, 20, size=2 * k + 1)]
        avgs = cell_averages(coeffs, range(-k, k + 1))
        val = sum(c * Fraction(1, 2) ** n for n, c in enumerate(coeffs))
        assert linear_weno_oracle(avgs, k) == val
        got = float(reconstruct_left(np.array([float(a) for a in avgs]), LIN[k]))
        assert got == pytest.approx(float(val), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("k", [1, 2])
def test_linear_mode_matches_oracle_on_random_data(k):
    rng = np.random.default_rng(11)
    for _ in range(50):
        w = rng.normal(size=2 * k + 1)
        expected = float(linear_weno_oracle([Fraction(v) for v in w], k))
        assert float(reconstruct_left(w, LIN[k])) == pytest.approx(expected, rel=1e-12, abs=1e-13)


@pytest.mark.parametrize("k", [1, 2])
def test_nonlinear_matches_integration_oracle(k):
    rng = np.random.default_rng(5)
    for _ in range(50):
        w = rng.normal(size=2 * k + 1) * rng.choice([1e-3, 1.0, 50.0])
        assert float(reconstruct_left(w, NONLIN[k])) == pytest.approx(weno_oracle(w, k), rel=1e-10, abs=1e-12)


def test_indicators_from_weights():
    # weights computed by hand from the oracle's indicators
    w = np.array([0.3, 1.1, -0.4, 2.0, 0.7])
    betas = [js_indicator_oracle(w, 2, r) for r in range(3)]
    a = np.array([0.1, 0.6, 0.3]) / (1e-6 + np.array(betas)) ** 2
    np.testing.assert_allclose(nonlinear_weights(w, NONLIN[2]), a / a.sum(), rtol=1e-10)
    np.testing.assert_array_equal(nonlinear_weights(w, LIN[2]), [0.1, 0.6, 0.3])


# ---- properties -------------------------------------------------------------


@pytest.mark.parametrize("k", [1, 2])
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_weights_are_convex(k, data):
    w = data.draw(windows(k))
    om = nonlinear_weights(w, NONLIN[k])
    assert np.all(om >= 0)
    assert om.sum() == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("k", [1, 2])
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_shift_property(k, data):
    w = data.draw(windows(k))
    c = data.draw(finite)
    scale = max(1.0, np.abs(w).max(), abs(c))
    for cfg in (LIN[k], NONLIN[k]):
        lhs = reconstruct_left(w - c, cfg)
        rhs = reconstruct_left(w, cfg) - c
        assert abs(lhs - rhs) <= 1e-13 * scale


@pytest.mark.parametrize("k", [1, 2])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_right_is_mirror_of_left(k, data):
    w = data.draw(windows(k))
    assert reconstruct_right(w, NONLIN[k]) == reconstruct_left(w[::-1], NONLIN[k])


@pytest.mark.parametrize("k", [1, 2])
def test_constant_reproduced(k):
    for c in (0.0, 1.0, -3.5, 1e8):
        w = np.full(2 * k + 1, c)
        assert reconstruct_left(w, NONLIN[k]) == pytest.approx(c, rel=1e-15)


def test_batched_shapes():
    w = np.random.default_rng(0).normal(size=(2, 7, 5))
    out = reconstruct_left(w, NONLIN[2])
    assert out.shape == (2, 7)
    assert out[1, 3] == reconstruct_left(w[1, 3], NONLIN[2])


@pytest.mark.parametrize("k,order", [(1, 3), (2, 5)])
def test_nonlinear_order_on_smooth_averages(k, order):
    # cell averages of sin on refined meshes; interface error should fall at the design order
    errs = []
    for n in (40, 80, 160):
        dx = 1.0 / n
        xc = 0.3 + dx * np.arange(-k, k + 1)
        avg = (np.cos(xc - dx / 2) - np.cos(xc + dx / 2)) / dx
        errs.append(abs(float(reconstruct_left(avg, NONLIN[k])) - np.sin(0.3 + dx / 2)))
    rates = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert rates[-1] > order - 0.6


def test_right_reconstruction_targets_left_interface():
    # linear data: value at x_{i-1/2}
    w = np.array([0.0, 1.0, 2.0])
    assert float(reconstruct_right(w, LIN[1])) == pytest.approx(0.5)
    assert float(reconstruct_left(w, LIN[1])) == pytest.approx(1.5)
