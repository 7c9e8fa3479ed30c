import numpy as np
import pytest

from wbweno.grid import Bathymetry, build_grid
from wbweno.models import BurgersSource, ExtensionStatus, LinearTransport, ShallowWater, get_bathymetry
from wbweno.stationary_ode import (OdeSolverConfig, ResonanceError, extend_backward, extend_forward,
                                   extend_stencils, integrate_gap, numeric_profile, stationary_slope)

IDENT = get_bathymetry("identity")


def test_burgers_matches_closed_form():
    x = -0.2 + 0.01 * np.arange(4)
    fwd = extend_forward(BurgersSource(), IDENT, [1.0], x, OdeSolverConfig(8))
    assert fwd.status == ExtensionStatus.NUMERIC
    np.testing.assert_allclose(fwd.values[0], np.exp(x - x[0]), rtol=1e-10)
    bwd = extend_backward(BurgersSource(), IDENT, [1.0], x[::-1], OdeSolverConfig(8))
    np.testing.assert_allclose(bwd.values[0], np.exp(x[::-1] - x[-1]), rtol=1e-10)


def test_zero_source_gives_constant():
    flat = get_bathymetry("flat")
    x = np.linspace(0, 1, 6)
    ext = extend_forward(ShallowWater(), flat, [1.3, 0.4], x)
    np.testing.assert_array_equal(ext.values, np.array([[1.3] * 6, [0.4] * 6]))
    ext = extend_backward(BurgersSource(), flat, [2.0], x[::-1])
    np.testing.assert_array_equal(ext.values[0], 2.0)


def test_rk4_error_drops_by_sixteen():
    errs = []
    for K in (1, 2, 4):
        U, _ = integrate_gap(BurgersSource(), IDENT, np.array([[1.0]]), 0.0, 0.5, K)
        errs.append(abs(U[0, 0] - np.exp(0.5)))
    ratios = np.array(errs[:-1]) / np.array(errs[1:])
    assert np.all((ratios > 12) & (ratios < 20))


def test_round_trip():
    x = np.linspace(-0.5, -0.45, 6)
    fwd = extend_forward(ShallowWater(), get_bathymetry("bump"), [2.0, 2.5], x)
    back = extend_backward(ShallowWater(), get_bathymetry("bump"), fwd.values[:, -1], x[::-1])
    np.testing.assert_allclose(back.values[:, -1], [2.0, 2.5], rtol=1e-12)
    fwdb = extend_forward(BurgersSource(), IDENT, [0.7], np.linspace(0, 0.05, 6))
    backb = extend_backward(BurgersSource(), IDENT, fwdb.values[:, -1], np.linspace(0.05, 0, 6))
    assert backb.values[0, -1] == pytest.approx(0.7, rel=1e-12)


def test_sw_numeric_agrees_with_cubic():
    sw = ShallowWater()
    H = get_bathymetry("bump")
    x = np.linspace(-1.0, 1.0, 201)
    prof = numeric_profile(sw, H, [2.0, 2.5], x, 0)
    from wbweno.models import sw_invariants

    inv = sw_invariants(np.array([2.0, 2.5]), 0.0)
    exact = sw.profile(x, H, 2.5, inv.C2, "sub")
    np.testing.assert_allclose(prof, exact, rtol=1e-9)


def test_resonance_flagged():
    sw = ShallowWater()
    hc = np.cbrt(2.5 ** 2 / 9.81)
    slope, bad = stationary_slope(sw, np.array([[hc], [2.5]]), np.array([1.0]))
    assert bad[0] and np.all(slope == 0)
    slope, bad = stationary_slope(BurgersSource(), np.array([[0.0]]), np.array([1.0]))
    assert bad[0]
    with pytest.raises(ResonanceError):
        numeric_profile(BurgersSource(), IDENT, [0.0], np.linspace(0, 1, 3))


def test_blowup_flagged():
    # over a steep rise the supercritical depth grows until the flow is critical
    H = Bathymetry(lambda x: -5 * x, lambda x: np.full_like(x, -5.0))
    ext = extend_forward(ShallowWater(), H, [2.0, 2.5], np.linspace(0, 1, 11))
    assert ext.status == ExtensionStatus.NO_STATIONARY


def test_jumps_rejected():
    with pytest.raises(ValueError, match="jumps"):
        extend_forward(BurgersSource(), get_bathymetry("burgers-jump"), [1.0], np.linspace(-0.1, 0.1, 5))


def test_stencil_extension_consistent_with_single_integrations():
    g = build_grid(-1, 1, 20)
    xe = g.x_ext(2)
    U = np.exp(g.x)[None, :] * 1.1
    cfg = OdeSolverConfig(6)
    ext = extend_stencils(LinearTransport(), IDENT, U, xe, 1, 2, cfg)
    i = 7
    fwd = extend_forward(LinearTransport(), IDENT, U[:, i], xe[i + 2:i + 5], cfg)
    np.testing.assert_array_equal(ext.values[0, i, 2:], fwd.values[0])
    bwd = extend_backward(LinearTransport(), IDENT, U[:, i], xe[i:i + 3][::-1], cfg)
    np.testing.assert_array_equal(ext.values[0, i, :3], bwd.values[0][::-1])


def test_substep_default():
    assert OdeSolverConfig().steps_for(1) == 12
    assert OdeSolverConfig().steps_for(2) == 20
    with pytest.raises(ValueError):
        OdeSolverConfig(0)
