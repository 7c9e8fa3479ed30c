import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wbweno.grid import BoundarySpec, build_grid
from wbweno.models import LinearTransport, ShallowWater, get_bathymetry
from wbweno.schemes import NumericalError, SchemeConfig, SemiDiscretization
from wbweno.testcases import get_case, make_scheme
from wbweno.time_integration import (MassTracker, StepAbort, TimeConfig, compute_dt, parse_dt_rule, run,
                                     tvd_rk3_step)

from oracles import rk3_amplification


def test_zero_rhs_is_identity():
    U = np.random.default_rng(0).normal(size=(2, 9))
    np.testing.assert_array_equal(tvd_rk3_step(U, np.zeros_like, 0.1), U)


@settings(max_examples=100, deadline=None)
@given(st.floats(-3, 1), st.floats(1e-3, 1.0))
def test_stability_polynomial(lam, dt):
    U = np.array([[1.0, -2.5]])
    got = tvd_rk3_step(U, lambda V: lam * V, dt)
    np.testing.assert_allclose(got, rk3_amplification(lam * dt) * U, rtol=1e-14, atol=1e-15)


def test_stage_failures_report_stage():
    calls = []

    def rhs(V):
        calls.append(1)
        return np.full_like(V, np.inf) if len(calls) == 2 else V

    with pytest.raises(StepAbort) as exc:
        tvd_rk3_step(np.ones((1, 3)), rhs, 0.1)
    assert exc.value.stage == 2
    with pytest.raises(ValueError):
        tvd_rk3_step(np.ones((1, 3)), rhs, 0.0)


def test_compute_dt_examples():
    lin = LinearTransport()
    assert compute_dt(np.ones((1, 5)), lin, 0.06, TimeConfig()) == pytest.approx(0.03, rel=1e-15)
    assert compute_dt(np.ones((1, 5)), lin, 0.01, TimeConfig(dt_rule="dx53")) == pytest.approx(10 ** (-10 / 3),
                                                                                                rel=1e-14)
    U = np.array([[2.0], [2.5]])
    a = 1.25 + np.sqrt(9.81 * 2)
    assert compute_dt(U, ShallowWater(), 0.1, TimeConfig(cfl=0.5)) == pytest.approx(0.05 / a, rel=1e-15)
    assert compute_dt(U, ShallowWater(), 0.1, TimeConfig(dt_rule="fixed", dt_fixed=1e-3)) == 1e-3


class _Burgers(LinearTransport):
    def max_speed(self, U):
        return float(np.max(np.abs(U)))


def test_compute_dt_zero_speed_raises():
    with pytest.raises(ValueError):
        compute_dt(np.array([[0.0]]), _Burgers(), 0.1, TimeConfig())


def test_time_config_validation_and_parsing():
    for bad in (dict(cfl=0), dict(cfl=1.5), dict(t_final=-1), dict(dt_rule="x"), dict(dt_rule="fixed")):
        with pytest.raises(ValueError):
            TimeConfig(**bad)
    assert parse_dt_rule("cfl") == ("cfl", None)
    assert parse_dt_rule(" dx53 ") == ("dx53", None)
    assert parse_dt_rule("fixed:0.001") == ("fixed", 0.001)
    for bad in ("fixed:", "fixed:-1", "fixed:abc", "rk"):
        with pytest.raises(ValueError):
            parse_dt_rule(bad)
    assert TimeConfig(dt_rule="fixed", dt_fixed=0.5).describe() == "fixed:0.5"


def _linear_setup(n=50, flat=True):
    g = build_grid(-1, 1, n)
    H = get_bathymetry("flat" if flat else "identity")
    d = SemiDiscretization(LinearTransport(), g, H, SchemeConfig(), BoundarySpec())
    return g, d


def test_zero_final_time_returns_initial_field():
    g, d = _linear_setup()
    U0 = np.sin(np.pi * g.x)[None, :]
    res = run(U0, d, LinearTransport(), g.dx, TimeConfig(0.0))
    np.testing.assert_array_equal(res.U, U0)
    assert res.steps == 0 and res.t == 0.0


def test_final_time_hit_exactly_and_mass_series_length():
    g, d = _linear_setup()
    U0 = np.sin(np.pi * g.x)[None, :]
    tr = MassTracker(g.dx)
    res = run(U0, d, LinearTransport(), g.dx, TimeConfig(0.37), [tr])
    assert res.t == 0.37
    assert sum(res.dts) == pytest.approx(0.37, rel=1e-14)
    assert len(tr.series) == res.steps + 1
    assert max(res.dts[:-1]) == pytest.approx(0.5 * g.dx)


def test_half_runs_compose_with_fixed_dt():
    g, d = _linear_setup(flat=False)
    U0 = (1 + 0.5 * np.sin(np.pi * g.x))[None, :]
    # binary fractions keep the step times exact
    cfg = dict(dt_rule="fixed", dt_fixed=1 / 64)
    full = run(U0, d, LinearTransport(), g.dx, TimeConfig(0.5, **cfg))
    half = run(U0, d, LinearTransport(), g.dx, TimeConfig(0.25, **cfg))
    two = run(half.U, d, LinearTransport(), g.dx, TimeConfig(0.25, **cfg))
    assert full.steps == 2 * half.steps == 32
    np.testing.assert_array_equal(two.U, full.U)


def test_deterministic():
    case = get_case("sw-subcritical-pert")
    g = case.grid(60)
    d = SemiDiscretization(case.model, g, case.H, make_scheme(case, "wb", 3), case.boundary_spec())
    U0 = case.initial(g.x)
    a = run(U0, d, case.model, g.dx, TimeConfig(0.05), extend=d.extend_field)
    b = run(U0, d, case.model, g.dx, TimeConfig(0.05), extend=d.extend_field)
    assert a.U.tobytes() == b.U.tobytes() and a.dts == b.dts


def test_advection_max_norm_does_not_grow():
    g, d = _linear_setup(100)
    U0 = np.exp(-20 * g.x ** 2)[None, :]
    norms = []
    run(U0, d, LinearTransport(), g.dx, TimeConfig(0.8), [lambda t, U: norms.append(np.abs(U).max())])
    assert np.all(np.diff(norms) <= 1e-14)


def test_inadmissible_state_aborts_with_step_index():
    sw = ShallowWater()
    g = build_grid(0, 1, 20)
    d = SemiDiscretization(sw, g, get_bathymetry("flat"), SchemeConfig())
    U0 = np.stack([np.where(g.x < 0.5, 1.0, 1e-6), np.zeros(20)])
    U0[1, 9:11] = [3.0, -3.0]
    with pytest.raises(StepAbort) as exc:
        run(U0, d, sw, g.dx, TimeConfig(1.0, dt_rule="fixed", dt_fixed=0.01))
    assert exc.value.step >= 1


def test_numerical_error_wrapped():
    def rhs(U):
        raise NumericalError("boom")
    with pytest.raises(StepAbort, match="step 1"):
        run(np.ones((1, 4)), rhs, LinearTransport(), 0.1, TimeConfig(1.0))


def test_mass_tracker():
    tr = MassTracker(0.5)
    tr(0, np.array([[1.0, 1.0], [9.0, 9.0]]))
    tr(1, np.array([[1.0, 1.1], [0.0, 0.0]]))
    assert tr.series == [1.0, 1.05]
    assert tr.max_relative_deviation == pytest.approx(0.05)
    assert MassTracker(1.0).max_relative_deviation == 0.0
