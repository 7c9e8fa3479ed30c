"""Three-stage TVD Runge-Kutta time stepping with CFL-based step control."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .models import BalanceLaw
from .schemes import NumericalError

__all__ = [
    "TimeConfig",
    "StepAbort",
    "tvd_rk3_step",
    "compute_dt",
    "run",
    "RunResult",
    "MassTracker",
    "parse_dt_rule",
]

DT_RULES = ("cfl", "dx53", "fixed")


class StepAbort(RuntimeError):
    """A Runge-Kutta stage produced a non-finite or inadmissible state."""

    def __init__(self, msg, step=None, stage=None):
        super().__init__(msg)
        self.step = step
        self.stage = stage


@dataclass(frozen=True)
class TimeConfig:
    t_final: float = 1.0
    cfl: float = 0.5
    dt_rule: str = "cfl"
    dt_fixed: float | None = None
    max_steps: int = 10_000_000

    def __post_init__(self):
        if not (0 < self.cfl <= 1):
            raise ValueError("cfl must lie in (0, 1]")
        if not self.t_final >= 0 or not math.isfinite(self.t_final):
            raise ValueError("t_final must be a finite non-negative time")
        if self.dt_rule not in DT_RULES:
            raise ValueError(f"dt_rule must be one of {DT_RULES}")
        if self.dt_rule == "fixed" and not (self.dt_fixed and self.dt_fixed > 0):
            raise ValueError("fixed dt rule needs dt_fixed > 0")

    def describe(self) -> str:
        if self.dt_rule == "fixed":
            return f"fixed:{self.dt_fixed!r}"
        return self.dt_rule


def parse_dt_rule(text: str) -> tuple[str, float | None]:
    """``cfl`` | ``dx53`` | ``fixed:<value>`` -> (rule, value)."""
    text = text.strip()
    if text in ("cfl", "dx53"):
        return text, None
    if text.startswith("fixed:"):
        try:
            v = float(text.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad fixed time step in {text!r}") from None
        if not v > 0:
            raise ValueError("fixed time step must be positive")
        return "fixed", v
    raise ValueError(f"unknown dt rule {text!r}; expected cfl, dx53 or fixed:<v>")


def tvd_rk3_step(U, rhs: Callable[[np.ndarray], np.ndarray], dt: float, check=None) -> np.ndarray:
    """One convex-combination TVD-RK3 step.

    ``check(U, stage)`` may raise on an inadmissible stage value; by default
    only finiteness is checked.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    U = np.asarray(U, dtype=float)

    def _ok(V, stage):
        if not np.all(np.isfinite(V)):
            raise StepAbort(f"non-finite values after RK stage {stage}", stage=stage)
        if check is not None:
            check(V, stage)
        return V

    U1 = _ok(U + dt * rhs(U), 1)
    U2 = _ok(0.75 * U + 0.25 * (U1 + dt * rhs(U1)), 2)
    return _ok(U / 3.0 + 2.0 / 3.0 * (U2 + dt * rhs(U2)), 3)


def compute_dt(U, model: BalanceLaw, dx: float, config: TimeConfig, U_ext=None) -> float:
    if config.dt_rule == "fixed":
        return float(config.dt_fixed)
    if config.dt_rule == "dx53":
        return dx ** (5.0 / 3.0)
    a = model.max_speed(U if U_ext is None else U_ext)
    if not a > 0:
        raise ValueError("maximum wave speed is zero; use a fixed time step")
    return config.cfl * dx / a


@dataclass
class MassTracker:
    """Series ``m_n = dx * sum_i U[component]_i`` after every accepted step."""

    dx: float
    component: int = 0
    series: list = field(default_factory=list)

    def __call__(self, t, U):
        self.series.append(self.dx * float(np.sum(U[self.component])))

    @property
    def max_relative_deviation(self) -> float:
        m = np.asarray(self.series)
        if m.size == 0:
            return 0.0
        return float(np.max(np.abs(m - m[0])) / abs(m[0]))


@dataclass
class RunResult:
    U: np.ndarray
    t: float
    steps: int
    dts: list


def run(U0, rhs, model: BalanceLaw, dx: float, config: TimeConfig,
        callbacks: Sequence[Callable[[float, np.ndarray], None]] = (), extend=None) -> RunResult:
    """Integrate ``dU/dt = rhs(U)`` from 0 to ``config.t_final``.

    Callbacks get ``(t, U)`` once for the initial state and after every
    accepted step. ``extend`` (optional) maps a field to its ghost-extended
    version, so the CFL speed includes the ghost nodes.
    """
    U = np.array(U0, dtype=float, copy=True)
    t = 0.0
    for cb in callbacks:
        cb(t, U)
    steps = 0
    dts = []

    def check(V, stage):
        if not model.admissible(V):
            raise StepAbort(f"inadmissible state after RK stage {stage}", stage=stage)

    while t < config.t_final:
        if steps >= config.max_steps:
            raise StepAbort(f"exceeded {config.max_steps} steps", step=steps)
        dt = compute_dt(U, model, dx, config, extend(U) if extend is not None else None)
        last = t + dt >= config.t_final or math.isclose(t + dt, config.t_final, rel_tol=1e-14, abs_tol=0)
        if last:
            dt = config.t_final - t
        try:
            U = tvd_rk3_step(U, rhs, dt, check)
        except StepAbort as exc:
            raise StepAbort(f"step {steps + 1} (t={t:.6g}): {exc}", step=steps + 1, stage=exc.stage) from exc
        except NumericalError as exc:
            raise StepAbort(f"step {steps + 1} (t={t:.6g}): {exc}", step=steps + 1) from exc
        steps += 1
        dts.append(dt)
        t = config.t_final if last else t + dt
        for cb in callbacks:
            cb(t, U)
    return RunResult(U, t, steps, dts)
