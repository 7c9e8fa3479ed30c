"""Named numerical experiments: model, bathymetry, domain, data, boundaries."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field, replace
from math import comb
from pathlib import Path
from typing import Callable

import numpy as np

from .grid import Bathymetry, BoundarySpec, Grid, build_grid
from .models import (BalanceLaw, BurgersSource, LinearTransport, Regime, ShallowWater, G_DEFAULT,
                     get_bathymetry, sw_invariants)
from .schemes import SchemeConfig, SemiDiscretization, scheme_label
from .time_integration import MassTracker, RunResult, TimeConfig, run
from .weno import ReconstructionConfig

__all__ = [
    "TestCase",
    "CASE_NAMES",
    "get_case",
    "ic_linear_smooth",
    "ic_linear_moving_jump",
    "exact_linear_smooth",
    "exact_linear_moving_jump",
    "poly_p",
    "make_scheme",
    "simulate",
    "reference_solution",
]

CASE_NAMES = (
    "linear-smooth",
    "linear-jump",
    "burgers-stationary",
    "burgers-osc",
    "burgers-osc-pert",
    "burgers-jump",
    "burgers-jump-pert",
    "sw-subcritical",
    "sw-subcritical-pert",
    "sw-transcritical-jump",
    "sw-transcritical-jump-pert",
    "sw-mass",
)


@dataclass
class TestCase:
    __test__ = False  # not a pytest class

    name: str
    model: BalanceLaw
    H: Bathymetry
    domain: tuple[float, float]
    initial: Callable[[np.ndarray], np.ndarray]
    t_final: float
    n_cells: int = 200
    exact: Callable[[np.ndarray, float], np.ndarray] | None = None
    equilibrium: Callable[[np.ndarray], np.ndarray] | None = None
    boundary: str = "stationary"  # or "free"
    schemes: tuple[str, ...] = ("weno", "wb")
    reference_scheme: str = "wb"
    track_mass: bool = False
    description: str = ""
    params: dict = field(default_factory=dict)

    def grid(self, n_cells: int | None = None) -> Grid:
        return build_grid(self.domain[0], self.domain[1], n_cells or self.n_cells)

    def boundary_spec(self) -> BoundarySpec:
        if self.boundary == "free":
            return BoundarySpec("free", "free")
        sampler = self.equilibrium
        if sampler is None and self.exact is not None:
            sampler = lambda x: self.exact(x, 0.0)  # noqa: E731
        return BoundarySpec("stationary", "stationary", sampler)

    def exact_at(self, x, t):
        if self.exact is not None:
            return self.exact(x, t)
        return None


# --------------------------------------------------------------------------
# scalar data


def poly_p(x):
    """Degree-11 polynomial with p(0)=0, p(1)=1 and vanishing derivatives 1..5 at both ends."""
    x = np.asarray(x, dtype=float)
    s = np.zeros_like(x)
    for k in range(6):
        s = s + (-1) ** k * comb(5 + k, k) * (x - 1.0) ** k
    return x ** 6 * s


def ic_linear_smooth(x):
    x = np.asarray(x, dtype=float)
    return np.where(x < 0, 0.0, np.where(x > 1, 1.0, poly_p(np.clip(x, 0.0, 1.0))))


def exact_linear_smooth(x, t):
    return (np.exp(t) * ic_linear_smooth(np.asarray(x, dtype=float) - t))[None, :]


def ic_linear_moving_jump(x):
    x = np.asarray(x, dtype=float)
    return np.where(x < 0, 4.0 * np.exp(x), np.exp(x))


def exact_linear_moving_jump(x, t):
    x = np.asarray(x, dtype=float)
    return np.where(x < t, 4.0 * np.exp(x), np.exp(x))[None, :]


def _exp_of_H(H):
    return lambda x: np.exp(H.eval(x))[None, :]


def _gaussian_bump(base, amp, center, width=200.0):
    def f(x):
        x = np.asarray(x, dtype=float)
        out = base(x).copy()
        out[0] += amp * np.exp(-width * (x - center) ** 2)
        return out
    return f


def _square_pulse(base, amp, a, b):
    def f(x):
        x = np.asarray(x, dtype=float)
        out = base(x).copy()
        out[0] += np.where((x >= a) & (x <= b), amp, 0.0)
        return out
    return f


def _stationary(sampler):
    return lambda x, t: sampler(x)


# --------------------------------------------------------------------------
# shallow water equilibria


def _sw_equilibrium(sw: ShallowWater, H: Bathymetry, q: float, x_anchor: float, h_anchor: float,
                    regime, H_anchor: float | None = None):
    Ha = float(H.eval(np.array([x_anchor]))[0]) if H_anchor is None else H_anchor
    inv = sw_invariants(np.array([h_anchor, q]), Ha, sw.g)
    return lambda x: sw.profile(x, H, inv.C1, inv.C2, regime)


def _transcritical_regime(x):
    return Regime.SUPER if x > 0 else Regime.SUB


def get_case(name: str, g: float = G_DEFAULT, pert_center: float = -0.5) -> TestCase:
    """Build a registered case; ``g`` applies to shallow water cases only.

    ``pert_center`` is the centre of the Gaussian perturbations of the two
    perturbed Burgers cases.
    """
    if name not in CASE_NAMES:
        raise KeyError(f"unknown case {name!r}; available: {', '.join(CASE_NAMES)}")
    if name == "linear-smooth":
        return TestCase(name, LinearTransport(), get_bathymetry("identity"), (-2.0, 10.0),
                        lambda x: ic_linear_smooth(x)[None, :], 1.0, 100,
                        exact=exact_linear_smooth, equilibrium=None, boundary="free",
                        description="smooth profile transported and amplified by the source",
                        schemes=("weno", "wb"))
    if name == "linear-jump":
        return TestCase(name, LinearTransport(), get_bathymetry("identity"), (-1.0, 3.0),
                        lambda x: ic_linear_moving_jump(x)[None, :], 1.0, 200,
                        exact=exact_linear_moving_jump,
                        equilibrium=lambda x: np.exp(np.asarray(x, dtype=float))[None, :],
                        description="jump linking two stationary solutions, moving at speed 1")
    burgers = BurgersSource()
    if name == "burgers-stationary":
        H = get_bathymetry("identity")
        eq = _exp_of_H(H)
        return TestCase(name, burgers, H, (-1.0, 1.0), eq, 8.0, 200, exact=_stationary(eq), equilibrium=eq,
                        description="stationary solution exp(x)")
    if name in ("burgers-osc", "burgers-osc-pert"):
        H = get_bathymetry("oscillatory")
        eq = _exp_of_H(H)
        if name == "burgers-osc":
            return TestCase(name, burgers, H, (-1.0, 1.0), eq, 1.0, 100, exact=_stationary(eq),
                            equilibrium=eq, description="stationary solution over an oscillatory H")
        return TestCase(name, burgers, H, (-1.0, 1.0), _gaussian_bump(eq, 0.1, pert_center), 1.0, 100,
                        equilibrium=eq, params={"pert_center": pert_center},
                        description="Gaussian perturbation of the oscillatory-H equilibrium")
    if name in ("burgers-jump", "burgers-jump-pert"):
        H = get_bathymetry("burgers-jump")
        eq = _exp_of_H(H)
        if name == "burgers-jump":
            return TestCase(name, burgers, H, (-1.0, 1.0), eq, 1.0, 300, exact=_stationary(eq), equilibrium=eq,
                            schemes=("weno", "wb", "wb1"), description="stationary solution over a jump in H")
        return TestCase(name, burgers, H, (-1.0, 1.0), _gaussian_bump(eq, 0.3, pert_center), 0.5, 300,
                        equilibrium=eq, schemes=("weno", "wb", "wb1"), params={"pert_center": pert_center},
                        description="Gaussian perturbation crossing the jump in H")

    sw = ShallowWater(g)
    if name in ("sw-subcritical", "sw-subcritical-pert"):
        H = get_bathymetry("bump")
        eq = _sw_equilibrium(sw, H, 2.5, -3.0, 2.0, Regime.SUB)
        if name == "sw-subcritical":
            return TestCase(name, sw, H, (-3.0, 3.0), eq, 4.0, 100, exact=_stationary(eq), equilibrium=eq,
                            schemes=("weno", "wb", "wbwar", "wb1", "wbmc"),
                            description="subcritical flow over a bump")
        return TestCase(name, sw, H, (-3.0, 3.0), _square_pulse(eq, 0.02, -0.4, -0.3), 0.15, 200,
                        equilibrium=eq, schemes=("weno", "wb", "wbwar", "wb1", "wbmc"),
                        reference_scheme="weno", description="small depth pulse over the subcritical flow")
    if name in ("sw-transcritical-jump", "sw-transcritical-jump-pert"):
        H = get_bathymetry("sw-jump")
        hc = np.cbrt(2.5 ** 2 / g)
        eq = _sw_equilibrium(sw, H, 2.5, 0.0, hc, _transcritical_regime)
        if name == "sw-transcritical-jump":
            return TestCase(name, sw, H, (-3.0, 3.0), eq, 4.0, 100, exact=_stationary(eq), equilibrium=eq,
                            schemes=("weno", "wb", "wb1"),
                            description="transcritical flow over a discontinuous bottom")
        return TestCase(name, sw, H, (-3.0, 3.0), _square_pulse(eq, 0.02, -0.4, -0.3), 0.2, 300,
                        equilibrium=eq, schemes=("weno", "wb", "wb1"),
                        description="depth pulse crossing the bottom discontinuity")
    # sw-mass
    H = get_bathymetry("parabolic-hump")
    eq = _sw_equilibrium(sw, H, 1.0, 10.0, 1.0, Regime.SUB)
    return TestCase(name, sw, H, (-10.0, 30.0), _square_pulse(eq, 0.5, 5.0, 7.0), 2.5, 200,
                    equilibrium=eq, schemes=("weno", "wb", "wbwar", "wb1", "wbmc"), track_mass=True,
                    description="large pulse over subcritical flow; total mass tracking")


# --------------------------------------------------------------------------
# running


def make_scheme(case: TestCase, family: str = "wb", order: int = 3, weights: str = "nonlinear",
                splitting: str = "glf", singular: str | None = None, extension: str = "exact",
                substeps: int | None = None) -> SchemeConfig:
    """Scheme for a case; the jump source rule defaults to upwind for scalars, centered for systems."""
    from .stationary_ode import OdeSolverConfig

    if singular is None:
        singular = "upwind" if case.model.n_comp == 1 else "centered"
    ref = case.equilibrium
    if ref is None and family in ("wb1", "wbsingle"):
        ref = lambda x: np.zeros((case.model.n_comp, np.size(x)))  # noqa: E731
    return SchemeConfig(family, splitting, ReconstructionConfig.for_order(order, weights), singular, extension,
                        OdeSolverConfig(substeps), ref if family in ("wb1", "wbsingle") else None)


@dataclass
class Simulation:
    case: TestCase
    scheme: SchemeConfig
    grid: Grid
    result: RunResult
    mass: MassTracker | None

    @property
    def U(self):
        return self.result.U


def simulate(case: TestCase, scheme: SchemeConfig, n_cells: int | None = None,
             time: TimeConfig | None = None, callbacks=(), U0=None) -> Simulation:
    grid = case.grid(n_cells)
    disc = SemiDiscretization(case.model, grid, case.H, scheme, case.boundary_spec())
    time = time or TimeConfig(case.t_final)
    mass = MassTracker(grid.dx) if case.track_mass or case.model.n_comp == 2 else None
    cbs = list(callbacks) + ([mass] if mass is not None else [])
    U = case.initial(grid.x) if U0 is None else U0
    res = run(U, disc, case.model, grid.dx, time, cbs, extend=disc.extend_field)
    return Simulation(case, scheme, grid, res, mass)


def _cache_dir() -> Path:
    return Path(os.environ.get("WBWENO_CACHE", Path.home() / ".cache" / "wbweno"))


def reference_solution(case: TestCase, n_cells: int, order: int = 3, factor: int = 10,
                       t_final: float | None = None, cache: bool = True) -> np.ndarray:
    """Fine-mesh solution (``factor * n_cells`` cells) sampled at the coarse nodes.

    Runs ``case.reference_scheme`` with third order nonlinear weights unless
    ``order`` says otherwise; cached on disk under ``$WBWENO_CACHE``.
    """
    t_final = case.t_final if t_final is None else t_final
    scheme = make_scheme(case, case.reference_scheme, order)
    key = f"{case.name}|{scheme_label(scheme)}|{n_cells}x{factor}|t={t_final!r}|{case.params}"
    if isinstance(case.model, ShallowWater):
        key += f"|g={case.model.g!r}"
    fname = hashlib.sha1(key.encode()).hexdigest()[:16] + ".npz"
    path = _cache_dir() / fname
    if cache and path.exists():
        with np.load(path) as data:
            return data["U"]
    sim = simulate(case, scheme, factor * n_cells, TimeConfig(t_final))
    fine_x = sim.grid.x
    coarse_x = case.grid(n_cells).x
    U = np.stack([np.interp(coarse_x, fine_x, comp) for comp in sim.U])
    if cache:
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savez(path, U=U, key=key)
    return U


def with_params(case: TestCase, **changes) -> TestCase:
    return replace(case, **changes)
