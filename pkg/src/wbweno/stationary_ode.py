"""Numerical stationary solutions: RK4 integration of ``J(U) U' = S(U) H'``.

Used when the stationary solutions of a model are not available in closed
form, and as a cross-check of the closed forms. Every gap between two grid
coordinates is integrated with the same number of substeps placed from the
gap end points, so integrating the same gap from the same state always gives
bitwise identical results (whichever node the integration started from).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Bathymetry
from .models import BalanceLaw, ExtensionStatus, StationaryExtension

__all__ = [
    "OdeSolverConfig",
    "stationary_slope",
    "integrate_gap",
    "extend_forward",
    "extend_backward",
    "extend_stencils",
    "numeric_profile",
    "ResonanceError",
]


class ResonanceError(RuntimeError):
    """The flux Jacobian became singular (or the state left the admissible set)."""


@dataclass(frozen=True)
class OdeSolverConfig:
    substeps: int | None = None  # per gap; None -> 4 * (2k + 1)
    resonance_tol: float = 1e-12

    def __post_init__(self):
        if self.substeps is not None and self.substeps < 1:
            raise ValueError("substeps must be >= 1")

    def steps_for(self, k: int) -> int:
        return self.substeps if self.substeps is not None else 4 * (2 * k + 1)


def stationary_slope(model: BalanceLaw, U, Hx, resonance_tol: float = 1e-12):
    """``dU/dx = J(U)^-1 S(U) H'(x)``; returns ``(slope, bad)``.

    ``bad`` flags points where ``|det J| < tol * ||J||`` or the state is not
    admissible; the slope there is set to zero.
    """
    U = np.asarray(U, dtype=float)
    Hx = np.asarray(Hx, dtype=float)
    if model.n_comp == 2 and hasattr(model, "g"):
        h = U[0]
        pos = h > 0
        hs = np.where(pos, h, 1.0)
        J = model.jacobian(np.stack([hs, U[1]]))
    else:
        pos = np.ones(U.shape[1:], dtype=bool)
        J = model.jacobian(U)
    S = model.source(U) * Hx
    if model.n_comp == 1:
        det = J[..., 0, 0]
        norm = np.abs(det)
        bad = (np.abs(det) < resonance_tol * np.maximum(norm, 1e-300)) | (det == 0) | ~np.isfinite(det)
        with np.errstate(divide="ignore", invalid="ignore"):
            slope = S / np.where(bad, 1.0, det)
    elif model.n_comp == 2:
        a, b, c, d = J[..., 0, 0], J[..., 0, 1], J[..., 1, 0], J[..., 1, 1]
        det = a * d - b * c
        norm = np.sqrt(a * a + b * b + c * c + d * d)
        bad = np.abs(det) < resonance_tol * norm
        dd = np.where(bad, 1.0, det)
        slope = np.stack([(d * S[0] - b * S[1]) / dd, (a * S[1] - c * S[0]) / dd])
    else:
        det = np.linalg.det(J)
        norm = np.linalg.norm(J, axis=(-2, -1))
        bad = np.abs(det) < resonance_tol * norm
        Js = np.where(bad[..., None, None], np.eye(model.n_comp), J)
        slope = np.moveaxis(np.linalg.solve(Js, np.moveaxis(S, 0, -1)[..., None])[..., 0], -1, 0)
    bad = bad | ~pos | ~np.all(np.isfinite(U), axis=0)
    slope = np.where(bad, 0.0, slope)
    return slope, bad


def integrate_gap(model: BalanceLaw, H: Bathymetry, U, xa, xb, substeps: int,
                  resonance_tol: float = 1e-12):
    """Classical RK4 from ``xa`` to ``xb`` (either direction) in ``substeps`` steps.

    ``xa``/``xb`` may be arrays matching the trailing shape of ``U``. Returns
    ``(U_end, bad)``.
    """
    U = np.array(U, dtype=float, copy=True)
    xa = np.asarray(xa, dtype=float)
    xb = np.asarray(xb, dtype=float)
    span = xb - xa
    bad = np.zeros(np.broadcast_shapes(U.shape[1:], xa.shape), dtype=bool)
    for s in range(substeps):
        x0 = xa + span * (s / substeps)
        x1 = xb if s == substeps - 1 else xa + span * ((s + 1) / substeps)
        step = x1 - x0
        xm = x0 + 0.5 * step
        d0 = H.deriv(x0)
        dm = H.deriv(xm)
        d1 = H.deriv(x1)
        k1, b0 = stationary_slope(model, U, d0, resonance_tol)
        k2, b1 = stationary_slope(model, U + 0.5 * step * k1, dm, resonance_tol)
        k3, b2 = stationary_slope(model, U + 0.5 * step * k2, dm, resonance_tol)
        k4, b3 = stationary_slope(model, U + step * k3, d1, resonance_tol)
        U = U + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        bad |= b0 | b1 | b2 | b3
    bad |= ~np.all(np.isfinite(U), axis=0)
    if hasattr(model, "g"):
        bad |= ~(U[0] > 0)
    return U, bad


def _check_no_jumps(H: Bathymetry, x_lo: float, x_hi: float):
    inside = [xj for xj in H.jumps if x_lo < xj < x_hi]
    if inside:
        raise ValueError(
            f"numerical stationary extension does not support bathymetry jumps (jump at {inside[0]})"
        )


def _extend_along(model, H, U0, xs, substeps, resonance_tol):
    xs = np.asarray(xs, dtype=float)
    U0 = np.asarray(U0, dtype=float).reshape(model.n_comp)
    _check_no_jumps(H, float(xs.min()), float(xs.max()))
    out = np.empty((model.n_comp, xs.size))
    out[:, 0] = U0
    U = U0.reshape(model.n_comp, 1)
    bad = False
    for j in range(1, xs.size):
        U, b = integrate_gap(model, H, U, xs[j - 1], xs[j], substeps, resonance_tol)
        bad = bad or bool(b.any())
        out[:, j] = U[:, 0]
    return out, bad


def extend_forward(model: BalanceLaw, H: Bathymetry, U0, xs, config: OdeSolverConfig = OdeSolverConfig(),
                   k: int = 1) -> StationaryExtension:
    """Integrate from ``xs[0]`` (state ``U0``) through the increasing points ``xs``."""
    xs = np.asarray(xs, dtype=float)
    if np.any(np.diff(xs) <= 0):
        raise ValueError("extend_forward needs increasing coordinates")
    vals, bad = _extend_along(model, H, U0, xs, config.steps_for(k), config.resonance_tol)
    return StationaryExtension(vals, ExtensionStatus.NO_STATIONARY if bad else ExtensionStatus.NUMERIC)


def extend_backward(model: BalanceLaw, H: Bathymetry, U0, xs, config: OdeSolverConfig = OdeSolverConfig(),
                    k: int = 1) -> StationaryExtension:
    """Integrate from ``xs[0]`` through the decreasing points ``xs`` (negative step)."""
    xs = np.asarray(xs, dtype=float)
    if np.any(np.diff(xs) >= 0):
        raise ValueError("extend_backward needs decreasing coordinates")
    vals, bad = _extend_along(model, H, U0, xs, config.steps_for(k), config.resonance_tol)
    return StationaryExtension(vals, ExtensionStatus.NO_STATIONARY if bad else ExtensionStatus.NUMERIC)


def extend_stencils(model: BalanceLaw, H: Bathymetry, U_c, x_ext, k: int, reach: int,
                    config: OdeSolverConfig = OdeSolverConfig()) -> StationaryExtension:
    """Numerical extension from every node ``i`` to the offsets ``-reach..reach``.

    ``U_c`` holds the states at ``x_ext[reach:-reach]``; the result has shape
    ``(n_comp, n, 2 reach + 1)`` with the node itself at position ``reach``.
    """
    x_ext = np.asarray(x_ext, dtype=float)
    _check_no_jumps(H, float(x_ext[0]), float(x_ext[-1]))
    U_c = np.asarray(U_c, dtype=float)
    n = U_c.shape[1]
    K = config.steps_for(k)
    vals = np.empty((model.n_comp, n, 2 * reach + 1))
    vals[:, :, reach] = U_c
    bad = np.zeros(n, dtype=bool)
    centre = np.arange(n) + reach
    for direction in (1, -1):
        U = U_c.copy()
        for step in range(1, reach + 1):
            xa = x_ext[centre + direction * (step - 1)]
            xb = x_ext[centre + direction * step]
            U, b = integrate_gap(model, H, U, xa, xb, K, config.resonance_tol)
            bad |= b
            vals[:, :, reach + direction * step] = U
    status = np.where(bad, ExtensionStatus.NO_STATIONARY, ExtensionStatus.NUMERIC).astype(int)
    return StationaryExtension(vals, status)


def numeric_profile(model: BalanceLaw, H: Bathymetry, U_anchor, x_nodes, anchor: int = 0,
                    config: OdeSolverConfig = OdeSolverConfig(), k: int = 1) -> np.ndarray:
    """Discrete stationary profile on ``x_nodes`` through ``U_anchor`` at ``x_nodes[anchor]``.

    Built with the same gap integrator as :func:`extend_stencils`, so a scheme
    running in numerical-extension mode sees it as an exact equilibrium (up
    to the backward/forward round trip of the integrator).
    """
    x_nodes = np.asarray(x_nodes, dtype=float)
    fwd = extend_forward(model, H, U_anchor, x_nodes[anchor:], config, k) if anchor < x_nodes.size - 1 else None
    bwd = extend_backward(model, H, U_anchor, x_nodes[anchor::-1], config, k) if anchor > 0 else None
    out = np.empty((model.n_comp, x_nodes.size))
    out[:, anchor] = np.asarray(U_anchor, dtype=float).reshape(model.n_comp)
    for ext in (fwd, bwd):
        if ext is not None and ext.status == ExtensionStatus.NO_STATIONARY:
            raise ResonanceError("stationary profile hit a resonance or left the admissible set")
    if fwd is not None:
        out[:, anchor:] = fwd.values
    if bwd is not None:
        out[:, :anchor + 1] = bwd.values[:, ::-1]
    return out
