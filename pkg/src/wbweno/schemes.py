"""Semi-discrete right-hand sides (method of lines) for the balance law.

All schemes share the finite-difference flux form

    dU_i/dt = -(Fhat_{i+1/2} - Fhat_{i-1/2}) / dx + (source terms)

with WENO reconstruction of split fluxes. The families differ in what is
reconstructed:

``standard``  the flux ``F(U)`` itself plus the pointwise source ``S(U_i) H_x(x_i)``;
``wb``        per node, ``F(U) - F(U*_i)`` where ``U*_i`` is the stationary
              solution through ``U_i``; no explicit source;
``wbwar``     same, with ``U*_i`` the lake-at-rest solution with the surface
              level of ``U_i`` (shallow water);
``wb1``       ``F(U) - F(U*)`` for one fixed stationary reference ``U*``, plus
              the residual source ``(S(U_i) - S(U*(x_i))) H_x(x_i)``;
``wbmc``      like ``wb`` but with the mass flux kept conservative and a
              viscous term that is constant on stationary solutions
              (shallow water).

Fields are arrays of shape ``(n_comp, n)``; ghost-extended fields carry
``k + 1`` extra nodes per side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .grid import Bathymetry, BoundarySpec, Grid, ghost_extend
from .models import BalanceLaw, ExtensionStatus, ShallowWater, projection_pair
from .stationary_ode import OdeSolverConfig, extend_stencils
from .weno import ReconstructionConfig, reconstruct_left, reconstruct_right

__all__ = [
    "FAMILIES",
    "SPLITTINGS",
    "SchemeConfig",
    "SemiDiscretization",
    "NumericalError",
    "ProjectionPair",
    "projection_pair",
    "rhs_standard",
    "rhs_wb_full",
    "rhs_wb_war",
    "rhs_wb_single",
    "rhs_wb_masscons",
    "singular_source_rhs",
    "scheme_label",
]

FAMILIES = ("standard", "wb", "wbwar", "wb1", "wbmc")
SPLITTINGS = ("glf", "llf", "upwind")
SINGULAR_RULES = ("centered", "upwind")
EXTENSION_MODES = ("exact", "numeric")

_FAMILY_ALIASES = {"weno": "standard", "wbfull": "wb", "wbsingle": "wb1", "wbmasscons": "wbmc"}
_LABEL_PREFIX = {"standard": "WENO", "wb": "WBWENO", "wbwar": "WBWARWENO", "wb1": "WB1WENO",
                 "wbmc": "WBMCWENO"}


class NumericalError(RuntimeError):
    """Non-finite values produced while assembling a right-hand side."""


@dataclass(frozen=True)
class ProjectionPair:
    P_plus: np.ndarray
    P_minus: np.ndarray

    @classmethod
    def of(cls, A):
        return cls(*projection_pair(A))


@dataclass(frozen=True)
class SchemeConfig:
    family: str = "standard"
    splitting: str = "glf"
    reconstruction: ReconstructionConfig = field(default_factory=ReconstructionConfig)
    singular_source: str = "centered"
    extension: str = "exact"
    ode: OdeSolverConfig = field(default_factory=OdeSolverConfig)
    # wb1 only: x -> reference stationary states, shape (n_comp, len(x))
    reference: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self):
        fam = _FAMILY_ALIASES.get(self.family, self.family)
        object.__setattr__(self, "family", fam)
        if fam not in FAMILIES:
            raise ValueError(f"unknown scheme family {self.family!r}; expected one of {FAMILIES}")
        if self.splitting not in SPLITTINGS:
            raise ValueError(f"unknown splitting {self.splitting!r}; expected one of {SPLITTINGS}")
        if self.singular_source not in SINGULAR_RULES:
            raise ValueError(f"unknown singular-source rule {self.singular_source!r}")
        if self.extension not in EXTENSION_MODES:
            raise ValueError(f"unknown extension mode {self.extension!r}")
        if fam == "wb1" and self.reference is None:
            raise ValueError("wb1 needs a reference stationary solution")
        if fam == "wbmc" and self.splitting == "upwind":
            raise ValueError("wbmc is defined for flux splitting only (glf or llf)")

    @property
    def k(self) -> int:
        return self.reconstruction.k

    @property
    def width(self) -> int:
        return self.reconstruction.k + 1


def scheme_label(config: SchemeConfig) -> str:
    return f"{_LABEL_PREFIX[config.family]}{config.reconstruction.order}"


# --------------------------------------------------------------------------
# building blocks


def _check_finite(arr, what):
    if not np.all(np.isfinite(arr)):
        bad = np.argwhere(~np.isfinite(arr))
        raise NumericalError(f"non-finite {what} at index {tuple(bad[0])}")


def _global_alpha(model, U_ext):
    a = model.max_speed(U_ext)
    if not np.isfinite(a):
        raise NumericalError("non-finite wave speed")
    return a


def _interface_alpha(model, U_ext, k):
    """LLF viscosity per interface: max |eigenvalue| over the 2k+2 nodes of its stencil."""
    speed = np.max(np.abs(model.eigenvalues(U_ext)), axis=0)
    return sliding_window_view(speed, 2 * k + 2).max(axis=-1)


def _split_pair(Fw, Vw, alpha, rc):
    """``R^L((F + aV)/2) + R^R((F - aV)/2)`` on windows of length 2k+2 (last axis)."""
    Fp = 0.5 * (Fw + alpha * Vw)
    Fm = 0.5 * (Fw - alpha * Vw)
    return reconstruct_left(Fp[..., :-1], rc) + reconstruct_right(Fm[..., 1:], rc)


def _upwind_pair(Fw, Pp, Pm, rc):
    """``P+ R^L(F) + P- R^R(F)``; ``Fw``: (N, m, 2k+2); ``Pp``, ``Pm``: (m, N, N)."""
    FL = reconstruct_left(Fw[..., :-1], rc)
    FR = reconstruct_right(Fw[..., 1:], rc)
    return np.einsum("mij,jm->im", Pp, FL) + np.einsum("mij,jm->im", Pm, FR)


class SemiDiscretization:
    """Right-hand side ``L(U)`` of one scheme on one mesh.

    Everything that depends only on the mesh and the bathymetry (H on the
    stencils, its derivative, jump locations, the wb1 reference) is computed
    once here.
    """

    def __init__(self, model: BalanceLaw, grid: Grid, H: Bathymetry, config: SchemeConfig,
                 bc: BoundarySpec | None = None):
        if config.family in ("wbwar", "wbmc") and not isinstance(model, ShallowWater):
            raise ValueError(f"{config.family} is only defined for the shallow water model")
        self.model = model
        self.grid = grid
        self.H = H
        self.config = config
        self.rc = config.reconstruction
        k = self.rc.k
        w = self.width = k + 1
        n = grid.n_nodes
        if n < 2 * k + 3:
            raise ValueError(f"need at least {2 * k + 3} cells for order {self.rc.order}")
        self.bc = (bc or BoundarySpec()).frozen(grid, w)
        self.x_ext = grid.x_ext(w)
        self.H_ext = H.eval(self.x_ext)
        self.H_c = self.H_ext[w:w + n]
        self.Hx = H.deriv(grid.x)
        self.H_st = sliding_window_view(self.H_ext, 2 * w + 1).copy()
        self.cuts = sliding_window_view(H.cuts(self.x_ext), 2 * w).copy()
        self.jumps = [I for I in H.jump_indices(grid) if 1 <= I <= n - 1]
        if config.extension == "numeric" and config.family in ("wb", "wbmc"):
            if any(grid.x_lo - w * grid.dx < xj < grid.x_hi + w * grid.dx for xj in H.jumps):
                raise ValueError("numerical stationary extension does not support bathymetry jumps")
        self.ref_ext = None
        if config.family == "wb1":
            ref = np.asarray(config.reference(self.x_ext), dtype=float).reshape(model.n_comp, -1)
            self.ref_ext = ref
            self.F_ref_ext = model.flux(ref)
            self.S_ref = model.source(ref[:, w:w + n])

    # ---- public -----------------------------------------------------------

    def extend_field(self, U) -> np.ndarray:
        return ghost_extend(U, self.grid, self.bc, self.width)

    def __call__(self, U) -> np.ndarray:
        return self.rhs(U)

    def rhs(self, U) -> np.ndarray:
        return self.rhs_ext(self.extend_field(U))

    def rhs_ext(self, U_ext) -> np.ndarray:
        U_ext = np.asarray(U_ext, dtype=float)
        if U_ext.shape != (self.model.n_comp, self.grid.n_nodes + 2 * self.width):
            raise ValueError(f"ghost-extended field has shape {U_ext.shape}")
        _check_finite(U_ext, "state")
        fam = self.config.family
        if fam == "standard":
            out = self._standard(U_ext)
        elif fam == "wb1":
            out = self._wb_single(U_ext)
        else:
            out = self._wb_node_based(U_ext, fam)
        _check_finite(out, "right-hand side")
        return out

    def interface_fluxes(self, U_ext) -> np.ndarray:
        """Standard numerical fluxes at the n+1 intercells, shape ``(n_comp, n+1)``."""
        F = self.model.flux(U_ext)
        _check_finite(F, "flux")
        return self._assemble(U_ext, F, U_ext)

    def alpha(self, U_ext):
        if self.config.splitting == "llf":
            return _interface_alpha(self.model, U_ext, self.rc.k)
        return _global_alpha(self.model, U_ext)

    def extension(self, U_ext):
        """Per-node stationary extensions on offsets ``-(k+1)..k+1``."""
        w, n = self.width, self.grid.n_nodes
        U_c = U_ext[:, w:w + n]
        if not self.model.admissible(U_c):
            raise NumericalError("inadmissible state, no stationary extension")
        if self.config.family == "wbwar":
            return self.model.extend_water_at_rest(U_c, self.H_c, self.H_st, center=w)
        if self.config.extension == "numeric":
            return extend_stencils(self.model, self.H, U_c, self.x_ext, self.rc.k, w, self.config.ode)
        U_st = np.moveaxis(sliding_window_view(U_ext, 2 * w + 1, axis=1), 0, 0)
        return self.model.extend(U_c, self.H_c, self.H_st, U_st, center=w, cuts=self.cuts)

    # ---- assembly ---------------------------------------------------------

    def _assemble(self, U_ext, G, V, alpha=None):
        """Intercell fluxes from point values ``G`` (reconstructed) and ``V`` (viscous)."""
        rc = self.rc
        Gw = sliding_window_view(G, 2 * rc.k + 2, axis=1)
        if self.config.splitting == "upwind":
            Pp, Pm = self._interface_projectors(U_ext)
            return _upwind_pair(Gw, Pp, Pm, rc)
        Vw = sliding_window_view(V, 2 * rc.k + 2, axis=1)
        if alpha is None:
            alpha = self.alpha(U_ext)
        a = alpha[None, :, None] if np.ndim(alpha) else alpha
        return _split_pair(Gw, Vw, a, rc)

    def _interface_projectors(self, U_ext):
        k, n = self.rc.k, self.grid.n_nodes
        mean = 0.5 * (U_ext[:, k:k + n + 1] + U_ext[:, k + 1:k + n + 2])
        return self.model.projectors(mean)

    def _standard(self, U_ext):
        w, n, dx = self.width, self.grid.n_nodes, self.grid.dx
        Fh = self.interface_fluxes(U_ext)
        U = U_ext[:, w:w + n]
        out = -(Fh[:, 1:] - Fh[:, :-1]) / dx + self.model.source(U) * self.Hx
        if self.jumps:
            out += self._singular(U)
        return out

    def _singular(self, U, S_ref_states=None):
        """Jump corrections; with ``S_ref_states`` the reference correction is subtracted."""
        return singular_corrections(self.model, U, self.H_c, self.jumps, self.grid.dx,
                                    self.config.singular_source, S_ref_states)

    def _wb_single(self, U_ext):
        w, n, dx = self.width, self.grid.n_nodes, self.grid.dx
        F = self.model.flux(U_ext)
        _check_finite(F, "flux")
        G = F - self.F_ref_ext
        V = U_ext - self.ref_ext
        Fh = self._assemble(U_ext, G, V)
        U = U_ext[:, w:w + n]
        out = -(Fh[:, 1:] - Fh[:, :-1]) / dx + (self.model.source(U) - self.S_ref) * self.Hx
        if self.jumps:
            out += self._singular(U, self.ref_ext[:, w:w + n])
        return out

    def _wb_node_based(self, U_ext, fam):
        model, rc = self.model, self.rc
        k, w, n, dx = rc.k, self.width, self.grid.n_nodes, self.grid.dx
        ext = self.extension(U_ext)
        Ustar = ext.values                                     # (N, n, 2k+3)
        U_st = sliding_window_view(U_ext, 2 * w + 1, axis=1)   # (N, n, 2k+3)
        F_st = sliding_window_view(model.flux(U_ext), 2 * w + 1, axis=1)
        ok = ext.ok
        Ustar = np.where(ok[None, :, None], Ustar, U_st)
        F_star = model.flux(Ustar.reshape(model.n_comp, -1)).reshape(Ustar.shape)
        D = F_st - F_star
        if fam == "wbmc":
            g = model.g
            D = D.copy()
            D[0] = U_st[1]
            h, q = U_ext
            visc = np.stack([h - self.H_ext + q * q / (2.0 * g * h * h), q])
            V = sliding_window_view(visc, 2 * w + 1, axis=1)
        else:
            V = U_st - Ustar
        _check_finite(D, "flux difference")

        if self.config.splitting == "upwind":
            Pp, Pm = self._interface_projectors(U_ext)
            f_right = _upwind_pair(D[..., 1:], Pp[1:], Pm[1:], rc)
            f_left = _upwind_pair(D[..., :-1], Pp[:-1], Pm[:-1], rc)
        else:
            alpha = self.alpha(U_ext)
            if np.ndim(alpha):
                a_r, a_l = alpha[None, 1:, None], alpha[None, :-1, None]
            else:
                a_r = a_l = alpha
            f_right = _split_pair(D[..., 1:], V[..., 1:], a_r, rc)
            f_left = _split_pair(D[..., :-1], V[..., :-1], a_l, rc)
        out = -(f_right - f_left) / dx
        if not np.all(ok):
            std = self._standard(U_ext)
            out[:, ~ok] = std[:, ~ok]
        return out


def singular_corrections(model: BalanceLaw, U, H_nodes, jumps, dx, rule="centered", ref_states=None):
    """Source contributions of the jumps of ``H`` at intercells ``I - 1/2``.

    Adds ``P- S_mid dH/dx`` to node ``I-1`` and ``P+ S_mid dH/dx`` to node
    ``I``, with ``P+-`` the upwind projectors at the mean state and
    ``dH = H_I - H_{I-1}``. ``rule`` picks ``S_mid``: the source at the mean
    state (``centered``) or ``P+ S(U_{I-1}) + P- S(U_I)`` (``upwind``).
    With ``ref_states`` the same expression evaluated on the reference (but
    with the projectors of ``U``) is subtracted.
    """
    U = np.asarray(U, dtype=float)
    out = np.zeros_like(U)
    if not jumps:
        return out
    I = np.asarray(jumps, dtype=int)
    Ul, Ur = U[:, I - 1], U[:, I]
    mean = 0.5 * (Ul + Ur)
    Pp, Pm = model.projectors(mean)
    dH = (np.asarray(H_nodes)[I] - np.asarray(H_nodes)[I - 1]) / dx

    def s_mid(a, b):
        if rule == "centered":
            return model.source(0.5 * (a + b))
        return np.einsum("mij,jm->im", Pp, model.source(a)) + np.einsum("mij,jm->im", Pm, model.source(b))

    S = s_mid(Ul, Ur)
    if ref_states is not None:
        R = np.asarray(ref_states, dtype=float)
        S = S - s_mid(R[:, I - 1], R[:, I])
    minus = np.einsum("mij,jm->im", Pm, S) * dH
    plus = np.einsum("mij,jm->im", Pp, S) * dH
    np.add.at(out, (slice(None), I - 1), minus)
    np.add.at(out, (slice(None), I), plus)
    return out


# --------------------------------------------------------------------------
# functional interface on ghost-extended fields


def _rhs(U_ext, model, grid, H, config, family, **overrides):
    cfg = SchemeConfig(**{**config.__dict__, "family": family, **overrides})
    return SemiDiscretization(model, grid, H, cfg).rhs_ext(U_ext)


def rhs_standard(U_ext, model, grid, H, config: SchemeConfig = SchemeConfig()):
    return _rhs(U_ext, model, grid, H, config, "standard")


def rhs_wb_full(U_ext, model, grid, H, config: SchemeConfig = SchemeConfig()):
    return _rhs(U_ext, model, grid, H, config, "wb")


def rhs_wb_war(U_ext, model, grid, H, config: SchemeConfig = SchemeConfig()):
    return _rhs(U_ext, model, grid, H, config, "wbwar")


def rhs_wb_single(U_ext, model, grid, H, config: SchemeConfig = SchemeConfig(), reference=None):
    ref = reference if reference is not None else config.reference
    return _rhs(U_ext, model, grid, H, config, "wb1", reference=ref)


def rhs_wb_masscons(U_ext, model, grid, H, config: SchemeConfig = SchemeConfig()):
    return _rhs(U_ext, model, grid, H, config, "wbmc")


def singular_source_rhs(U_ext, model, grid, H, config: SchemeConfig = SchemeConfig(), reference=None):
    """Jump corrections alone (interior nodes), for ``standard`` or ``wb1``."""
    w = config.width
    n = grid.n_nodes
    U = np.asarray(U_ext, dtype=float)[:, w:w + n]
    jumps = [I for I in H.jump_indices(grid) if 1 <= I <= n - 1]
    ref = None
    if reference is not None:
        ref = np.asarray(reference(grid.x), dtype=float).reshape(model.n_comp, n)
    return singular_corrections(model, U, H.eval(grid.x), jumps, grid.dx, config.singular_source, ref)
