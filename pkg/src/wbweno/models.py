"""Balance laws ``U_t + F(U)_x = S(U) H_x`` and their stationary solutions.

Three models are provided: linear transport with a linear source, Burgers'
equation with source ``u^2`` and the shallow water system. Arrays of states
carry components on the first axis, ``U.shape == (n_comp, ...)``; matrices
(Jacobians, projectors) carry the two matrix axes last.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .grid import Bathymetry

__all__ = [
    "Regime",
    "ExtensionStatus",
    "StationaryExtension",
    "StationaryInvariants",
    "NoRootError",
    "BalanceLaw",
    "LinearTransport",
    "BurgersSource",
    "ShallowWater",
    "projection_pair",
    "sw_flux",
    "sw_eigenvalues",
    "sw_invariants",
    "depth_from_invariants",
    "sw_stationary_extension",
    "war_extension",
    "linear_stationary",
    "burgers_stationary",
    "sigma_extension",
    "froude",
    "BATHYMETRIES",
    "get_bathymetry",
]

G_DEFAULT = 9.81
FROUDE_TOL = 1e-8
CRITICAL_TOL = 1e-10
NEWTON_TOL = 1e-13
NEWTON_MAXIT = 100


class Regime(IntEnum):
    SUB = -1
    CRITICAL = 0
    SUPER = 1


class ExtensionStatus(IntEnum):
    EXACT = 0
    NUMERIC = 1
    NO_STATIONARY = 2


class NoRootError(ValueError):
    """The depth cubic has no positive root of the requested regime."""


@dataclass
class StationaryExtension:
    """Values of the local stationary solution on a stencil.

    ``values`` has shape ``(n_comp, ..., m)`` (stencil on the last axis) and
    ``status`` one entry per stencil centre.
    """

    values: np.ndarray
    status: np.ndarray

    @property
    def ok(self) -> np.ndarray:
        return np.asarray(self.status) != ExtensionStatus.NO_STATIONARY


@dataclass(frozen=True)
class StationaryInvariants:
    C1: float | np.ndarray
    C2: float | np.ndarray


def projection_pair(A) -> tuple[np.ndarray, np.ndarray]:
    """Upwind projectors ``P+- = K D+- K^-1`` of a (stack of) real-diagonalisable matrices.

    A scalar (or array of scalars) gives the scalar rule ``(1 +- sign a)/2``.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim < 2:
        s = np.sign(A)
        return 0.5 * (1.0 + s), 0.5 * (1.0 - s)
    lam, K = np.linalg.eig(A)
    if np.iscomplexobj(lam) and np.any(np.abs(lam.imag) > 1e-12 * (1.0 + np.abs(lam.real))):
        raise ValueError("matrix has complex eigenvalues")
    lam, K = lam.real, K.real
    if np.any(np.linalg.cond(K) > 1e12):
        raise ValueError("matrix is defective (ill-conditioned eigenvector basis)")
    return _projectors_from_eigensystem(lam, K)


def _projectors_from_eigensystem(lam, K):
    Kinv = np.linalg.inv(K)
    s = np.sign(lam)
    dp = 0.5 * (1.0 + s)
    dm = 0.5 * (1.0 - s)
    Pp = np.einsum("...ij,...j,...jk->...ik", K, dp, Kinv)
    Pm = np.einsum("...ij,...j,...jk->...ik", K, dm, Kinv)
    return Pp, Pm


class BalanceLaw:
    """Interface shared by the models; concrete models override what they need."""

    name = "balance-law"
    n_comp = 1
    conserved: tuple[int, ...] = ()

    def flux(self, U):
        raise NotImplementedError

    def source(self, U):
        raise NotImplementedError

    def eigenvalues(self, U):
        """Sorted eigenvalues of the flux Jacobian, shape ``(n_comp, ...)``."""
        raise NotImplementedError

    def jacobian(self, U):
        """Flux Jacobian with shape ``U.shape[1:] + (n_comp, n_comp)``."""
        raise NotImplementedError

    def max_speed(self, U) -> float:
        return float(np.max(np.abs(self.eigenvalues(U))))

    def projectors(self, U):
        """Projectors for the intermediate matrix ``J(U)``."""
        J = self.jacobian(U)
        if self.n_comp == 1:
            Pp, Pm = projection_pair(J[..., 0, 0])
            return Pp[..., None, None], Pm[..., None, None]
        return projection_pair(J)

    def admissible(self, U) -> bool:
        return bool(np.all(np.isfinite(U)))

    def check_state(self, U):
        U = np.asarray(U, dtype=float)
        if U.shape[0] != self.n_comp:
            raise ValueError(f"{self.name}: expected {self.n_comp} components, got {U.shape[0]}")
        if not self.admissible(U):
            raise ValueError(f"{self.name}: state outside the admissible set")
        return U

    def extend(self, U_c, H_c, H_st, U_st=None, center=None, cuts=None) -> StationaryExtension:
        """Stationary solution through ``U_c`` sampled where ``H`` takes the values ``H_st``.

        ``U_c``: ``(n_comp, n)``; ``H_c``: ``(n,)``; ``H_st``: ``(n, m)``;
        ``U_st``: data on the stencil ``(n_comp, n, m)`` when the model needs
        it (root selection); ``center``: stencil position of the node itself,
        whose value is set to ``U_c`` exactly; ``cuts``: ``(n, m-1)`` flags
        marking a jump of ``H`` between consecutive stencil points.
        """
        raise NotImplementedError


class _ExponentialFamily(BalanceLaw):
    """Scalar models whose stationary solutions are ``C exp(H(x))``."""

    def extend(self, U_c, H_c, H_st, U_st=None, center=None, cuts=None):
        U_c = np.asarray(U_c, dtype=float)
        H_c = np.asarray(H_c, dtype=float)
        vals = U_c[..., None] * np.exp(np.asarray(H_st) - H_c[..., None])
        if center is not None:
            vals[..., center] = U_c
        status = np.full(H_c.shape, ExtensionStatus.EXACT, dtype=int)
        return StationaryExtension(vals, status)


class LinearTransport(_ExponentialFamily):
    """``u_t + u_x = u H_x``."""

    name = "linear"

    def flux(self, U):
        return np.array(U, dtype=float, copy=True)

    def source(self, U):
        return np.array(U, dtype=float, copy=True)

    def eigenvalues(self, U):
        return np.ones_like(np.asarray(U, dtype=float))

    def jacobian(self, U):
        U = np.asarray(U, dtype=float)
        return np.ones(U.shape[1:] + (1, 1))


class BurgersSource(_ExponentialFamily):
    """``u_t + (u^2/2)_x = u^2 H_x``."""

    name = "burgers"

    def flux(self, U):
        U = np.asarray(U, dtype=float)
        return 0.5 * U * U

    def source(self, U):
        U = np.asarray(U, dtype=float)
        return U * U

    def eigenvalues(self, U):
        return np.array(U, dtype=float, copy=True)

    def jacobian(self, U):
        U = np.asarray(U, dtype=float)
        return U[0][..., None, None].copy()


# --------------------------------------------------------------------------
# shallow water


def sw_flux(U, g: float = G_DEFAULT) -> np.ndarray:
    U = np.asarray(U, dtype=float)
    h, q = U[0], U[1]
    if np.any(~(h > 0)):
        raise ValueError("shallow water flux requires h > 0")
    return np.stack([q, q * q / h + 0.5 * g * h * h])


def sw_eigenvalues(U, g: float = G_DEFAULT) -> np.ndarray:
    U = np.asarray(U, dtype=float)
    h, q = U[0], U[1]
    if np.any(~(h > 0)):
        raise ValueError("shallow water eigenvalues require h > 0")
    u = q / h
    c = np.sqrt(g * h)
    return np.stack([u - c, u + c])


def froude(U, g: float = G_DEFAULT) -> np.ndarray:
    U = np.asarray(U, dtype=float)
    h, q = U[0], U[1]
    return np.abs(q / h) / np.sqrt(g * h)


def _regimes(U, g):
    fr = froude(U, g)
    r = np.where(fr < 1.0, Regime.SUB, Regime.SUPER).astype(int)
    r[np.abs(fr - 1.0) <= FROUDE_TOL] = Regime.CRITICAL
    return r


def sw_invariants(U_i, H_i, g: float = G_DEFAULT) -> StationaryInvariants:
    """Mass flow ``C1 = q`` and Bernoulli constant ``C2 = q^2/(2h^2) + g h - g H``."""
    U_i = np.asarray(U_i, dtype=float)
    h, q = U_i[0], U_i[1]
    if np.any(~(h > 0)):
        raise ValueError("invariants require h > 0")
    C2 = 0.5 * q * q / (h * h) + g * h - g * np.asarray(H_i, dtype=float)
    if np.ndim(C2) == 0:
        return StationaryInvariants(float(q), float(C2))
    return StationaryInvariants(q, C2)


def _safeguarded_newton(A, c0, lo, hi, x0):
    """Root of ``h^3 - A h^2 + c0`` in the bracket ``[lo, hi]`` (sign change assumed)."""
    x = np.clip(x0, lo, hi)
    lo = lo.copy()
    hi = hi.copy()
    p_lo = lo * lo * (lo - A) + c0
    done = np.zeros(x.shape, dtype=bool)
    polish = np.zeros(x.shape, dtype=bool)
    for _ in range(NEWTON_MAXIT):
        p = x * x * (x - A) + c0
        same = np.sign(p) == np.sign(p_lo)
        lo = np.where(~done & same, x, lo)
        hi = np.where(~done & ~same, x, hi)
        dp = x * (3.0 * x - 2.0 * A)
        with np.errstate(divide="ignore", invalid="ignore"):
            xn = x - p / dp
        outside = ~np.isfinite(xn) | (xn < lo) | (xn > hi)
        xn = np.where(outside, 0.5 * (lo + hi), xn)
        small = np.abs(xn - x) <= NEWTON_TOL * np.abs(x)
        x = np.where(done, x, xn)
        done = done | polish
        polish = polish | (small & ~outside)
        if np.all(done):
            break
    return x


def _cubic_roots(C1, C2, sigma, g):
    """Positive roots of ``P(h) = h^3 - (C2/g + sigma) h^2 + C1^2/(2g)``.

    Returns ``(h_sub, h_super, critical)``; missing roots are NaN and a
    critical (double) root is reported in both slots.
    """
    C1, C2, sigma = np.broadcast_arrays(
        np.asarray(C1, dtype=float), np.asarray(C2, dtype=float), np.asarray(sigma, dtype=float)
    )
    A = C2 / g + sigma
    c0 = C1 * C1 / (2.0 * g)
    hc = np.cbrt(C1 * C1 / g)
    rest = C1 == 0.0
    Pc = hc * hc * (hc - A) + c0
    tol = CRITICAL_TOL * np.maximum(1.0, np.abs(C2 / g) ** 3)
    crit = (np.abs(Pc) <= tol) & ~rest
    two = (Pc < 0.0) & ~crit & ~rest

    h_sub = np.full(A.shape, np.nan)
    h_sup = np.full(A.shape, np.nan)
    h_sub[rest & (A > 0)] = A[rest & (A > 0)]
    h_sub[crit] = hc[crit]
    h_sup[crit] = hc[crit]
    if np.any(two):
        At, ct, hct = A[two], c0[two], hc[two]
        hm = 2.0 * At / 3.0
        h_sub[two] = _safeguarded_newton(At, ct, np.maximum(hm, hct), At, 1.5 * hct)
        h_sup[two] = _safeguarded_newton(At, ct, np.zeros_like(hct), np.minimum(hm, hct), 0.5 * hct)
    return h_sub, h_sup, crit


def depth_from_invariants(inv: StationaryInvariants, H_j: float, regime: Regime | str,
                          g: float = G_DEFAULT) -> float:
    """Depth at a point where ``H = H_j`` on the stationary solution with invariants ``inv``."""
    regime = Regime[regime.upper()] if isinstance(regime, str) else Regime(regime)
    h_sub, h_sup, crit = _cubic_roots(inv.C1, inv.C2, H_j, g)
    h_sub, h_sup, crit = float(h_sub), float(h_sup), bool(crit)
    if regime == Regime.CRITICAL:
        if not crit:
            raise NoRootError("no critical (double) root for these invariants")
        return h_sub
    h = h_sub if regime == Regime.SUB else h_sup
    if not math.isfinite(h) or h <= 0:
        raise NoRootError(f"no positive {regime.name.lower()}critical root")
    return h


def _nearest(a, b, target):
    da = np.abs(np.nan_to_num(a, nan=np.inf) - target)
    db = np.abs(np.nan_to_num(b, nan=np.inf) - target)
    return np.where(da <= db, a, b)


def _select_roots(h_sub, h_sup, crit, regimes, h_data, H_st, cuts=None):
    """Root choice on each stencil (axis -1), following the sub/super/transcritical rule.

    Mixed stencils without a critical minimum may still switch branch at a
    jump of ``H`` (``cuts``): each piece between jumps then takes the branch
    of its own data.
    """
    n, m = h_sub.shape
    has_sub = np.any(regimes == Regime.SUB, axis=1)
    has_sup = np.any(regimes == Regime.SUPER, axis=1)
    out = np.full((n, m), np.nan)

    only_sub = has_sub & ~has_sup
    only_sup = has_sup & ~has_sub
    none = ~has_sub & ~has_sup
    out[only_sub] = h_sub[only_sub]
    out[only_sup] = h_sup[only_sup]
    out[none] = _nearest(h_sub[none], h_sup[none], h_data[none])

    mixed = np.flatnonzero(has_sub & has_sup)
    if mixed.size:
        hs, hp, cr, rg, hd, Hs = (a[mixed] for a in (h_sub, h_sup, crit, regimes, h_data, H_st))
        chosen = np.full(hs.shape, np.nan)
        found = np.zeros(mixed.size, dtype=bool)
        idx = np.arange(m)
        for kk in range(m):
            is_min = np.ones(mixed.size, dtype=bool)
            if kk > 0:
                is_min &= Hs[:, kk] <= Hs[:, kk - 1]
            if kk < m - 1:
                is_min &= Hs[:, kk] <= Hs[:, kk + 1]
            cand = ~found & is_min & cr[:, kk]
            if not np.any(cand):
                continue
            left = idx < kk
            right = idx > kk
            lsub = np.any((rg == Regime.SUB) & left, axis=1)
            lsup = np.any((rg == Regime.SUPER) & left, axis=1)
            rsub = np.any((rg == Regime.SUB) & right, axis=1)
            rsup = np.any((rg == Regime.SUPER) & right, axis=1)
            cand &= ~(lsub & lsup) & ~(rsub & rsup)
            if not np.any(cand):
                continue
            near = _nearest(hs[cand], hp[cand], hd[cand])
            side_l = np.where(lsub[cand, None], hs[cand], np.where(lsup[cand, None], hp[cand], near))
            side_r = np.where(rsub[cand, None], hs[cand], np.where(rsup[cand, None], hp[cand], near))
            row = np.where(left, side_l, side_r)
            row[:, kk] = hs[cand, kk]
            chosen[cand] = row
            found |= cand
        if cuts is not None and not np.all(found):
            rest = np.flatnonzero(~found)
            chosen[rest] = _piecewise_roots(hs[rest], hp[rest], rg[rest], hd[rest], np.asarray(cuts)[mixed][rest])
        out[mixed] = chosen
    return out


def _piecewise_roots(hs, hp, rg, hd, cuts):
    """Per-piece branch choice on stencils split at the jumps of ``H``."""
    out = np.full(hs.shape, np.nan)
    piece = np.concatenate([np.zeros((hs.shape[0], 1), dtype=int), np.cumsum(cuts, axis=1)], axis=1)
    for r in range(hs.shape[0]):
        if not cuts[r].any():
            continue
        row = np.empty(hs.shape[1])
        for p in np.unique(piece[r]):
            sel = piece[r] == p
            sub = np.any(rg[r, sel] == Regime.SUB)
            sup = np.any(rg[r, sel] == Regime.SUPER)
            if sub and sup:
                row[:] = np.nan
                break
            row[sel] = hs[r, sel] if sub else hp[r, sel] if sup else _nearest(hs[r, sel], hp[r, sel], hd[r, sel])
        out[r] = row
    return out


def _sw_extend(U_c, H_c, H_st, U_st, g, center=None, cuts=None):
    U_c = np.asarray(U_c, dtype=float)
    h_c, q_c = U_c[0], U_c[1]
    inv = sw_invariants(U_c, H_c, g)
    C1 = np.asarray(inv.C1)[..., None]
    C2 = np.asarray(inv.C2)[..., None]
    h_sub, h_sup, crit = _cubic_roots(C1, C2, H_st, g)
    # energy below the critical level at a stencil point: no depth exists there and the
    # critical depth (the minimum-energy state) stands in for both branches
    short = ~np.isfinite(h_sub) & (C1 != 0.0)
    if np.any(short):
        hc = np.broadcast_to(np.cbrt(C1 * C1 / g), short.shape)[short]
        h_sub[short] = h_sup[short] = hc
        crit = crit | short
    regimes = _regimes(U_st, g)
    hstar = _select_roots(h_sub, h_sup, crit, regimes, U_st[0], H_st, cuts)
    if center is not None:
        hstar[:, center] = h_c
        # same H on a stencil without jumps: the solution through U_i is U_i there, also when
        # U_i sits inside the critical tolerance (the double root is only known to ~sqrt(tol));
        # across a jump both pieces come from the same invariant solve instead
        same = H_st == np.asarray(H_c, dtype=float)[:, None]
        if cuts is not None:
            same &= ~np.any(cuts, axis=1)[:, None]
        hstar = np.where(same & np.isfinite(hstar), h_c[:, None], hstar)
    ok = np.all(np.isfinite(hstar) & (hstar > 0), axis=1)
    hstar = np.where(ok[:, None], hstar, h_c[:, None])
    vals = np.stack([hstar, np.broadcast_to(q_c[:, None], hstar.shape)])
    status = np.where(ok, ExtensionStatus.EXACT, ExtensionStatus.NO_STATIONARY).astype(int)
    return StationaryExtension(vals, status)


def _war_extend(U_c, H_c, H_st, center=None):
    U_c = np.asarray(U_c, dtype=float)
    eta = U_c[0] - np.asarray(H_c, dtype=float)
    hstar = eta[..., None] + np.asarray(H_st, dtype=float)
    if center is not None:
        hstar[..., center] = U_c[0]
    ok = np.all(hstar > 0, axis=-1)
    vals = np.stack([hstar, np.zeros_like(hstar)])
    status = np.where(ok, ExtensionStatus.EXACT, ExtensionStatus.NO_STATIONARY).astype(int)
    return StationaryExtension(vals, status)


class ShallowWater(BalanceLaw):
    """Shallow water over a bottom at depth ``H`` below a fixed reference level."""

    name = "shallow-water"
    n_comp = 2
    conserved = (0,)

    def __init__(self, g: float = G_DEFAULT):
        if not g > 0:
            raise ValueError("g must be positive")
        self.g = float(g)

    def __repr__(self):
        return f"ShallowWater(g={self.g})"

    def flux(self, U):
        return sw_flux(U, self.g)

    def source(self, U):
        U = np.asarray(U, dtype=float)
        return np.stack([np.zeros_like(U[0]), self.g * U[0]])

    def eigenvalues(self, U):
        return sw_eigenvalues(U, self.g)

    def jacobian(self, U):
        U = np.asarray(U, dtype=float)
        h, q = U[0], U[1]
        u = q / h
        J = np.empty(h.shape + (2, 2))
        J[..., 0, 0] = 0.0
        J[..., 0, 1] = 1.0
        J[..., 1, 0] = self.g * h - u * u
        J[..., 1, 1] = 2.0 * u
        return J

    def eigenvectors(self, U):
        lam = self.eigenvalues(U)
        K = np.empty(lam.shape[1:] + (2, 2))
        K[..., 0, :] = 1.0
        K[..., 1, 0] = lam[0]
        K[..., 1, 1] = lam[1]
        return K

    def projectors(self, U):
        lam = self.eigenvalues(U)
        K = self.eigenvectors(U)
        return _projectors_from_eigensystem(np.moveaxis(lam, 0, -1), K)

    def admissible(self, U):
        U = np.asarray(U)
        return bool(np.all(np.isfinite(U)) and np.all(U[0] > 0))

    def invariants(self, U, H):
        return sw_invariants(U, H, self.g)

    def regimes(self, U):
        return _regimes(U, self.g)

    def extend(self, U_c, H_c, H_st, U_st=None, center=None, cuts=None):
        if U_st is None:
            raise ValueError("shallow water extension needs the stencil states for root selection")
        return _sw_extend(U_c, H_c, H_st, U_st, self.g, center, cuts)

    def extend_water_at_rest(self, U_c, H_c, H_st, center=None):
        return _war_extend(U_c, H_c, H_st, center)

    def profile(self, x, H: Bathymetry, C1: float, C2: float, regime) -> np.ndarray:
        """Stationary ``(h, q)`` at ``x`` for given invariants.

        ``regime`` is a :class:`Regime` (or name) or a callable ``x -> Regime``;
        pointwise regimes allow transcritical profiles.
        """
        x = np.asarray(x, dtype=float)
        Hx = H.eval(x)
        if callable(regime):
            reg = np.asarray([int(regime(xi)) for xi in x])
        else:
            r = Regime[regime.upper()] if isinstance(regime, str) else Regime(regime)
            reg = np.full(x.shape, int(r))
        h_sub, h_sup, crit = _cubic_roots(C1, C2, Hx, self.g)
        h = np.where(crit, h_sub, np.where(reg == Regime.SUPER, h_sup, h_sub))
        if np.any(~np.isfinite(h)):
            bad = x[~np.isfinite(h)]
            raise NoRootError(f"no stationary depth at x in [{bad.min()}, {bad.max()}]")
        return np.stack([h, np.full(x.shape, float(C1))])


# --------------------------------------------------------------------------
# single-node convenience wrappers


def linear_stationary(u_i: float, x_i: float, xs, H: Bathymetry) -> np.ndarray:
    """``u_i exp(H(x_j) - H(x_i))``: the stationary solution of the linear model through ``u_i``."""
    xs = np.asarray(xs, dtype=float)
    Hi = float(H.eval(np.array([x_i]))[0])
    return u_i * np.exp(H.eval(xs) - Hi)


def burgers_stationary(u_i: float, x_i: float, xs, H: Bathymetry) -> np.ndarray:
    return linear_stationary(u_i, x_i, xs, H)


def sw_stationary_extension(U_i, x_i, xs, H: Bathymetry, stencil_states,
                            g: float = G_DEFAULT) -> StationaryExtension:
    """Stationary solution through ``U_i`` (at ``x_i``) on the stencil ``xs``.

    ``stencil_states`` are the data at ``xs``, shape ``(2, len(xs))``; their
    regimes drive the sub/supercritical root selection.
    """
    xs = np.asarray(xs, dtype=float)
    U_i = np.asarray(U_i, dtype=float).reshape(2, 1)
    Hi = H.eval(np.array([x_i]))
    Ust = np.asarray(stencil_states, dtype=float).reshape(2, 1, xs.size)
    center = np.flatnonzero(np.isclose(xs, x_i, rtol=0, atol=1e-12 * max(1.0, abs(x_i))))
    ext = _sw_extend(U_i, Hi, H.eval(xs)[None, :], Ust, g, int(center[0]) if center.size else None,
                     H.cuts(xs)[None, :])
    return StationaryExtension(ext.values[:, 0], ext.status[0])


def war_extension(U_i, x_i, xs, H: Bathymetry) -> StationaryExtension:
    """Lake-at-rest member ``h* = (h_i - H(x_i)) + H(x_j)``, ``q* = 0``."""
    xs = np.asarray(xs, dtype=float)
    U_i = np.asarray(U_i, dtype=float)
    Hi = float(H.eval(np.array([x_i]))[0])
    ext = _war_extend(U_i.reshape(2, 1)[:, 0], Hi, H.eval(xs))
    return StationaryExtension(ext.values, int(ext.status))


def sigma_extension(model: BalanceLaw, U_i, H_i: float, sigma, stencil_states=None) -> StationaryExtension:
    """Evaluate the generator ``V`` with ``V(H_i) = U_i`` at the values ``sigma = H(x_j)``.

    With jumps in ``H`` this is the admissible (integral-curve preserving)
    stationary solution; for continuous ``H`` it coincides with the ordinary
    extension.
    """
    sigma = np.asarray(sigma, dtype=float)
    U_i = np.asarray(U_i, dtype=float).reshape(model.n_comp, 1)
    Ust = None
    if stencil_states is not None:
        Ust = np.asarray(stencil_states, dtype=float).reshape(model.n_comp, 1, sigma.size)
    ext = model.extend(U_i, np.array([float(H_i)]), sigma[None, :], Ust)
    return StationaryExtension(ext.values[:, 0], ext.status[0])


# --------------------------------------------------------------------------
# bathymetry catalog


def _piecewise(x, cond, f_in, f_out):
    x = np.asarray(x, dtype=float)
    return np.where(cond(x), f_in(x), f_out(x))


def _bump_H(x):
    return _piecewise(x, lambda x: np.abs(x) <= 0.2,
                      lambda x: -0.25 * (1.0 + np.cos(5.0 * np.pi * x)), np.zeros_like)


def _bump_dH(x):
    return _piecewise(x, lambda x: np.abs(x) <= 0.2,
                      lambda x: 1.25 * np.pi * np.sin(5.0 * np.pi * x), np.zeros_like)


def _swjump_H(x):
    x = np.asarray(x, dtype=float)
    dip = (x >= -1.4) & (x <= -1.0)
    return np.where(x > 0, 1.0, np.where(dip, 0.25 * (1.0 + np.cos(5.0 * np.pi * (x + 1.2))), 0.0))


def _swjump_dH(x):
    x = np.asarray(x, dtype=float)
    dip = (x >= -1.4) & (x <= -1.0)
    return np.where(dip, -1.25 * np.pi * np.sin(5.0 * np.pi * (x + 1.2)), 0.0)


def _hump_H(x):
    return _piecewise(x, lambda x: (x >= 8.0) & (x <= 12.0),
                      lambda x: 0.13 + 0.05 * (x - 10.0) ** 2, lambda x: np.full_like(x, 0.33))


def _hump_dH(x):
    return _piecewise(x, lambda x: (x >= 8.0) & (x <= 12.0),
                      lambda x: 0.1 * (x - 10.0), np.zeros_like)


BATHYMETRIES: dict[str, Bathymetry] = {
    "identity": Bathymetry(lambda x: np.array(x, dtype=float, copy=True), np.ones_like, (), "identity"),
    "oscillatory": Bathymetry(lambda x: x + 0.1 * np.sin(100.0 * x),
                              lambda x: 1.0 + 10.0 * np.cos(100.0 * x), (), "oscillatory"),
    "burgers-jump": Bathymetry(lambda x: np.where(x <= 0, 0.1 * x, 0.9 + x),
                               lambda x: np.where(x <= 0, 0.1, 1.0), (0.0,), "burgers-jump"),
    "bump": Bathymetry(_bump_H, _bump_dH, (), "bump"),
    "sw-jump": Bathymetry(_swjump_H, _swjump_dH, (0.0,), "sw-jump"),
    "parabolic-hump": Bathymetry(_hump_H, _hump_dH, (), "parabolic-hump"),
    "flat": Bathymetry(np.zeros_like, np.zeros_like, (), "flat"),
}


def get_bathymetry(name: str) -> Bathymetry:
    try:
        return BATHYMETRIES[name]
    except KeyError:
        raise KeyError(f"unknown bathymetry {name!r}; available: {sorted(BATHYMETRIES)}") from None
