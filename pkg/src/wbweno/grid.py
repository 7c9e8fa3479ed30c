"""Uniform 1D node meshes, bathymetry objects, ghost cells and error norms."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "Grid",
    "Bathymetry",
    "BoundarySpec",
    "build_grid",
    "ghost_extend",
    "l1_error",
    "convergence_order",
]


@dataclass(frozen=True)
class Grid:
    """Cell-centred uniform mesh: ``x_i = x_lo + (i + 1/2) dx``.

    Intercells ``x_{i+1/2} = x_i + dx/2`` coincide with cell boundaries, so a
    bathymetry jump placed on ``x_lo + m dx`` always falls on an intercell.
    """

    x_lo: float
    x_hi: float
    n_nodes: int

    def __post_init__(self):
        if not isinstance(self.n_nodes, (int, np.integer)) or self.n_nodes < 1:
            raise ValueError(f"n_nodes must be a positive integer, got {self.n_nodes!r}")
        if not (math.isfinite(self.x_lo) and math.isfinite(self.x_hi)) or self.x_hi <= self.x_lo:
            raise ValueError(f"invalid interval [{self.x_lo}, {self.x_hi}]")

    @property
    def dx(self) -> float:
        return (self.x_hi - self.x_lo) / self.n_nodes

    @property
    def x(self) -> np.ndarray:
        return self.x_lo + (np.arange(self.n_nodes) + 0.5) * self.dx

    def x_ext(self, width: int) -> np.ndarray:
        """Node coordinates including ``width`` ghost nodes per side."""
        i = np.arange(-width, self.n_nodes + width)
        return self.x_lo + (i + 0.5) * self.dx

    @property
    def interfaces(self) -> np.ndarray:
        """The ``n_nodes + 1`` intercells ``x_{-1/2}, ..., x_{n-1/2}``."""
        return self.x_lo + np.arange(self.n_nodes + 1) * self.dx

    def intercell_index(self, xj: float, tol: float = 1e-9) -> int:
        """Index ``I`` with ``x_{I-1/2} == xj``; raises if ``xj`` is not an intercell."""
        m = (xj - self.x_lo) / self.dx
        I = int(round(m))
        if abs(m - I) > tol:
            raise ValueError(
                f"jump at x={xj} is not located on an intercell of the mesh "
                f"(dx={self.dx}, offset {m - I:+.3e} cells)"
            )
        return I


def build_grid(x_lo: float, x_hi: float, n_nodes: int) -> Grid:
    return Grid(float(x_lo), float(x_hi), n_nodes)


def _zero(x):
    return np.zeros_like(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class Bathymetry:
    """The known function ``H`` with its a.e. derivative and jump set.

    ``func`` must follow the convention used for the jumps: at a jump point
    the value returned is the left limit (``H(x) = left branch for x <= x_J``).
    """

    func: Callable[[np.ndarray], np.ndarray]
    deriv_func: Callable[[np.ndarray], np.ndarray] = _zero
    jumps: tuple[float, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "jumps", tuple(sorted(float(j) for j in self.jumps)))

    def eval(self, x) -> np.ndarray:
        return np.asarray(self.func(np.asarray(x, dtype=float)), dtype=float)

    def deriv(self, x) -> np.ndarray:
        return np.asarray(self.deriv_func(np.asarray(x, dtype=float)), dtype=float)

    __call__ = eval

    def limits(self, xj: float, eps: float = 1e-12) -> tuple[float, float]:
        """Left and right limits of ``H`` at ``xj``."""
        scale = max(1.0, abs(xj))
        lo = float(self.eval(np.array([xj - eps * scale]))[0])
        hi = float(self.eval(np.array([xj + eps * scale]))[0])
        return lo, hi

    def jump_indices(self, grid: Grid) -> list[int]:
        """Intercell indices ``I`` of the interior jumps (between nodes I-1 and I)."""
        out = []
        for xj in self.jumps:
            if xj <= grid.x_lo or xj >= grid.x_hi:
                continue
            out.append(grid.intercell_index(xj))
        return out

    def cuts(self, xs) -> np.ndarray:
        """Flags ``(len(xs) - 1,)``: a jump lies strictly between ``xs[j]`` and ``xs[j+1]``."""
        xs = np.asarray(xs, dtype=float)
        lo, hi = np.minimum(xs[:-1], xs[1:]), np.maximum(xs[:-1], xs[1:])
        out = np.zeros(max(xs.size - 1, 0), dtype=bool)
        for xj in self.jumps:
            out |= (lo < xj) & (xj < hi)
        return out

    def check_derivative(self, x: np.ndarray, rel_tol: float = 1e-5) -> float:
        """Max discrepancy between ``deriv`` and a centred difference of ``eval``.

        Points within the difference stencil of a jump are skipped.
        """
        x = np.asarray(x, dtype=float)
        step = 1e-6 * np.maximum(1.0, np.abs(x))
        keep = np.ones(x.shape, dtype=bool)
        for xj in self.jumps:
            keep &= np.abs(x - xj) > 2 * step
        x, step = x[keep], step[keep]
        fd = (self.eval(x + step) - self.eval(x - step)) / (2 * step)
        err = np.abs(fd - self.deriv(x)) / np.maximum(1.0, np.abs(fd))
        return float(err.max()) if err.size else 0.0


BOUNDARY_KINDS = ("free", "stationary", "value")


@dataclass(frozen=True)
class BoundarySpec:
    """Ghost-cell boundary treatment per side.

    ``free`` copies the nearest interior node into the ghosts, ``stationary``
    samples ``sampler(x_ghost)`` (shape ``(n_comp, n_ghost)``) and ``value``
    uses ``left_value``/``right_value`` (a vector, or an array with one column
    per ghost node ordered by increasing x).
    """

    left: str = "free"
    right: str = "free"
    sampler: Callable[[np.ndarray], np.ndarray] | None = None
    left_value: np.ndarray | None = None
    right_value: np.ndarray | None = None

    def __post_init__(self):
        for side in (self.left, self.right):
            if side not in BOUNDARY_KINDS:
                raise ValueError(f"unknown boundary kind {side!r}; expected one of {BOUNDARY_KINDS}")

    def frozen(self, grid: Grid, width: int) -> "BoundarySpec":
        """Equivalent spec with stationary ghosts pre-sampled into fixed values."""
        if "stationary" not in (self.left, self.right):
            return self
        if self.sampler is None:
            raise ValueError("stationary boundary requires a sampler")
        xe = grid.x_ext(width)
        left, right = self.left, self.right
        lv, rv = self.left_value, self.right_value
        if left == "stationary":
            lv, left = np.asarray(self.sampler(xe[:width]), dtype=float), "value"
        if right == "stationary":
            rv, right = np.asarray(self.sampler(xe[-width:]), dtype=float), "value"
        return BoundarySpec(left, right, None, lv, rv)


def _side_values(kind, interior_edge, value, xg, sampler, n_comp, width):
    if kind == "free":
        return np.repeat(interior_edge[:, None], width, axis=1)
    if kind == "stationary":
        if sampler is None:
            raise ValueError("stationary boundary requires a sampler")
        return np.asarray(sampler(xg), dtype=float).reshape(n_comp, width)
    if value is None:
        raise ValueError("value boundary requires left_value/right_value")
    v = np.asarray(value, dtype=float)
    if v.ndim == 1:
        return np.repeat(v.reshape(n_comp, 1), width, axis=1)
    return v.reshape(n_comp, width)


def ghost_extend(field: np.ndarray, grid: Grid, bc: BoundarySpec, width: int) -> np.ndarray:
    """Return ``field`` padded with ``width`` ghost nodes on each side."""
    if width < 1:
        raise ValueError("ghost width must be >= 1")
    U = np.atleast_2d(np.asarray(field, dtype=float))
    n_comp, n = U.shape
    if n != grid.n_nodes:
        raise ValueError(f"field has {n} nodes, grid has {grid.n_nodes}")
    xe = grid.x_ext(width)
    out = np.empty((n_comp, n + 2 * width))
    out[:, width:width + n] = U
    out[:, :width] = _side_values(bc.left, U[:, 0], bc.left_value, xe[:width], bc.sampler, n_comp, width)
    out[:, width + n:] = _side_values(bc.right, U[:, -1], bc.right_value, xe[width + n:], bc.sampler,
                                      n_comp, width)
    return out


def l1_error(a: np.ndarray, b: np.ndarray, grid: Grid) -> np.ndarray:
    """Per-component discrete L1 norm ``dx * sum_i |a_i - b_i|`` over interior nodes."""
    a = np.atleast_2d(np.asarray(a, dtype=float))
    b = np.atleast_2d(np.asarray(b, dtype=float))
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return grid.dx * np.abs(a - b).sum(axis=1)


def convergence_order(errors: Sequence[float], n_cells: Sequence[int]) -> list[float | None | str]:
    """Observed orders ``log2(e_{j-1} / e_j)`` along a refinement-by-2 ladder.

    The first entry is ``None``; pairs with a vanishing error are reported as
    ``"exact"``.
    """
    if len(errors) != len(n_cells):
        raise ValueError("errors and n_cells must have equal length")
    out: list[float | None | str] = [None]
    for j in range(1, len(errors)):
        ratio = n_cells[j] / n_cells[j - 1]
        if not math.isclose(ratio, 2.0):
            raise ValueError(f"meshes must refine by a factor 2 (got {n_cells[j - 1]} -> {n_cells[j]})")
        e0, e1 = float(errors[j - 1]), float(errors[j])
        if e1 == 0.0 or e0 == 0.0:
            out.append("exact")
        else:
            out.append(math.log2(e0 / e1))
    return out
