"""Left/right-biased WENO reconstructions of order 3 and 5.

Windows are passed along the last axis, so any number of leading batch axes
(components, nodes) is reconstructed in one call. The data are read as cell
averages of the underlying function whose interface value is returned; this
is the reading under which the finite-difference flux of Shu and Osher uses
the reconstruction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["ReconstructionConfig", "reconstruct_left", "reconstruct_right", "nonlinear_weights"]

WEIGHT_MODES = ("nonlinear", "linear")

# Optimal linear weights and sub-stencil coefficients for the value at x_{i+1/2}.
_D3 = np.array([1.0 / 3.0, 2.0 / 3.0])
_D5 = np.array([0.1, 0.6, 0.3])


@dataclass(frozen=True)
class ReconstructionConfig:
    k: int = 1
    weight_mode: str = "nonlinear"
    epsilon: float = 1e-6

    def __post_init__(self):
        if self.k not in (1, 2):
            raise ValueError(f"k must be 1 (WENO3) or 2 (WENO5), got {self.k}")
        if self.weight_mode not in WEIGHT_MODES:
            raise ValueError(f"weight_mode must be one of {WEIGHT_MODES}")
        if self.weight_mode == "nonlinear" and not self.epsilon > 0:
            raise ValueError("epsilon must be positive for nonlinear weights")

    @property
    def order(self) -> int:
        return 2 * self.k + 1

    @property
    def width(self) -> int:
        return 2 * self.k + 1

    @classmethod
    def for_order(cls, p: int, weight_mode: str = "nonlinear", epsilon: float = 1e-6):
        if p not in (3, 5):
            raise ValueError(f"order must be 3 or 5, got {p}")
        return cls((p - 1) // 2, weight_mode, epsilon)


def _candidates_and_indicators(w, k):
    if k == 1:
        a, b, c = w[..., 0], w[..., 1], w[..., 2]
        q = (0.5 * (3.0 * b - a), 0.5 * (b + c))
        beta = ((b - a) ** 2, (c - b) ** 2)
        return q, beta, _D3
    a, b, c, d, e = (w[..., j] for j in range(5))
    q = (
        (2.0 * a - 7.0 * b + 11.0 * c) / 6.0,
        (-b + 5.0 * c + 2.0 * d) / 6.0,
        (2.0 * c + 5.0 * d - e) / 6.0,
    )
    beta = (
        13.0 / 12.0 * (a - 2.0 * b + c) ** 2 + 0.25 * (a - 4.0 * b + 3.0 * c) ** 2,
        13.0 / 12.0 * (b - 2.0 * c + d) ** 2 + 0.25 * (b - d) ** 2,
        13.0 / 12.0 * (c - 2.0 * d + e) ** 2 + 0.25 * (3.0 * c - 4.0 * d + e) ** 2,
    )
    return q, beta, _D5


def _check_window(w, config):
    w = np.asarray(w, dtype=float)
    if w.shape[-1] != config.width:
        raise ValueError(f"window length must be {config.width} for k={config.k}, got {w.shape[-1]}")
    return w


def nonlinear_weights(window, config: ReconstructionConfig) -> np.ndarray:
    """Jiang-Shu weights (stacked on the last axis) for a left-biased window."""
    w = _check_window(window, config)
    _, beta, d = _candidates_and_indicators(w, config.k)
    if config.weight_mode == "linear":
        return np.broadcast_to(d, w.shape[:-1] + d.shape).copy()
    alpha = np.stack([dr / (config.epsilon + br) ** 2 for dr, br in zip(d, beta)], axis=-1)
    return alpha / alpha.sum(axis=-1, keepdims=True)


def reconstruct_left(window, config: ReconstructionConfig = ReconstructionConfig()) -> np.ndarray:
    """Value at ``x_{i+1/2}`` from the window ``x_{i-k}, ..., x_{i+k}``."""
    w = _check_window(window, config)
    q, beta, d = _candidates_and_indicators(w, config.k)
    if config.weight_mode == "linear":
        out = d[0] * q[0]
        for dr, qr in zip(d[1:], q[1:]):
            out = out + dr * qr
        return out
    eps = config.epsilon
    alpha = [dr / (eps + br) ** 2 for dr, br in zip(d, beta)]
    total = alpha[0]
    num = alpha[0] * q[0]
    for ar, qr in zip(alpha[1:], q[1:]):
        total = total + ar
        num = num + ar * qr
    return num / total


def reconstruct_right(window, config: ReconstructionConfig = ReconstructionConfig()) -> np.ndarray:
    """Value at ``x_{i-1/2}`` from the window ``x_{i-k}, ..., x_{i+k}`` (mirror of the left one)."""
    w = _check_window(window, config)
    return reconstruct_left(w[..., ::-1], config)
