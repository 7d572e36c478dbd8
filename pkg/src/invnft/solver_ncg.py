"""Nystrom conjugate-gradient (NCG) inverse NFT.

Composite Simpson weights ``w`` on the integration variable.  Eliminating B1
from the discretized Marchenko system gives ``(I + H W conj(H) W) b2 = -f``;
with ``S = sqrt(W)`` and ``y = S b2`` this becomes the Hermitian positive
definite system ``(I + G G^H) y = -S f``, ``G = S H S``, which is solved by
plain conjugate gradient.  Hankel products are evaluated as FFT convolutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidArgumentError, NumericBreakdownError
from .kernels import KernelGrid, SolutionTrace, time_grid
from .spectral import OpCounter, conjugate_convolution, linear_convolution

__all__ = [
    "QuadratureWeights",
    "CgConfig",
    "simpson_weights",
    "hankel_apply",
    "apply_marchenko_operator",
    "conjugate_gradient",
    "ncg_inverse_nft",
]


@dataclass(frozen=True)
class QuadratureWeights:
    weights: np.ndarray

    def __len__(self):
        return self.weights.size


@dataclass(frozen=True)
class CgConfig:
    k_max: int = 6
    tol: float = 0.0

    def __post_init__(self):
        if int(self.k_max) != self.k_max or self.k_max < 1:
            raise InvalidArgumentError(f"k_max must be a positive integer, got {self.k_max}")
        if self.tol < 0:
            raise InvalidArgumentError("tol must be non-negative")


def simpson_weights(n_points: int, h: float) -> QuadratureWeights:
    """Composite Simpson weights; an odd panel count closes with Simpson 3/8 on the last three panels."""
    if int(n_points) != n_points or n_points < 2:
        raise InvalidArgumentError("Simpson weights need at least two points")
    n = int(n_points)
    w = np.zeros(n)
    if n == 2:
        w[:] = h / 2
        return QuadratureWeights(w)
    panels = n - 1
    head = n if panels % 2 == 0 else n - 3
    if head >= 3:
        w[1:head - 1:2] = 4 * h / 3
        w[2:head - 1:2] = 2 * h / 3
        w[0] += h / 3
        w[head - 1] += h / 3
    if panels % 2:
        w[n - 4:] += np.array([3, 9, 9, 3]) * h / 8
    return QuadratureWeights(w)


def hankel_apply(F: np.ndarray, x: np.ndarray, counter: OpCounter | None = None, conj: bool = False) -> np.ndarray:
    """``y_i = sum_j F'_{L-1-i-j} x_j`` (upper-left triangular Hankel), one FFT convolution.

    ``conj=True`` uses ``conj(F)`` instead.
    """
    L = x.size
    conv = conjugate_convolution if conj else linear_convolution
    return conv(F[:L], x, counter)[L - 1::-1]


def apply_marchenko_operator(
    kernel: KernelGrid,
    weights: QuadratureWeights,
    x: np.ndarray,
    counter: OpCounter | None = None,
) -> np.ndarray:
    """``(I + S H W conj(H) S) x`` on the ``L = len(x)`` node grid ``[0, (L-1) delta_alpha]``."""
    x = np.asarray(x, dtype=complex)
    w = weights.weights
    if x.ndim != 1 or w.shape != x.shape:
        raise InvalidArgumentError("operand and weights must have the same length")
    if x.size > kernel.n_f + 1:
        raise InvalidArgumentError("operand longer than the kernel grid")
    counter = counter if counter is not None else OpCounter()
    s = np.sqrt(w)
    F = kernel.samples
    z = hankel_apply(F, s * x, counter, conj=True)
    z = hankel_apply(F, w * z, counter)
    counter.add(3 * x.size)
    return x + s * z


def conjugate_gradient(
    apply: Callable[[np.ndarray], np.ndarray],
    rhs: np.ndarray,
    cfg: CgConfig = CgConfig(),
    counter: OpCounter | None = None,
    x0: np.ndarray | None = None,
) -> tuple[np.ndarray, int]:
    """Conjugate gradient for a Hermitian positive definite ``apply``.

    Runs ``cfg.k_max`` iterations unless the relative residual drops to
    ``cfg.tol`` first.  ``apply`` is responsible for its own op counting.
    """
    counter = counter if counter is not None else OpCounter()
    rhs = np.asarray(rhs, dtype=complex)
    n = rhs.size
    x = np.zeros(n, dtype=complex) if x0 is None else np.array(x0, dtype=complex)
    r = rhs - apply(x)
    rr = np.vdot(r, r).real
    counter.add(n)
    stop = (cfg.tol * np.linalg.norm(rhs)) ** 2
    if rr <= stop:
        return x, 0
    p = r.copy()
    k = 0
    while k < cfg.k_max:
        k += 1
        Ap = apply(p)
        pAp = np.vdot(p, Ap).real
        if not np.isfinite(pAp) or pAp <= 0:
            raise NumericBreakdownError(f"conjugate gradient broke down at iteration {k} (p^H A p = {pAp})")
        alpha = rr / pAp
        x += alpha * p
        r -= alpha * Ap
        rr_new = np.vdot(r, r).real
        counter.add(5 * n)
        if not np.isfinite(rr_new):
            raise NumericBreakdownError(f"non-finite residual at iteration {k}")
        if rr_new <= stop:
            break
        p = r + (rr_new / rr) * p
        rr = rr_new
    return x, k


def ncg_inverse_nft(
    kernel: KernelGrid,
    c: int = 1,
    cfg: CgConfig = CgConfig(),
    counter: OpCounter | None = None,
) -> SolutionTrace:
    """Solve independently at each ``t_m`` of the grid ``delta_t = c * delta_alpha / 2``."""
    counter = counter if counter is not None else OpCounter()
    grid = time_grid(kernel, c)
    F = kernel.samples
    u = np.empty(grid.n_points, dtype=complex)
    u[0] = -2 * F[0]
    for m in range(2, grid.n_points + 1):
        L = c * (m - 1) + 1
        weights = simpson_weights(L, kernel.delta_alpha)
        s = np.sqrt(weights.weights)
        rhs = -s * F[L - 1::-1]
        y, _ = conjugate_gradient(
            lambda v: apply_marchenko_operator(kernel, weights, v, counter), rhs, cfg, counter
        )
        u[m - 1] = 2 * y[0] / s[0]
    return SolutionTrace(grid, u)
