"""Iterative-convolution (IC) inverse NFT and its single-iteration IC1 variant.

At each ``t_m`` the Marchenko integrals are evaluated as FFT convolutions with
the kernel (rectangular rule, weight ``delta_alpha``), alternating

    B2 <- -F(2t - alpha) + (F * B1)(2t - alpha)
    B1 <- -(conj(F) * B2)(2t - alpha)

starting from the ``B1`` found at ``t_{m-1}`` (zero-extended at large alpha).
Convergence is not guaranteed in general; blow-up raises :class:`DivergenceError`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, InvalidArgumentError
from .kernels import KernelGrid, SolutionTrace, time_grid
from .spectral import OpCounter, conjugate_convolution, linear_convolution

__all__ = ["MarchenkoState", "ic_iteration", "ic_inverse_nft", "ic1_inverse_nft", "DIVERGENCE_LIMIT"]

DIVERGENCE_LIMIT = 1e12


@dataclass(frozen=True)
class MarchenkoState:
    B1: np.ndarray
    B2: np.ndarray
    m: int

    def __post_init__(self):
        B1 = np.asarray(self.B1, dtype=complex)
        B2 = np.asarray(self.B2, dtype=complex)
        if B1.ndim != 1 or B1.shape != B2.shape:
            raise InvalidArgumentError("B1 and B2 must be equal-length vectors")
        object.__setattr__(self, "B1", B1)
        object.__setattr__(self, "B2", B2)


def _weighted(kernel: KernelGrid, counter: OpCounter) -> np.ndarray:
    counter.add(kernel.samples.size)
    return kernel.delta_alpha * kernel.samples


def ic_iteration(
    kernel: KernelGrid,
    m: int,
    c: int,
    state: MarchenkoState,
    counter: OpCounter | None = None,
    _dF: np.ndarray | None = None,
) -> MarchenkoState:
    """One IC pass at ``t_m`` on the ``L = c(m-1)+1`` nodes; ``state.B2`` is not read."""
    counter = counter if counter is not None else OpCounter()
    L = c * (m - 1) + 1
    if state.B1.size != L:
        raise InvalidArgumentError(f"state has {state.B1.size} nodes, t_{m} with c={c} needs {L}")
    if L > kernel.n_f + 1:
        raise InvalidArgumentError(f"t_{m} lies outside the kernel window")
    F = kernel.samples[:L]
    dF = (_dF if _dF is not None else _weighted(kernel, counter))[:L]
    B2 = -F[::-1] + linear_convolution(dF, state.B1, counter)[L - 1::-1]
    B1 = -conjugate_convolution(dF, B2, counter)[L - 1::-1]
    return MarchenkoState(B1, B2, m)


def ic_inverse_nft(
    kernel: KernelGrid,
    c: int = 1,
    k_max: int = 3,
    counter: OpCounter | None = None,
    warm_start: bool = True,
) -> SolutionTrace:
    """IC solution on ``delta_t = c * delta_alpha / 2`` with ``k_max`` passes per time."""
    if int(k_max) != k_max or k_max < 1:
        raise InvalidArgumentError(f"k_max must be a positive integer, got {k_max}")
    counter = counter if counter is not None else OpCounter()
    grid = time_grid(kernel, c)
    dF = _weighted(kernel, counter)
    u = np.empty(grid.n_points, dtype=complex)
    B1 = np.zeros(0, dtype=complex)
    for m in range(1, grid.n_points + 1):
        L = c * (m - 1) + 1
        start = np.zeros(L, dtype=complex)
        if warm_start:
            start[:B1.size] = B1
        state = MarchenkoState(start, np.zeros(L, dtype=complex), m)
        for k in range(1, k_max + 1):
            state = ic_iteration(kernel, m, c, state, counter, _dF=dF)
            peak = np.abs(state.B2).max()
            if not np.isfinite(peak) or peak > DIVERGENCE_LIMIT:
                raise DivergenceError(f"IC iteration diverged at m={m}, k={k} (|B2| = {peak:.3g})", m=m, k=k)
        B1 = state.B1
        u[m - 1] = 2 * state.B2[0]
    return SolutionTrace(grid, u)


def ic1_inverse_nft(kernel: KernelGrid, counter: OpCounter | None = None) -> SolutionTrace:
    """IC with a single pass and ``delta_t = delta_alpha`` (c = 2)."""
    return ic_inverse_nft(kernel, c=2, k_max=1, counter=counter)
