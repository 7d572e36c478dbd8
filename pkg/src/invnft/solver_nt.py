"""Nystrom-Trench (NT) inverse NFT.

Rectangular-rule discretization of the Marchenko system at ``t_m`` with
``L = m`` nodes ``alpha_i = i * delta_alpha`` (``delta_t = delta_alpha / 2``).
Ordering the unknowns as ``[B1(alpha_0..alpha_{L-1}), B2(alpha_{L-1}..alpha_0)]``
turns the system into a ``2L x 2L`` non-Hermitian Toeplitz system::

    [ I          delta * T^H ] [B1]   [ 0 ]
    [ -delta * T  I          ] [v ] = [-f ]

with ``T`` the lower-triangular Toeplitz matrix of ``F_0..F_{L-1}`` and
``f = F_0..F_{L-1}``.  Interleaving ``(B1_k, v_k)`` instead gives a block
Toeplitz matrix with 2x2 blocks whose leading principal sections are exactly
the systems at ``t_1, t_2, ...``.  :func:`nt_inverse_nft` grows the Trench
recursion for the inverse of those sections one block at a time.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, MethodConstraintError, SingularSystemError
from .kernels import KernelGrid, SolutionTrace, time_grid
from .spectral import OpCounter

__all__ = [
    "ToeplitzSystem",
    "assemble_toeplitz_system",
    "trench_solve",
    "nt_inverse_nft",
    "dense_glme_solve",
    "PIVOT_TOL",
]

PIVOT_TOL = 1e-13


@dataclass(frozen=True)
class ToeplitzSystem:
    """``T[i][k] = first_column[i - k]`` for ``i >= k``, ``first_row[k - i]`` otherwise."""

    first_column: np.ndarray
    first_row: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        col = np.asarray(self.first_column, dtype=complex)
        row = np.asarray(self.first_row, dtype=complex)
        rhs = np.asarray(self.rhs, dtype=complex)
        if col.ndim != 1 or col.size == 0 or row.shape != col.shape or rhs.shape != col.shape:
            raise InvalidArgumentError("first_column, first_row and rhs must be equal-length vectors")
        if col[0] != row[0]:
            raise InvalidArgumentError("first_column[0] and first_row[0] must coincide")
        object.__setattr__(self, "first_column", col)
        object.__setattr__(self, "first_row", row)
        object.__setattr__(self, "rhs", rhs)

    @property
    def n(self) -> int:
        return self.first_column.size

    def entry(self, d: int) -> complex:
        """Matrix value on the diagonal ``i - k = d``."""
        return self.first_column[d] if d >= 0 else self.first_row[-d]

    def to_dense(self) -> np.ndarray:
        i, k = np.indices((self.n, self.n))
        return np.where(i >= k, self.first_column[np.abs(i - k)], self.first_row[np.abs(i - k)])


def _check_m(kernel: KernelGrid, m: int) -> int:
    if int(m) != m or not 1 <= m <= kernel.n_f + 1:
        raise InvalidArgumentError(f"time index m={m} outside 1..{kernel.n_f + 1}")
    return int(m)


def assemble_toeplitz_system(kernel: KernelGrid, m: int) -> ToeplitzSystem:
    """Toeplitz form of the rectangular-rule Marchenko system at ``t_m = (m-1) delta_alpha / 2``.

    The last entry of the solution is ``B2(t_m, 0)``.
    """
    L = _check_m(kernel, m)
    d = kernel.delta_alpha
    F = kernel.samples[:L]
    col = np.zeros(2 * L, dtype=complex)
    row = np.zeros(2 * L, dtype=complex)
    col[0] = row[0] = 1.0
    col[L:] = -d * F
    row[L:] = d * np.conj(F)
    rhs = np.concatenate([np.zeros(L, dtype=complex), -F])
    return ToeplitzSystem(col, row, rhs)


def trench_solve(system: ToeplitzSystem, counter: OpCounter | None = None) -> np.ndarray:
    """Solve a general (non-Hermitian) Toeplitz system by the Levinson-Trench-Zohar recursion.

    Requires every leading principal minor to be nonsingular; O(n^2).
    """
    counter = counter if counter is not None else OpCounter()
    n = system.n
    col, row, y = system.first_column, system.first_row, system.rhs
    scale = max(np.abs(col).max(), np.abs(row).max())
    t0 = col[0]
    if abs(t0) < PIVOT_TOL * scale:
        raise SingularSystemError("leading 1x1 minor of Toeplitz system vanishes")
    f = np.array([1 / t0])
    b = f.copy()
    x = np.array([y[0] / t0])
    counter.add(2)
    for k in range(1, n):
        # t_{k-j} against the forward vector, t_{-(j+1)} against the backward vector
        lower = col[k:0:-1]
        upper = row[1:k + 1]
        eps_f = lower @ f
        eps_b = upper @ b
        pivot = 1 - eps_f * eps_b
        counter.add(2 * k + 1)
        if abs(pivot) < PIVOT_TOL:
            raise SingularSystemError(f"Trench recursion broke down at order {k + 1}")
        f_ext = np.append(f, 0)
        b_ext = np.insert(b, 0, 0)
        inv = 1 / pivot
        f, b = (f_ext - eps_f * b_ext) * inv, (b_ext - eps_b * f_ext) * inv
        counter.add(4 * (k + 1) + 1)
        resid = y[k] - lower @ x
        x = np.append(x, 0) + resid * b
        counter.add(2 * k + 1)
    return x


def _inv2(M: np.ndarray, scale: float, counter: OpCounter) -> np.ndarray:
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    if abs(det) < PIVOT_TOL * scale:
        raise SingularSystemError("2x2 pivot block of the Trench recursion is singular")
    counter.add(7)
    return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]]) / det


def nt_inverse_nft(kernel: KernelGrid, counter: OpCounter | None = None, c: int = 1) -> SolutionTrace:
    """NLSE solution on ``t_m = (m-1) delta_alpha / 2``, ``m = 1..N_F+1``.

    Block recursion on ``M_n`` (n 2x2 blocks ``R_{i-k}``)::

        M_n a = [0, ..., 0, Ea]   with a_{n-1} = I
        M_n b = [Eb, 0, ..., 0]   with b_0 = I

    so that ``b Eb^{-1}`` is the first block column of ``M_n^{-1}``.  Because
    the right-hand side equals ``(M_n e_0 - e_0) / delta_alpha``, the value
    ``u(t_n) = 2 B2(t_n, 0)`` is ``-(2/delta_alpha) (b_{n-1} Eb^{-1})[1, 0]``.
    """
    if c != 1:
        raise MethodConstraintError("NT requires N_u = N_F, i.e. delta_t = delta_alpha / 2 (c = 1)")
    counter = counter if counter is not None else OpCounter()
    grid = time_grid(kernel, 1)
    d = kernel.delta_alpha
    dF = d * kernel.samples
    dFc = np.conj(dF)
    counter.add(dF.size)
    scale = 1.0 + np.abs(dF).max()

    R0 = np.array([[1.0, dFc[0]], [-dF[0], 1.0]])
    a = np.eye(2, dtype=complex)[None].copy()
    b = a.copy()
    Ea = R0.copy()
    Eb = R0.copy()
    u = np.empty(grid.n_points, dtype=complex)
    Eb_inv = _inv2(Eb, scale, counter)
    u[0] = -2 / d * Eb_inv[1, 0]
    for n in range(1, kernel.n_f + 1):
        # R_{-j} = [[0, conj dF_j], [0, 0]],  R_j = [[0, 0], [-dF_j, 0]]  (j >= 1)
        ga = np.zeros((2, 2), dtype=complex)
        ga[0] = dFc[1:n + 1] @ a[:, 1, :]
        gb = np.zeros((2, 2), dtype=complex)
        gb[1] = -(dF[n:0:-1] @ b[:, 0, :])
        counter.add(4 * n)
        Ka = -_inv2(Eb, scale, counter) @ ga
        Kb = -_inv2(Ea, scale, counter) @ gb
        counter.add(16)
        a_new = np.zeros((n + 1, 2, 2), dtype=complex)
        a_new[1:] = a
        a_new[:n] += b @ Ka
        b_new = np.zeros((n + 1, 2, 2), dtype=complex)
        b_new[:n] = b
        b_new[1:] += a @ Kb
        counter.add(16 * n)
        Ea = Ea + gb @ Ka
        Eb = Eb + ga @ Kb
        counter.add(16)
        a, b = a_new, b_new
        Eb_inv = _inv2(Eb, scale, counter)
        u[n] = -2 / d * (b[n, 1, 0] * Eb_inv[0, 0] + b[n, 1, 1] * Eb_inv[1, 0])
        counter.add(3)
    return SolutionTrace(grid, u)


def dense_glme_solve(kernel: KernelGrid, m: int) -> complex:
    """Brute-force reference value of ``u(t_m)`` from the dense ``2L x 2L`` block system."""
    L = _check_m(kernel, m)
    d = kernel.delta_alpha
    F = kernel.samples
    idx = L - 1 - np.add.outer(np.arange(L), np.arange(L))
    H = np.where(idx >= 0, F[np.clip(idx, 0, None)], 0)
    A = np.block([[np.eye(L), d * np.conj(H)], [-d * H, np.eye(L)]])
    rhs = np.concatenate([np.zeros(L), -F[L - 1::-1]])
    try:
        z = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from exc
    return complex(2 * z[L])
