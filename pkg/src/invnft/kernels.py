"""Grids, the analytic single-pulse test signal and GLME kernel construction.

The kernel ``F`` is stored on the uniform grid ``y_j = j * delta_alpha``,
``j = 0..N_F``, covering ``[0, 2T]`` with both end points included.  Every
solver treats ``F`` as zero for negative arguments (the causal extension).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidArgumentError, NumericInputError

__all__ = [
    "KernelGrid",
    "TimeGrid",
    "SolutionTrace",
    "PulseParams",
    "sample_analytic_kernel",
    "analytic_solution",
    "kernel_from_reflection",
    "time_grid",
]

_REL_TOL = 1e-9


@dataclass(frozen=True)
class KernelGrid:
    samples: np.ndarray
    delta_alpha: float
    half_window: float

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=complex)
        object.__setattr__(self, "samples", samples)
        if self.delta_alpha <= 0 or self.half_window <= 0:
            raise InvalidArgumentError("delta_alpha and half_window must be positive")
        n_f = samples.size - 1
        if n_f < 1:
            raise InvalidArgumentError("a kernel grid needs at least two samples")
        if abs(n_f * self.delta_alpha - 2 * self.half_window) > _REL_TOL * 2 * self.half_window:
            raise InvalidArgumentError(
                f"{samples.size} samples with step {self.delta_alpha} do not cover [0, {2 * self.half_window}]"
            )
        if not np.all(np.isfinite(samples)):
            raise NumericInputError("kernel samples must be finite")

    @property
    def n_f(self) -> int:
        return self.samples.size - 1

    @property
    def y(self) -> np.ndarray:
        return self.delta_alpha * np.arange(self.n_f + 1)


@dataclass(frozen=True)
class TimeGrid:
    """Output grid ``t_m = (m-1) * delta_t`` on ``[0, T]`` with ``delta_t = c * delta_alpha / 2``."""

    delta_t: float
    n_points: int
    c: int

    @property
    def n_u(self) -> int:
        return self.n_points - 1

    @property
    def t(self) -> np.ndarray:
        return self.delta_t * np.arange(self.n_points)


def time_grid(kernel: KernelGrid, c: int) -> TimeGrid:
    """Build the solution grid for step ratio ``c``; ``c`` must divide ``N_F``."""
    if int(c) != c or c < 1:
        raise InvalidArgumentError(f"c must be a positive integer, got {c!r}")
    c = int(c)
    if kernel.n_f % c:
        raise InvalidArgumentError(f"c={c} does not divide N_F={kernel.n_f}")
    return TimeGrid(delta_t=c * kernel.delta_alpha / 2, n_points=kernel.n_f // c + 1, c=c)


@dataclass(frozen=True)
class SolutionTrace:
    times: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", values)
        if values.shape != (self.times.n_points,):
            raise InvalidArgumentError("trace length does not match its time grid")
        if not np.all(np.isfinite(values)):
            raise NumericInputError("trace contains non-finite values")

    @property
    def t(self) -> np.ndarray:
        return self.times.t


@dataclass(frozen=True)
class PulseParams:
    """Parameters of the single-pulse test signal (``a > 0``, ``|nu| <= 1``)."""

    a: float = 1.0
    nu: float = 1.0

    def __post_init__(self):
        if not self.a > 0:
            raise InvalidArgumentError(f"pulse parameter a must be positive, got {self.a}")
        if not abs(self.nu) <= 1:
            raise InvalidArgumentError(f"pulse parameter nu must lie in [-1, 1], got {self.nu}")

    @property
    def sigma(self) -> float:
        return float(np.sqrt(self.nu**2 + 1))


def sample_analytic_kernel(params: PulseParams, T: float, n_f: int) -> KernelGrid:
    """Sample ``F(y) = a*nu*exp(-a*y)`` on ``N_F + 1`` points of ``[0, 2T]``."""
    if not T > 0 or int(n_f) != n_f or n_f < 1:
        raise InvalidArgumentError(f"need T > 0 and integer N_F >= 1, got T={T}, N_F={n_f}")
    n_f = int(n_f)
    delta = 2 * T / n_f
    y = delta * np.arange(n_f + 1)
    return KernelGrid(params.a * params.nu * np.exp(-params.a * y), delta, T)


def analytic_solution(params: PulseParams, t):
    """Exact NLSE solution matching :func:`sample_analytic_kernel` (scalar or array ``t``)."""
    t = np.asarray(t, dtype=float)
    a, nu, sigma = params.a, params.nu, params.sigma
    if nu == 0:
        out = np.zeros(t.shape, dtype=complex)
    else:
        with np.errstate(over="ignore"):
            den = (sigma - 1) ** 2 * np.exp(-2 * sigma * a * t) + nu**2 * np.exp(2 * sigma * a * t)
        out = (-4 * a * nu * sigma * (sigma - 1) / den).astype(complex)
    return out[()] if out.ndim == 0 else out


def kernel_from_reflection(
    r: Callable[[np.ndarray], np.ndarray],
    T: float,
    n_f: int,
    lambda_max: float,
    n_lambda: int,
    chunk: int = 64,
) -> KernelGrid:
    """Synthesize ``F(y) = (1/2pi) int r(lambda) exp(-j lambda y) d lambda`` on the kernel grid.

    Trapezoidal rule on ``n_lambda + 1`` uniform nodes of ``[-lambda_max, lambda_max]``.
    ``r`` is called once with the whole node array.  Where F jumps (at ``y = 0``
    for a causal pulse) the quadrature converges to the mid-point value.
    """
    if not T > 0 or int(n_f) != n_f or n_f < 1:
        raise InvalidArgumentError(f"need T > 0 and integer N_F >= 1, got T={T}, N_F={n_f}")
    if not lambda_max > 0 or int(n_lambda) != n_lambda or n_lambda < 2:
        raise InvalidArgumentError("need lambda_max > 0 and integer n_lambda >= 2")
    n_f, n_lambda = int(n_f), int(n_lambda)
    lam = np.linspace(-lambda_max, lambda_max, n_lambda + 1)
    d_lam = lam[1] - lam[0]
    rv = np.broadcast_to(np.asarray(r(lam), dtype=complex), lam.shape)
    if not np.all(np.isfinite(rv)):
        raise NumericInputError("reflection coefficient returned non-finite values")
    w = np.full(lam.shape, d_lam)
    w[0] = w[-1] = d_lam / 2
    rw = rv * w / (2 * np.pi)
    delta = 2 * T / n_f
    y = delta * np.arange(n_f + 1)
    samples = np.empty(n_f + 1, dtype=complex)
    for start in range(0, n_f + 1, chunk):
        ys = y[start:start + chunk]
        samples[start:start + chunk] = np.exp(-1j * np.outer(ys, lam)) @ rw
    return KernelGrid(samples, delta, T)
