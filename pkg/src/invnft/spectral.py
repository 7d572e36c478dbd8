"""FFT-based linear convolution with complex-multiplication accounting.

Transforms are delegated to :mod:`numpy.fft`.  Each transform is charged
``ceil((N/2) log2 N)`` complex products.  Two tallies are kept: ``model``
charges the nominal length a transform is needed at (the length the
complexity formulas assume), ``actual`` charges the power-of-two length the
convolution is really padded to.  Non-FFT products are charged identically to
both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError

__all__ = [
    "OpCounter",
    "fft_cost",
    "fft",
    "ifft",
    "linear_convolution",
    "conjugate_convolution",
    "next_pow2",
]


def fft_cost(n: int) -> int:
    if n < 1:
        raise InvalidArgumentError("transform length must be positive")
    return math.ceil(n / 2 * math.log2(n))


def next_pow2(n: int) -> int:
    return 1 << max(n - 1, 0).bit_length()


@dataclass
class OpCounter:
    model: int = 0
    actual: int = 0

    @property
    def complex_mults(self) -> int:
        return self.model

    def add(self, n: int, actual: int | None = None) -> None:
        self.model += int(n)
        self.actual += int(n if actual is None else actual)

    def add_fft(self, nominal: int, actual: int | None = None) -> None:
        self.model += fft_cost(nominal)
        self.actual += fft_cost(nominal if actual is None else actual)

    def merge(self, other: "OpCounter") -> None:
        self.model += other.model
        self.actual += other.actual


def _as_vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise InvalidArgumentError("expected a non-empty one-dimensional array")
    return v


def fft(v, counter: OpCounter | None = None) -> np.ndarray:
    """Forward DFT with the ``exp(-2j*pi*k*n/N)`` convention."""
    v = _as_vector(v)
    if counter is not None:
        counter.add_fft(v.size)
    return np.fft.fft(v)


def ifft(v, counter: OpCounter | None = None) -> np.ndarray:
    v = _as_vector(v)
    if counter is not None:
        counter.add_fft(v.size)
    return np.fft.ifft(v)


def linear_convolution(a, b, counter: OpCounter | None = None) -> np.ndarray:
    """``out[n] = sum_j a[j] * b[n - j]``, length ``len(a) + len(b) - 1``, via zero-padded FFTs."""
    a = _as_vector(a)
    b = _as_vector(b)
    n = a.size + b.size - 1
    n_pad = next_pow2(n)
    if counter is not None:
        for _ in range(3):
            counter.add_fft(n, n_pad)
        counter.add(n, n_pad)
    return np.fft.ifft(np.fft.fft(a, n_pad) * np.fft.fft(b, n_pad))[:n]


def conjugate_convolution(a, b, counter: OpCounter | None = None) -> np.ndarray:
    """Linear convolution of ``conj(a)`` with ``b``."""
    return linear_convolution(np.conj(_as_vector(a)), b, counter)
