"""Error measures and closed-form complexity models (complex products)."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidArgumentError
from .kernels import PulseParams, SolutionTrace, analytic_solution

__all__ = [
    "Method",
    "ExperimentRecord",
    "rmse",
    "error_profile",
    "complexity_nt",
    "complexity_ncg",
    "complexity_ic",
    "complexity",
]


class Method(str, enum.Enum):
    NT = "NT"
    NCG = "NCG"
    IC = "IC"
    IC1 = "IC1"

    @classmethod
    def parse(cls, name) -> "Method":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().upper())
        except ValueError:
            raise InvalidArgumentError(f"unknown method {name!r}; expected one of NT, NCG, IC, IC1") from None


@dataclass(frozen=True)
class ExperimentRecord:
    """One solver run (or one formula evaluation when the op tallies are ``None``)."""

    method: Method
    delta_alpha: float
    delta_t: float
    k_max: int
    rmse: float
    model_ops: Optional[int]
    actual_ops: Optional[int]
    formula_ops: int
    trace: Optional[SolutionTrace] = None
    k: int = 0


def error_profile(trace: SolutionTrace, params: PulseParams) -> np.ndarray:
    return np.abs(trace.values - analytic_solution(params, trace.t))


def rmse(trace: SolutionTrace, params: PulseParams) -> float:
    """Root-mean-square error against the analytic pulse over every grid point, end points included."""
    return float(np.sqrt(np.mean(error_profile(trace, params) ** 2)))


def _check_sizes(n_u, n_f, c, k_max):
    for name, v, lo in (("N_u", n_u, 0), ("N_F", n_f, 1), ("c", c, 1), ("k_max", k_max, 0)):
        if int(v) != v or v < lo:
            raise InvalidArgumentError(f"{name} must be an integer >= {lo}, got {v}")


def complexity_nt(n_f: int) -> int:
    return 11 * int(n_f) ** 2


def complexity_ncg(n_u: int, n_f: int, c: int, k_max: int) -> int:
    _check_sizes(n_u, n_f, c, k_max)
    L = c * np.arange(n_u + 1, dtype=float) + 1
    total = (1 + k_max) * np.sum(6 * L * np.log2(2 * L)) + n_u * n_f * (4 + 6 * k_max)
    return int(round(total))


def complexity_ic(n_u: int, n_f: int, c: int, k_max: int) -> int:
    _check_sizes(n_u, n_f, c, k_max)
    n = 2 * c * np.arange(n_u + 1, dtype=float) + 1
    total = k_max * np.sum(3 * n * np.log2(n)) + 2 * k_max * n_u * n_f
    return int(round(total))


def complexity(method: Method, n_f: int, c: int, k_max: int) -> int:
    """Closed-form op count of ``method`` on ``N_F`` kernel points with step ratio ``c``."""
    method = Method.parse(method)
    if method is Method.NT:
        return complexity_nt(n_f)
    n_u = math.floor(n_f / c)
    if method is Method.NCG:
        return complexity_ncg(n_u, n_f, c, k_max)
    return complexity_ic(n_u, n_f, c, k_max)
