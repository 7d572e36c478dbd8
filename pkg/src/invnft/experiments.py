"""Running the four methods, parameter sweeps and fixed-accuracy operating points."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidArgumentError, MethodConstraintError, OutOfRangeError
from .kernels import KernelGrid, PulseParams, sample_analytic_kernel
from .metrics import ExperimentRecord, Method, complexity, rmse
from .solver_ic import ic_inverse_nft
from .solver_ncg import CgConfig, ncg_inverse_nft
from .solver_nt import nt_inverse_nft
from .spectral import OpCounter

__all__ = [
    "DEFAULT_K_MAX",
    "DEFAULT_C",
    "n_f_for",
    "default_c",
    "default_k_max",
    "solve",
    "run_method",
    "accuracy_sweep",
    "convergence_study",
    "operating_delta_alpha",
    "fixed_accuracy_complexity",
    "sort_records",
]

DEFAULT_K_MAX = {Method.NT: 0, Method.NCG: 6, Method.IC: 3, Method.IC1: 1}
DEFAULT_C = {Method.NT: 1, Method.NCG: 1, Method.IC: 1, Method.IC1: 2}


def default_c(method) -> int:
    return DEFAULT_C[Method.parse(method)]


def default_k_max(method) -> int:
    return DEFAULT_K_MAX[Method.parse(method)]


def n_f_for(delta_alpha: float, T: float) -> int:
    """Even number of kernel intervals closest to ``2T / delta_alpha``."""
    if not delta_alpha > 0 or not T > 0:
        raise InvalidArgumentError("delta_alpha and T must be positive")
    return max(2, 2 * int(round(T / delta_alpha)))


def _resolve(method: Method, c, k_max):
    c = default_c(method) if c is None else int(c)
    k_max = default_k_max(method) if k_max is None else int(k_max)
    if method is Method.NT and c != 1:
        raise MethodConstraintError("NT runs only at delta_t = delta_alpha / 2 (c = 1)")
    if method is Method.IC1 and (c != 2 or k_max != 1):
        raise MethodConstraintError("IC1 is fixed to delta_t = delta_alpha (c = 2) and k_max = 1")
    if method is Method.NT:
        k_max = 0
    return c, k_max


def solve(method, kernel: KernelGrid, c=None, k_max=None, counter: OpCounter | None = None):
    """Dispatch to the solver for ``method``; returns a :class:`SolutionTrace`."""
    method = Method.parse(method)
    c, k_max = _resolve(method, c, k_max)
    if method is Method.NT:
        return nt_inverse_nft(kernel, counter)
    if method is Method.NCG:
        return ncg_inverse_nft(kernel, c, CgConfig(k_max=k_max), counter)
    return ic_inverse_nft(kernel, c, k_max, counter)


def run_method(
    method,
    params: PulseParams = PulseParams(),
    T: float = 3.0,
    delta_alpha: float = 0.01,
    c: int | None = None,
    k_max: int | None = None,
    keep_trace: bool = False,
    n_f: int | None = None,
) -> ExperimentRecord:
    method = Method.parse(method)
    c, k_max = _resolve(method, c, k_max)
    n_f = n_f_for(delta_alpha, T) if n_f is None else int(n_f)
    kernel = sample_analytic_kernel(params, T, n_f)
    counter = OpCounter()
    trace = solve(method, kernel, c, k_max or None, counter)
    return ExperimentRecord(
        method=method,
        delta_alpha=kernel.delta_alpha,
        delta_t=trace.times.delta_t,
        k_max=k_max,
        rmse=rmse(trace, params),
        model_ops=counter.model,
        actual_ops=counter.actual,
        formula_ops=complexity(method, n_f, c, k_max),
        trace=trace if keep_trace else None,
        k=k_max,
    )


def sort_records(records: Iterable[ExperimentRecord]) -> list[ExperimentRecord]:
    order = {m: i for i, m in enumerate(Method)}
    return sorted(records, key=lambda r: (order[r.method], r.delta_alpha, r.delta_t, r.k))


def _run_job(job):
    return run_method(**job)


def _run_all(jobs: Sequence[dict], n_jobs: int = 1) -> list[ExperimentRecord]:
    if n_jobs <= 1 or len(jobs) <= 1:
        return [_run_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_jobs) as pool:
        return list(pool.map(_run_job, jobs))


def accuracy_sweep(
    methods: Iterable = tuple(Method),
    delta_alphas: Iterable[float] = (0.04, 0.02, 0.01, 0.005),
    params: PulseParams = PulseParams(),
    T: float = 3.0,
    c: dict | None = None,
    k_max: dict | None = None,
    n_jobs: int = 1,
) -> list[ExperimentRecord]:
    """RMSE of each method at each ``delta_alpha``; ``c`` / ``k_max`` map methods to overrides."""
    c = c or {}
    k_max = k_max or {}
    jobs = []
    for method in map(Method.parse, methods):
        for d in delta_alphas:
            jobs.append(dict(method=method, params=params, T=T, delta_alpha=d,
                             c=c.get(method), k_max=k_max.get(method)))
    return sort_records(_run_all(jobs, n_jobs))


def convergence_study(
    methods: Iterable = (Method.IC, Method.NCG),
    delta_alpha: float = 0.01,
    cs: Iterable[int] = (2,),
    k_max: int = 6,
    params: PulseParams = PulseParams(),
    T: float = 3.0,
    keep_traces: bool = False,
    n_jobs: int = 1,
) -> list[ExperimentRecord]:
    """RMSE after ``k = 1..k_max`` iterations for each iterative method and step ratio."""
    jobs = []
    for method in map(Method.parse, methods):
        if method not in (Method.IC, Method.NCG):
            raise InvalidArgumentError(f"{method.value} is not an iterative method")
        for c in cs:
            for k in range(1, k_max + 1):
                jobs.append(dict(method=method, params=params, T=T, delta_alpha=delta_alpha,
                                 c=c, k_max=k, keep_trace=keep_traces))
    return sort_records(_run_all(jobs, n_jobs))


def operating_delta_alpha(sweep: Iterable[ExperimentRecord], target_rmse: float, method=None) -> float:
    """Coarsest ``delta_alpha`` whose RMSE reaches ``target_rmse``.

    The RMSE curve is interpolated linearly in log-log coordinates between
    neighbouring sweep points.  A target above every sweep RMSE returns the
    coarsest swept resolution.
    """
    pts = [r for r in sweep if method is None or r.method is Method.parse(method)]
    if not pts:
        raise InvalidArgumentError("no sweep data for the requested method")
    pts.sort(key=lambda r: -r.delta_alpha)
    d = np.log([r.delta_alpha for r in pts])
    e = np.log([r.rmse for r in pts])
    goal = math.log(target_rmse)
    if e[0] <= goal:
        return pts[0].delta_alpha
    for i in range(1, len(pts)):
        if e[i] <= goal:
            frac = (goal - e[i]) / (e[i - 1] - e[i])
            return float(math.exp(d[i] + frac * (d[i - 1] - d[i])))
    raise OutOfRangeError(
        f"target RMSE {target_rmse:g} is below the best swept value {math.exp(e.min()):g}"
    )


def fixed_accuracy_complexity(
    target_rmse: float,
    method,
    sweep: Iterable[ExperimentRecord],
    T: float = 3.0,
    max_delta_t: float = 0.2,
    k_max: int | None = None,
    measure: bool = False,
    params: PulseParams = PulseParams(),
) -> list[ExperimentRecord]:
    """Op counts of ``method`` at the resolution reaching ``target_rmse``, one record per
    admissible output step ``delta_t <= max_delta_t``.

    ``formula_ops`` is always filled in.  With ``measure=True`` each distinct
    configuration is also run; grids that do not tile ``[0, T]`` are measured on
    the largest sub-window they tile.
    """
    method = Method.parse(method)
    delta_alpha = operating_delta_alpha(sweep, target_rmse, method)
    n_f = n_f_for(delta_alpha, T)
    delta_alpha = 2 * T / n_f
    c_run, k_max = _resolve(method, default_c(method) if method in (Method.NT, Method.IC1) else None, k_max)
    base = 2 if method is Method.IC1 else 1
    c_max = max(base, int(math.floor(2 * max_delta_t / delta_alpha + 1e-9)))
    cached = None
    records = []
    for c in range(base, c_max + 1, base):
        solver_c = c_run if method in (Method.NT, Method.IC1) else c
        formula = complexity(method, n_f, solver_c, k_max)
        rec = ExperimentRecord(method, delta_alpha, c * delta_alpha / 2, k_max, float("nan"),
                               None, None, formula, k=k_max)
        if measure:
            if method in (Method.NT, Method.IC1):
                if cached is None:
                    cached = run_method(method, params, T, c=c_run, k_max=k_max or None, n_f=n_f)
                run = cached
            else:
                sub = solver_c * (n_f // solver_c)
                run = run_method(method, params, sub * delta_alpha / 2, c=solver_c, k_max=k_max, n_f=sub)
            rec = replace(rec, model_ops=run.model_ops, actual_ops=run.actual_ops, rmse=run.rmse)
        records.append(rec)
    return records
