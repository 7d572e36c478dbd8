"""Command-line experiment harness writing self-describing CSV files.

Verbs: ``solve``, ``convergence``, ``accuracy-sweep``, ``complexity``.
Settings come from built-in defaults, then ``--config FILE`` (a JSON object
with the long flag names, dashes or underscores), then explicit flags.

Exit codes: 0 success, 2 invalid arguments, 3 solver failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import math
import sys
from typing import Iterable

import numpy as np

from . import __version__
from .errors import InvalidArgumentError, InvNFTError, MethodConstraintError, SolverError
from .experiments import (
    accuracy_sweep,
    convergence_study,
    default_c,
    fixed_accuracy_complexity,
    n_f_for,
    solve,
)
from .kernels import PulseParams, analytic_solution, sample_analytic_kernel
from .metrics import ExperimentRecord, Method, error_profile

EXIT_OK, EXIT_ARGS, EXIT_SOLVER, EXIT_IO = 0, 2, 3, 4

DEFAULTS = {
    "a": 1.0,
    "nu": 1.0,
    "T": 3.0,
    "seed": 0,
    "out": "-",
    "jobs": 1,
    "target_rmse": 2e-3,
    "max_delta_t": 0.2,
    "profiles": None,
    "sweep": None,
}
VERB_DEFAULTS = {
    "solve": {"method": ["NT", "NCG", "IC"], "delta_alpha": [0.01], "c": [1], "k_max": None},
    "convergence": {"method": ["IC", "NCG"], "delta_alpha": [0.01], "c": [2], "k_max": [6]},
    "accuracy-sweep": {"method": ["NT", "NCG", "IC", "IC1"], "delta_alpha": [0.04, 0.02, 0.01, 0.005],
                       "c": None, "k_max": None},
    "complexity": {"method": ["NT", "NCG", "IC", "IC1"], "delta_alpha": None, "c": None, "k_max": None},
}
LIST_KEYS = ("method", "delta_alpha", "c", "k_max")


def fmt(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.12g}"


def _split(items, conv):
    if items is None:
        return None
    if not isinstance(items, (list, tuple)):
        items = [items]
    out = []
    for item in items:
        for part in str(item).split(","):
            part = part.strip()
            if part:
                try:
                    out.append(conv(part))
                except ValueError:
                    raise InvalidArgumentError(f"cannot parse {part!r}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    g = shared.add_argument_group("shared options")
    g.add_argument("--method", action="append", help="NT, NCG, IC, IC1 (repeat or comma-separate)")
    g.add_argument("--a", type=float, help="pulse parameter a > 0 (default 1)")
    g.add_argument("--nu", type=float, help="pulse parameter nu in [-1, 1] (default 1)")
    g.add_argument("--T", type=float, help="half window; kernel on [0, 2T], solution on [0, T] (default 3)")
    g.add_argument("--delta-alpha", action="append", help="kernel grid step(s)")
    g.add_argument("--c", action="append", help="step ratio(s), delta_t = c * delta_alpha / 2")
    g.add_argument("--k-max", action="append", help="iterations for NCG / IC")
    g.add_argument("--out", help="output CSV path, '-' for stdout")
    g.add_argument("--config", help="JSON file with default settings")
    g.add_argument("--seed", type=int, help="recorded in the metadata line")
    g.add_argument("--jobs", type=int, help="worker processes for sweeps")

    p = argparse.ArgumentParser(prog="invnft", description="Inverse NFT solver benchmarks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)
    sub.add_parser("solve", parents=[shared], help="traces of each method next to the exact pulse")
    cv = sub.add_parser("convergence", parents=[shared], help="RMSE versus iteration count")
    cv.add_argument("--profiles", help="also write per-time error profiles to this CSV")
    sub.add_parser("accuracy-sweep", parents=[shared], help="RMSE versus kernel resolution")
    cx = sub.add_parser("complexity", parents=[shared], help="op counts at a fixed target RMSE")
    cx.add_argument("--sweep", help="CSV written by accuracy-sweep")
    cx.add_argument("--target-rmse", type=float)
    cx.add_argument("--max-delta-t", type=float)
    return p


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    cfg.update(VERB_DEFAULTS[args.verb])
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                file_cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidArgumentError(f"config file {args.config}: {exc}") from None
        if not isinstance(file_cfg, dict):
            raise InvalidArgumentError("config file must hold a JSON object")
        for key, value in file_cfg.items():
            key = key.replace("-", "_")
            if key not in cfg:
                raise InvalidArgumentError(f"unknown config key {key!r}")
            cfg[key] = value
    for key, value in vars(args).items():
        if key in cfg and value is not None:
            cfg[key] = value
    cfg["method"] = [Method.parse(m).value for m in _split(cfg["method"], str)]
    cfg["delta_alpha"] = _split(cfg["delta_alpha"], float)
    cfg["c"] = _split(cfg["c"], int)
    cfg["k_max"] = _split(cfg["k_max"], int)
    if not cfg["method"]:
        raise InvalidArgumentError("at least one method is required")
    for key in ("delta_alpha", "c", "k_max"):
        if cfg[key] is not None and not cfg[key]:
            raise InvalidArgumentError(f"--{key.replace('_', '-')} needs at least one value")
    if not cfg["T"] > 0:
        raise InvalidArgumentError("T must be positive")
    if any(d <= 0 for d in cfg["delta_alpha"] or ()):
        raise InvalidArgumentError("delta_alpha must be positive")
    PulseParams(cfg["a"], cfg["nu"])
    cfg["verb"] = args.verb
    return cfg


def _single(cfg, key, name=None):
    values = cfg[key]
    if values is None:
        return None
    if len(values) != 1:
        raise InvalidArgumentError(f"{cfg['verb']} takes a single --{name or key.replace('_', '-')}")
    return values[0]


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def write_csv(path, cfg: dict, header: list[str], rows: Iterable[list]) -> None:
    with _open_out(path) as fh:
        fh.write("# invnft " + json.dumps(cfg, sort_keys=True) + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([r if isinstance(r, str) else fmt(r) for r in row])


def _context(exc: InvNFTError, **ctx) -> InvNFTError:
    tag = " ".join(f"{k}={v}" for k, v in ctx.items())
    exc.args = (f"[{tag}] {exc.args[0] if exc.args else ''}",) + exc.args[1:]
    return exc


def cmd_solve(cfg: dict) -> None:
    params = PulseParams(cfg["a"], cfg["nu"])
    delta_alpha = _single(cfg, "delta_alpha")
    c = _single(cfg, "c")
    k_max = _single(cfg, "k_max")
    kernel = sample_analytic_kernel(params, cfg["T"], n_f_for(delta_alpha, cfg["T"]))
    columns = []
    t = None
    for name in cfg["method"]:
        method = Method.parse(name)
        k = None if method in (Method.NT, Method.IC1) else k_max
        try:
            trace = solve(method, kernel, c, k)
        except InvNFTError as exc:
            raise _context(exc, method=method.value, delta_alpha=delta_alpha, c=c, k_max=k)
        t = trace.t
        err = error_profile(trace, params)
        columns.append((method.value, trace.values, err))
    exact = analytic_solution(params, t)
    header = ["t", "u_exact_re", "u_exact_im"]
    for name, _, _ in columns:
        header += [f"{name}_u_re", f"{name}_u_im", f"{name}_abs_error"]
    rows = []
    for i, ti in enumerate(t):
        row = [float(ti), exact[i].real, exact[i].imag]
        for _, values, err in columns:
            row += [values[i].real, values[i].imag, float(err[i])]
        rows.append(row)
    write_csv(cfg["out"], cfg, header, rows)


def _iterative(cfg):
    methods = [Method.parse(m) for m in cfg["method"]]
    bad = [m.value for m in methods if m not in (Method.IC, Method.NCG)]
    if bad:
        raise MethodConstraintError(f"convergence is defined for IC and NCG only, not {', '.join(bad)}")
    return methods


def cmd_convergence(cfg: dict) -> None:
    params = PulseParams(cfg["a"], cfg["nu"])
    methods = _iterative(cfg)
    delta_alpha = _single(cfg, "delta_alpha")
    k_max = _single(cfg, "k_max")
    try:
        records = convergence_study(methods, delta_alpha, cfg["c"], k_max, params, cfg["T"],
                                    keep_traces=bool(cfg["profiles"]), n_jobs=cfg["jobs"])
    except InvNFTError as exc:
        raise _context(exc, methods=",".join(m.value for m in methods), delta_alpha=delta_alpha, k_max=k_max)
    write_csv(cfg["out"], cfg, ["method", "k", "delta_t", "rmse"],
              ([r.method.value, r.k, r.delta_t, r.rmse] for r in records))
    if cfg["profiles"]:
        rows = []
        for r in records:
            err = error_profile(r.trace, params)
            rows += [[r.method.value, r.k, r.delta_t, float(ti), float(e)] for ti, e in zip(r.trace.t, err)]
        write_csv(cfg["profiles"], cfg, ["method", "k", "delta_t", "t", "abs_error"], rows)


def _overrides(cfg):
    c = _single(cfg, "c")
    k = _single(cfg, "k_max")
    iterative = (Method.NCG, Method.IC)
    return ({m: c for m in iterative} if c is not None else {},
            {m: k for m in iterative} if k is not None else {})


def cmd_accuracy_sweep(cfg: dict) -> None:
    params = PulseParams(cfg["a"], cfg["nu"])
    c, k = _overrides(cfg)
    try:
        records = accuracy_sweep(cfg["method"], cfg["delta_alpha"], params, cfg["T"], c, k, cfg["jobs"])
    except InvNFTError as exc:
        raise _context(exc, methods=",".join(cfg["method"]))
    write_csv(cfg["out"], cfg, ["method", "delta_alpha", "delta_t", "rmse"],
              ([r.method.value, r.delta_alpha, r.delta_t, r.rmse] for r in records))


def read_sweep(path) -> list[ExperimentRecord]:
    records = []
    with open(path, encoding="utf-8", newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    missing = {"method", "delta_alpha", "rmse"} - set(reader.fieldnames or ())
    if missing:
        raise InvalidArgumentError(f"{path} is not an accuracy-sweep CSV (missing {sorted(missing)})")
    for row in reader:
        records.append(ExperimentRecord(Method.parse(row["method"]), float(row["delta_alpha"]),
                                        float(row.get("delta_t") or "nan"), 0, float(row["rmse"]),
                                        None, None, 0))
    return records


def cmd_complexity(cfg: dict) -> None:
    if not cfg["sweep"]:
        raise InvalidArgumentError("complexity needs RMSE data: run `invnft accuracy-sweep --out FILE` "
                                   "first and pass it with --sweep FILE")
    try:
        sweep = read_sweep(cfg["sweep"])
    except FileNotFoundError:
        raise InvalidArgumentError(f"sweep file {cfg['sweep']} not found: run `invnft accuracy-sweep` first") from None
    params = PulseParams(cfg["a"], cfg["nu"])
    k_max = _single(cfg, "k_max")
    rows = []
    for name in cfg["method"]:
        method = Method.parse(name)
        if not any(r.method is method for r in sweep):
            raise InvalidArgumentError(f"sweep file has no {method.value} rows: rerun accuracy-sweep with it")
        k = None if method in (Method.NT, Method.IC1) else k_max
        try:
            records = fixed_accuracy_complexity(cfg["target_rmse"], method, sweep, cfg["T"], cfg["max_delta_t"],
                                                k, measure=True, params=params)
        except InvNFTError as exc:
            raise _context(exc, method=method.value, target_rmse=cfg["target_rmse"])
        rows += [[r.method.value, r.delta_t, r.model_ops, r.actual_ops, r.delta_alpha, r.formula_ops]
                 for r in records]
    write_csv(cfg["out"], cfg, ["method", "delta_t", "model_ops", "actual_ops", "delta_alpha", "formula_ops"], rows)


COMMANDS = {
    "solve": cmd_solve,
    "convergence": cmd_convergence,
    "accuracy-sweep": cmd_accuracy_sweep,
    "complexity": cmd_complexity,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        COMMANDS[args.verb](cfg)
    except InvalidArgumentError as exc:
        print(f"invnft {args.verb}: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except SolverError as exc:
        print(f"invnft {args.verb}: solver failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except OSError as exc:
        print(f"invnft {args.verb}: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
