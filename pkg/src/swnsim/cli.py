"""Command-line entry point.

Two subcommands: ``figure`` regenerates the data behind a named figure of
the study (dos, carpets, lta-map, return-probs, zoom, chi-sweep,
participation) and ``run`` executes an arbitrary ensemble described by a
JSON config.  Every run writes a manifest.json holding the exact
parameters and per-realization seeds needed to reproduce it
bit-identically.

Exit codes: 0 success, 2 usage, 3 validation, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import io, kernels
from .dynamics import ROW_SUM_TOL, TimeGrid, linear_grid, log_grid
from .ensemble import (
    OBSERVABLES,
    EnsembleConfig,
    chi_sweep,
    run_ensemble,
)
from .errors import NumericalError, ValidationError
from .lta import DEGENERACY_TOL_SCALE
from .spectral import (
    SPACING_BINS_DEFAULT,
    SPACING_SUPPORT_CAP,
    TAIL_RANGE_DEFAULT,
    dos,
    fit_tail,
    spacing_histogram,
)

DEFAULT_MASTER_SEED = 12345
DEFAULT_B_LIST = (1, 2, 5, 100)
RETURN_B_LIST = (0, 1, 2, 5, 100)
SWEEP_N_LIST = (100, 500, 1000)
SWEEP_FRACTIONS = tuple(round(0.02 * k, 2) for k in range(1, 11)) + tuple(
    round(0.25 + 0.05 * k, 2) for k in range(16)
)

FIGURES = ("dos", "carpets", "lta-map", "return-probs", "zoom", "chi-sweep", "participation")


def _grid_arg(text: str) -> TimeGrid:
    parts = text.split(":")
    try:
        if parts[0] == "lin" and len(parts) == 4:
            return linear_grid(float(parts[1]), float(parts[2]), float(parts[3]))
        if parts[0] == "log" and len(parts) == 4:
            return log_grid(float(parts[1]), float(parts[2]), int(parts[3]))
    except (ValueError, ValidationError) as exc:
        raise argparse.ArgumentTypeError(f"bad grid spec {text!r}: {exc}") from exc
    raise argparse.ArgumentTypeError(
        f"bad grid spec {text!r}; expected lin:START:STOP:STEP or log:START:STOP:NUM"
    )


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(tok) for tok in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad float list {text!r}") from exc


def _range_arg(text: str) -> tuple[float, float]:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected LO:HI") from exc


def _grid_meta(grid: TimeGrid) -> dict:
    return {
        "kind": grid.kind,
        "start": float(grid.times[0]),
        "stop": float(grid.times[-1]),
        "points": int(grid.times.size),
    }


def _tolerances() -> dict:
    return {
        "row_sum": ROW_SUM_TOL,
        "degeneracy_tol_scale": DEGENERACY_TOL_SCALE,
        "spacing_bins_default": SPACING_BINS_DEFAULT,
        "spacing_support_cap": SPACING_SUPPORT_CAP,
    }


def _write_manifest(out: Path, figure: str, params: dict, seeds: dict, files: list, extra: dict | None = None) -> None:
    payload = {
        "figure": figure,
        "kernel_backend": kernels.BACKEND,
        "params": params,
        "seeds": seeds,
        "tolerances": _tolerances(),
        "files": sorted(files),
        "wall_clock_s": round(time.time() - _write_manifest.t0, 3),
    }
    if extra:
        payload.update(extra)
    io.write_manifest(out / "manifest.json", payload)


def _start_run(out_dir: str | Path) -> Path:
    _write_manifest.t0 = time.time()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def figure_dos(out_dir, n, b_list, r, master_seed, bins, tail_range, threads) -> Path:
    out = _start_run(out_dir)
    files, seeds = [], {}
    fit_target = max(b_list)
    extra = {}
    for b in b_list:
        cfg = EnsembleConfig(
            n=n, b=b, r=r, master_seed=master_seed,
            observables=("eigenvalues", "spacings"),
        )
        res = run_ensemble(cfg, threads=threads)
        seeds[str(b)] = res.seeds
        dhist = dos([res.pooled["eigenvalues"]], bins=bins)
        shist = spacing_histogram(res.pooled["spacings"])
        io.write_histogram_csv(out / f"dos_b{b}.csv", dhist)
        io.write_histogram_csv(out / f"spacing_b{b}.csv", shist)
        files += [f"dos_b{b}.csv", f"spacing_b{b}.csv"]
        if b == fit_target:
            fit = fit_tail(shist, fit_range=tail_range)
            io.write_tailfit_json(out / f"tailfit_b{b}.json", fit)
            files.append(f"tailfit_b{b}.json")
            extra["tail_fit"] = {"b": b, "range": list(tail_range), "mu": fit.mu}
    params = {"n": n, "b_list": list(b_list), "r": r, "master_seed": master_seed, "bins": bins}
    _write_manifest(out, "dos", params, seeds, files, extra)
    return out


def figure_carpets(out_dir, n, b_list, r, master_seed, source, grid, threads) -> Path:
    out = _start_run(out_dir)
    files, seeds = [], {}
    for b in b_list:
        cfg = EnsembleConfig(
            n=n, b=b, r=(1 if b == 0 else r), master_seed=master_seed,
            observables=("carpet",), grid=grid, source=source,
        )
        res = run_ensemble(cfg, threads=threads)
        seeds[str(b)] = res.seeds
        io.write_field_csv(out / f"carpet_b{b}.csv", grid.times, res.means["carpet"])
        files.append(f"carpet_b{b}.csv")
    params = {
        "n": n, "b_list": list(b_list), "r": r, "master_seed": master_seed,
        "source": source, "grid": _grid_meta(grid),
    }
    _write_manifest(out, "carpets", params, seeds, files)
    return out


def figure_lta_map(out_dir, n, b_list, r, master_seed, threads) -> Path:
    out = _start_run(out_dir)
    files, seeds = [], {}
    for b in b_list:
        cfg = EnsembleConfig(
            n=n, b=b, r=(1 if b == 0 else r), master_seed=master_seed,
            observables=("lta_matrix",),
        )
        res = run_ensemble(cfg, threads=threads)
        seeds[str(b)] = res.seeds
        io.write_matrix_csv(out / f"lta_b{b}.csv", res.means["lta_matrix"])
        files.append(f"lta_b{b}.csv")
    params = {"n": n, "b_list": list(b_list), "r": r, "master_seed": master_seed}
    _write_manifest(out, "lta-map", params, seeds, files)
    return out


def figure_return_probs(out_dir, n, b_list, r, master_seed, grid, threads) -> Path:
    out = _start_run(out_dir)
    files, seeds = [], {}
    for b in b_list:
        cfg = EnsembleConfig(
            n=n, b=b, r=(1 if b == 0 else r), master_seed=master_seed,
            observables=("classical_return", "quantum_return", "lower_bound"),
            grid=grid,
        )
        res = run_ensemble(cfg, threads=threads)
        seeds[str(b)] = res.seeds
        io.write_curve_csv(out / f"classical_b{b}.csv", grid.times, res.means["classical_return"])
        io.write_curve_csv(out / f"quantum_b{b}.csv", grid.times, res.means["quantum_return"])
        io.write_curve_csv(out / f"bound_b{b}.csv", grid.times, res.means["lower_bound"])
        files += [f"classical_b{b}.csv", f"quantum_b{b}.csv", f"bound_b{b}.csv"]
    params = {
        "n": n, "b_list": list(b_list), "r": r, "master_seed": master_seed,
        "grid": _grid_meta(grid),
    }
    _write_manifest(out, "return-probs", params, seeds, files)
    return out


def figure_zoom(out_dir, n, b_list, r, master_seed, grid, threads) -> Path:
    out = _start_run(out_dir)
    files, seeds = [], {}
    for b in b_list:
        cfg = EnsembleConfig(
            n=n, b=b, r=(1 if b == 0 else r), master_seed=master_seed,
            observables=("quantum_return",), grid=grid,
        )
        res = run_ensemble(cfg, threads=threads)
        seeds[str(b)] = res.seeds
        io.write_curve_csv(out / f"zoom_b{b}.csv", grid.times, res.means["quantum_return"])
        files.append(f"zoom_b{b}.csv")
    params = {
        "n": n, "b_list": list(b_list), "r": r, "master_seed": master_seed,
        "grid": _grid_meta(grid),
    }
    _write_manifest(out, "zoom", params, seeds, files)
    return out


def figure_chi_sweep(out_dir, n_list, fractions, r, master_seed, threads) -> Path:
    out = _start_run(out_dir)
    rows = chi_sweep(n_list, fractions, r, master_seed, threads=threads)
    io.write_sweep_csv(out / "chi_sweep.csv", rows)
    params = {
        "n_list": list(n_list), "fractions": list(fractions), "r": r,
        "master_seed": master_seed,
    }
    _write_manifest(out, "chi-sweep", params, {}, ["chi_sweep.csv"])
    return out


def figure_participation(out_dir, n, b_list, r, master_seed, threads) -> Path:
    out = _start_run(out_dir)
    files, seeds = [], {}
    for b in b_list:
        cfg = EnsembleConfig(
            n=n, b=b, r=(1 if b == 0 else r), master_seed=master_seed,
            observables=("participation",),
        )
        res = run_ensemble(cfg, threads=threads)
        seeds[str(b)] = res.seeds
        io.write_matrix_csv(out / f"xi_b{b}.csv", res.means["participation"])
        files.append(f"xi_b{b}.csv")
    params = {"n": n, "b_list": list(b_list), "r": r, "master_seed": master_seed}
    _write_manifest(out, "participation", params, seeds, files)
    return out


def _cmd_figure(args) -> int:
    out = args.out or f"runs/{args.name}"
    threads = args.threads
    if args.b is None:
        args.b = RETURN_B_LIST if args.name in ("return-probs", "zoom") else DEFAULT_B_LIST
    if args.n is None:
        args.n = SWEEP_N_LIST if args.name == "chi-sweep" else (100,)
    if args.name == "dos":
        figure_dos(out, args.n[0], args.b, args.r, args.seed, args.bins,
                   args.tail_range, threads)
    elif args.name == "carpets":
        grid = args.grid or linear_grid(0.0, 100.0, 0.25)
        figure_carpets(out, args.n[0], args.b, args.r, args.seed, args.j, grid, threads)
    elif args.name == "lta-map":
        figure_lta_map(out, args.n[0], args.b, args.r, args.seed, threads)
    elif args.name == "return-probs":
        grid = args.grid or log_grid(1e-2, 1e4, 400)
        figure_return_probs(out, args.n[0], args.b, args.r, args.seed, grid, threads)
    elif args.name == "zoom":
        grid = args.grid or linear_grid(1.0, 100.0, 0.1)
        figure_zoom(out, args.n[0], args.b, args.r, args.seed, grid, threads)
    elif args.name == "chi-sweep":
        figure_chi_sweep(out, args.n, args.fractions, args.r, args.seed, threads)
    elif args.name == "participation":
        figure_participation(out, args.n[0], args.b, args.r, args.seed, threads)
    print(out)
    return 0


_RUN_SCHEMA = {
    "n": int, "b": int, "r": int, "master_seed": int,
    "observables": list, "grid": dict, "source": int,
    "seed_offset": int, "validate": bool,
}
_RUN_REQUIRED = ("n", "b", "r", "master_seed", "observables")


def _parse_run_config(payload: dict) -> EnsembleConfig:
    problems = []
    if not isinstance(payload, dict):
        raise ValidationError("config root must be a JSON object")
    for key in _RUN_REQUIRED:
        if key not in payload:
            problems.append(f"missing required key {key!r}")
    for key, value in payload.items():
        if key not in _RUN_SCHEMA:
            problems.append(f"unknown key {key!r}")
        elif not isinstance(value, _RUN_SCHEMA[key]) or isinstance(value, bool) != (_RUN_SCHEMA[key] is bool):
            problems.append(f"key {key!r} must be {_RUN_SCHEMA[key].__name__}")
    grid = None
    if isinstance(payload.get("grid"), dict):
        g = payload["grid"]
        kind = g.get("kind")
        try:
            if kind == "linear":
                grid = linear_grid(float(g["start"]), float(g["stop"]), float(g["step"]))
            elif kind == "log":
                grid = log_grid(float(g["start"]), float(g["stop"]), int(g["num"]))
            else:
                problems.append("grid.kind must be 'linear' or 'log'")
        except (KeyError, TypeError, ValueError, ValidationError) as exc:
            problems.append(f"bad grid object: {exc}")
    if "observables" in payload and isinstance(payload["observables"], list):
        unknown = [o for o in payload["observables"] if o not in OBSERVABLES]
        if unknown:
            problems.append(f"unknown observables {unknown}; choose from {sorted(OBSERVABLES)}")
    if problems:
        raise ValidationError("config rejected:\n  " + "\n  ".join(problems))
    return EnsembleConfig(
        n=payload["n"], b=payload["b"], r=payload["r"],
        master_seed=payload["master_seed"],
        observables=tuple(payload["observables"]),
        grid=grid,
        source=payload.get("source"),
        seed_offset=payload.get("seed_offset", 0),
        validate=payload.get("validate", False),
    )


def _cmd_run(args) -> int:
    try:
        payload = json.loads(Path(args.config).read_text())
    except FileNotFoundError:
        raise ValidationError(f"config file not found: {args.config}")
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config is not valid JSON: {exc}")
    cfg = _parse_run_config(payload)
    out = _start_run(args.out or "runs/custom")
    res = run_ensemble(cfg, threads=args.threads)
    files = []
    results = {}
    for obs in cfg.observables:
        if obs in ("carpet", "classical_carpet"):
            io.write_field_csv(out / f"{obs}.csv", cfg.grid.times, res.means[obs])
            files.append(f"{obs}.csv")
        elif obs in ("classical_return", "quantum_return", "lower_bound"):
            io.write_curve_csv(out / f"{obs}.csv", cfg.grid.times, res.means[obs])
            files.append(f"{obs}.csv")
        elif obs in ("lta_matrix", "participation"):
            io.write_matrix_csv(out / f"{obs}.csv", res.means[obs])
            files.append(f"{obs}.csv")
        elif obs == "eigenvalues":
            io.write_matrix_csv(out / "eigenvalues.csv", res.pooled[obs])
            files.append("eigenvalues.csv")
        elif obs == "spacings":
            io.write_curve_csv(out / "spacings.csv",
                               np.arange(res.pooled[obs].size), res.pooled[obs])
            files.append("spacings.csv")
        else:
            results[obs] = float(res.means[obs])
    params = {
        "n": cfg.n, "b": cfg.b, "r": cfg.r, "master_seed": cfg.master_seed,
        "observables": list(cfg.observables),
        "seed_offset": cfg.seed_offset,
    }
    if cfg.grid is not None:
        params["grid"] = _grid_meta(cfg.grid)
    if cfg.source is not None:
        params["source"] = cfg.source
    _write_manifest(out, "custom", params, {str(cfg.b): res.seeds}, files,
                    {"results": results} if results else None)
    print(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swnsim",
        description="Quantum and classical walks on ring-plus-shortcut networks.",
    )
    default_threads = int(os.environ.get("CTQW_SWN_THREADS", "1"))
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="regenerate the data behind a named figure")
    fig.add_argument("name", choices=FIGURES)
    fig.add_argument("--n", type=_int_list, default=None,
                     help="node count (comma list for chi-sweep)")
    fig.add_argument("--b", type=_int_list, default=None,
                     help="extra-bond counts, comma separated")
    fig.add_argument("--r", type=int, default=500, help="realizations per ensemble")
    fig.add_argument("--seed", type=int, default=DEFAULT_MASTER_SEED, help="master seed")
    fig.add_argument("--j", type=int, default=50, help="source node for carpets")
    fig.add_argument("--grid", type=_grid_arg, default=None,
                     help="time grid: lin:START:STOP:STEP or log:START:STOP:NUM")
    fig.add_argument("--bins", type=int, default=50, help="DOS histogram bins")
    fig.add_argument("--tail-range", type=_range_arg, default=TAIL_RANGE_DEFAULT,
                     help="tail-fit window LO:HI on normalized spacings")
    fig.add_argument("--fractions", type=_float_list, default=SWEEP_FRACTIONS,
                     help="B/N values for chi-sweep")
    fig.add_argument("--out", default=None, help="output directory")
    fig.add_argument("--threads", type=int, default=default_threads,
                     help="worker threads (default: CTQW_SWN_THREADS or 1)")
    fig.set_defaults(func=_cmd_figure)

    run = sub.add_parser("run", help="run an ensemble from a JSON config")
    run.add_argument("config", help="path to the JSON config")
    run.add_argument("--out", default=None, help="output directory")
    run.add_argument("--threads", type=int, default=default_threads,
                     help="worker threads (default: CTQW_SWN_THREADS or 1)")
    run.set_defaults(func=_cmd_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
