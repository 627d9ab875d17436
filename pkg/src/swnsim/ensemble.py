"""Deterministic ensemble orchestration and time-average operators.

A run draws R independent small-world realizations, pushes each through
network -> Laplacian -> spectrum -> observables, and folds the results
into means.  Per-realization seeds are a pure function of
(master_seed, index), so runs are reproducible bit-for-bit regardless of
worker count: workers may finish out of order but the reduction always
folds in index order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dynamics import (
    TimeGrid,
    avg_return_classical,
    avg_return_quantum,
    classical_transition,
    lower_bound,
    quantum_transition,
)
from .errors import NumericalError, ValidationError
from .lta import (
    alpha_bar_lta,
    chi_bar,
    cluster_degeneracies,
    lta_matrix,
    participation,
)
from .network import laplacian, make_swn
from .spectral import Spectrum, diagonalize, level_spacings, verify_spectrum

MEAN_OBSERVABLES = (
    "carpet",
    "classical_carpet",
    "classical_return",
    "quantum_return",
    "lower_bound",
    "lta_matrix",
    "chi_bar",
    "alpha_bar_lta",
    "participation",
)
POOLED_OBSERVABLES = ("eigenvalues", "spacings")
OBSERVABLES = MEAN_OBSERVABLES + POOLED_OBSERVABLES

_GRID_REQUIRED = {"carpet", "classical_carpet", "classical_return", "quantum_return", "lower_bound"}
_SOURCE_REQUIRED = {"carpet", "classical_carpet"}


def realization_seed(master_seed: int, index: int) -> int:
    """Seed for realization ``index``: stable under slicing and offsets."""
    return int(np.random.SeedSequence((master_seed, index)).generate_state(1, np.uint64)[0])


def realization_seeds(master_seed: int, r: int, offset: int = 0) -> list[int]:
    return [realization_seed(master_seed, offset + i) for i in range(r)]


@dataclass(frozen=True)
class EnsembleConfig:
    n: int
    b: int
    r: int
    master_seed: int
    observables: tuple[str, ...]
    grid: TimeGrid | None = None
    source: int | None = None
    seed_offset: int = 0
    validate: bool = False

    def __post_init__(self):
        if self.r < 1:
            raise ValidationError(f"need r >= 1 realizations, got {self.r}")
        unknown = [o for o in self.observables if o not in OBSERVABLES]
        if unknown:
            raise ValidationError(f"unknown observables {unknown}; choose from {sorted(OBSERVABLES)}")
        needs_grid = _GRID_REQUIRED.intersection(self.observables)
        if needs_grid and self.grid is None:
            raise ValidationError(f"observables {sorted(needs_grid)} need a time grid")
        needs_source = _SOURCE_REQUIRED.intersection(self.observables)
        if needs_source and self.source is None:
            raise ValidationError(f"observables {sorted(needs_source)} need a source node")


@dataclass
class EnsembleResult:
    config: EnsembleConfig
    seeds: list[int]
    means: dict = field(default_factory=dict)
    pooled: dict = field(default_factory=dict)


def _one_realization(cfg: EnsembleConfig, seed: int) -> dict:
    try:
        net = make_swn(cfg.n, cfg.b, seed)
        lap = laplacian(net)
        spec = diagonalize(lap, validate=False)
        if cfg.validate:
            verify_spectrum(spec, lap)
        out: dict = {}
        clustering = None
        if {"lta_matrix", "chi_bar", "alpha_bar_lta"}.intersection(cfg.observables):
            clustering = cluster_degeneracies(spec)
        for obs in cfg.observables:
            if obs == "carpet":
                out[obs] = quantum_transition(spec, cfg.source, cfg.grid).values
            elif obs == "classical_carpet":
                out[obs] = classical_transition(spec, cfg.source, cfg.grid).values
            elif obs == "classical_return":
                out[obs] = avg_return_classical(spec, cfg.grid).values
            elif obs == "quantum_return":
                out[obs] = avg_return_quantum(spec, cfg.grid).values
            elif obs == "lower_bound":
                out[obs] = lower_bound(spec, cfg.grid).values
            elif obs == "lta_matrix":
                out[obs] = lta_matrix(spec, clustering)
            elif obs == "chi_bar":
                out[obs] = chi_bar([spec], [clustering])
            elif obs == "alpha_bar_lta":
                out[obs] = alpha_bar_lta([spec], [clustering])
            elif obs == "participation":
                out[obs] = participation(spec)
            elif obs == "eigenvalues":
                out[obs] = spec.eigenvalues
            elif obs == "spacings":
                out[obs] = np.diff(spec.eigenvalues)
        return out
    except NumericalError as exc:
        raise NumericalError(f"realization with seed {seed} failed: {exc}") from exc


def run_ensemble(cfg: EnsembleConfig, threads: int = 1) -> EnsembleResult:
    """Run R realizations and fold their observables into ensemble means.

    ``threads`` workers compute realizations concurrently (the kernels
    release the GIL); the fold order is fixed by realization index, so
    outputs do not depend on the worker count.
    """
    if threads < 1:
        raise ValidationError(f"need threads >= 1, got {threads}")
    seeds = realization_seeds(cfg.master_seed, cfg.r, cfg.seed_offset)
    sums: dict = {}
    pooled_parts: dict = {obs: [] for obs in cfg.observables if obs in POOLED_OBSERVABLES}

    def fold(res: dict) -> None:
        for key, value in res.items():
            if key in pooled_parts:
                pooled_parts[key].append(value)
            elif key in sums:
                sums[key] = sums[key] + value
            else:
                sums[key] = value if np.isscalar(value) else value.copy()

    if threads == 1:
        for seed in seeds:
            fold(_one_realization(cfg, seed))
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for res in pool.map(lambda s: _one_realization(cfg, s), seeds):
                fold(res)

    result = EnsembleResult(config=cfg, seeds=seeds)
    for key, total in sums.items():
        result.means[key] = total / cfg.r
    for key, parts in pooled_parts.items():
        result.pooled[key] = np.concatenate(parts) if key == "spacings" else np.vstack(parts)
    return result


def lta_operator(times: np.ndarray, values: np.ndarray, horizon: float | None = None):
    """Trapezoidal time average of a curve (or field) over its grid.

    Cross-check oracle for the analytic cluster formulas; with a grid
    over [0, T] this is the finite-T version of the infinite-horizon
    average.

    Raises
    ------
    ValidationError
        If the grid ends before the requested horizon.
    """
    times = np.asarray(times, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if times.ndim != 1 or times.size < 2:
        raise ValidationError("time average needs a grid of at least two points")
    if horizon is not None and times[-1] < horizon:
        raise ValidationError(
            f"grid too short for the requested horizon: ends at {times[-1]}, need {horizon}"
        )
    span = times[-1] - times[0]
    return np.trapezoid(values, times, axis=0) / span


def chi_sweep(
    n_values,
    fractions,
    r: int,
    master_seed: int,
    threads: int = 1,
) -> list[dict]:
    """LTA of the mean quantum return vs B/N, for several system sizes.

    Each (n, b) combination gets its own derived master seed so that the
    sweep stays reproducible when points are added or removed.
    """
    rows = []
    for n in n_values:
        for frac in fractions:
            b = int(round(frac * n))
            if b < 1:
                raise ValidationError(f"fraction {frac} gives b=0 at n={n}; sweep needs b >= 1")
            derived = int(np.random.SeedSequence((master_seed, n, b)).generate_state(1, np.uint64)[0])
            cfg = EnsembleConfig(
                n=n, b=b, r=r, master_seed=derived,
                observables=("chi_bar", "alpha_bar_lta"),
            )
            res = run_ensemble(cfg, threads=threads)
            rows.append(
                {
                    "n": n,
                    "b": b,
                    "b_over_n": b / n,
                    "chi_bar": float(res.means["chi_bar"]),
                    "alpha_bar_lta": float(res.means["alpha_bar_lta"]),
                    "r_used": r,
                }
            )
    return rows
