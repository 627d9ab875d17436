"""Quantum and classical transition probabilities from a Spectrum.

All propagation goes through the eigendecomposition: with H = A and
hbar = 1, the quantum transition probability is
pi_kj(t) = |sum_n exp(-i E_n t) <k|Phi_n><Phi_n|j>|^2 and its classical
counterpart replaces the phases with exp(-E_n t).  Times are in units of
the inverse nearest-neighbour coupling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import NumericalError, ValidationError
from .spectral import Spectrum

ROW_SUM_TOL = 1e-9
NEGATIVITY_TOL = 1e-12

CARPET_GRID = ("linear", 0.0, 100.0, 0.25)     # start, stop, step
RETURN_GRID = ("log", 1e-2, 1e4, 400)          # start, stop, points


@dataclass(frozen=True)
class TimeGrid:
    times: np.ndarray
    kind: str  # "linear" | "log"

    def __post_init__(self):
        t = np.asarray(self.times, dtype=np.float64)
        if t.ndim != 1 or t.size == 0:
            raise ValidationError("time grid must be a nonempty 1-d array")
        if t[0] < 0:
            raise ValidationError("times must be nonnegative")
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise ValidationError("times must be strictly ascending")
        object.__setattr__(self, "times", t)


def linear_grid(start: float, stop: float, step: float) -> TimeGrid:
    n = int(round((stop - start) / step))
    return TimeGrid(times=start + step * np.arange(n + 1), kind="linear")


def log_grid(start: float, stop: float, num: int) -> TimeGrid:
    if start <= 0:
        raise ValidationError("log grid needs start > 0")
    return TimeGrid(times=np.logspace(np.log10(start), np.log10(stop), num), kind="log")


@dataclass(frozen=True)
class TransitionField:
    """pi_kj(t) or p_kj(t) over a grid for one source node j: (T, N)."""

    source: int
    grid: TimeGrid
    values: np.ndarray
    kind: str  # "quantum" | "classical"


@dataclass(frozen=True)
class ReturnCurve:
    grid: TimeGrid
    values: np.ndarray
    kind: str  # "classical" | "quantum" | "bound"


def _check_source(spec: Spectrum, source: int) -> None:
    if not (0 <= source < spec.n):
        raise ValidationError(f"source node {source} out of range for n={spec.n}")


def _check_field(values: np.ndarray, kind: str) -> None:
    row_sums = values.sum(axis=1)
    worst = float(np.abs(row_sums - 1.0).max())
    if worst > ROW_SUM_TOL:
        raise NumericalError(f"{kind} field rows deviate from unit sum by {worst:.3e}")
    low = float(values.min())
    if low < -NEGATIVITY_TOL:
        raise NumericalError(f"{kind} field has negative probability {low:.3e}")


def quantum_transition(spec: Spectrum, source: int, grid: TimeGrid) -> TransitionField:
    """Quantum transition probabilities pi_kj(t) for source j."""
    _check_source(spec, source)
    values = kernels.quantum_field(spec.eigenvalues, spec.eigenvectors, source, grid.times)
    _check_field(values, "quantum")
    return TransitionField(source=source, grid=grid, values=values, kind="quantum")


def classical_transition(spec: Spectrum, source: int, grid: TimeGrid) -> TransitionField:
    """Classical transition probabilities p_kj(t) for source j."""
    _check_source(spec, source)
    values = kernels.classical_field(spec.eigenvalues, spec.eigenvectors, source, grid.times)
    _check_field(values, "classical")
    return TransitionField(source=source, grid=grid, values=values, kind="classical")


def avg_return_classical(spec: Spectrum, grid: TimeGrid) -> ReturnCurve:
    """Node-averaged classical return probability; eigenvalues only."""
    values = kernels.return_classical(spec.eigenvalues, grid.times)
    return ReturnCurve(grid=grid, values=values, kind="classical")


def avg_return_quantum(spec: Spectrum, grid: TimeGrid) -> ReturnCurve:
    """Node-averaged quantum return probability (needs the eigenstates)."""
    sqamps = np.ascontiguousarray(spec.squared_amplitudes())
    values = kernels.return_quantum(spec.eigenvalues, sqamps, grid.times)
    return ReturnCurve(grid=grid, values=values, kind="quantum")


def lower_bound(spec: Spectrum, grid: TimeGrid) -> ReturnCurve:
    """|mean_n exp(-i E_n t)|^2, the eigenvalue-only bound on the quantum return."""
    values = kernels.bound_curve(spec.eigenvalues, grid.times)
    return ReturnCurve(grid=grid, values=values, kind="bound")


def slope_loglog(x: np.ndarray, y: np.ndarray, window: tuple[float, float]):
    """Least-squares slope of log y against log x inside the window.

    Returns (slope, n_points); the window is the caller's to report.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    keep = (x >= window[0]) & (x <= window[1]) & (y > 0)
    if keep.sum() < 2:
        raise ValidationError("log-log slope needs at least two points in the window")
    slope = np.polyfit(np.log(x[keep]), np.log(y[keep]), 1)[0]
    return float(slope), int(keep.sum())


def local_maxima(x: np.ndarray, y: np.ndarray, window: tuple[float, float]):
    """Strict interior local maxima of y(x) within the window."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    inner = (y[1:-1] > y[:-2]) & (y[1:-1] > y[2:])
    idx = np.nonzero(inner)[0] + 1
    keep = (x[idx] >= window[0]) & (x[idx] <= window[1])
    idx = idx[keep]
    return x[idx], y[idx]
