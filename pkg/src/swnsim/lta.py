"""Long-time averages via eigenvalue-degeneracy clustering.

Averaging exp(-i(E_n - E_n')t) over an infinite horizon kills every pair
of distinct eigenvalues, so the long-time average (LTA) of any quantity
built from the propagator reduces to sums over clusters of exactly
degenerate eigenvalues.  The ring is the degenerate showcase: almost all
of its levels come in pairs, which doubles its LTA relative to a naive
nondegenerate evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ValidationError
from .spectral import Spectrum

DEGENERACY_TOL_SCALE = 1e-8


@dataclass(frozen=True)
class DegeneracyClustering:
    """Partition of the sorted eigenvalue axis into equal-value clusters.

    ``starts`` has length C+1; cluster c covers sorted-mode indices
    starts[c]:starts[c+1].
    """

    starts: np.ndarray
    tolerance: float

    @property
    def sizes(self) -> np.ndarray:
        return np.diff(self.starts)

    @property
    def n_clusters(self) -> int:
        return self.starts.shape[0] - 1

    def all_singletons(self) -> bool:
        return bool(np.all(self.sizes == 1))


def default_degeneracy_tol(spec: Spectrum) -> float:
    """tol = 1e-8 * max(1, spectral range).

    Exact degeneracies survive eigh at the 1e-13 level; accidental
    near-degeneracies above this threshold count as distinct.
    """
    spread = float(spec.eigenvalues[-1] - spec.eigenvalues[0])
    return DEGENERACY_TOL_SCALE * max(1.0, spread)


def cluster_degeneracies(spec: Spectrum, tol: float | None = None) -> DegeneracyClustering:
    """Greedy gap clustering: adjacent levels join one cluster iff gap <= tol."""
    if tol is None:
        tol = default_degeneracy_tol(spec)
    if tol <= 0:
        raise ValidationError(f"degeneracy tolerance must be positive, got {tol}")
    gaps = np.diff(spec.eigenvalues)
    breaks = np.nonzero(gaps > tol)[0] + 1
    starts = np.concatenate(([0], breaks, [spec.n])).astype(np.int64)
    return DegeneracyClustering(starts=starts, tolerance=float(tol))


def lta_matrix(spec: Spectrum, clustering: DegeneracyClustering | None = None) -> np.ndarray:
    """Time-averaged quantum transition matrix chi[k, j].

    Sum over degenerate clusters of the squared spectral projector
    entries; columns sum to one (probability survives the average).
    """
    if clustering is None:
        clustering = cluster_degeneracies(spec)
    evecs = np.ascontiguousarray(spec.eigenvectors)
    return kernels.lta_matrix_kernel(evecs, clustering.starts)


def chi_bar(
    spectra: list[Spectrum],
    clusterings: list[DegeneracyClustering] | None = None,
) -> float:
    """Ensemble- and node-averaged LTA of the quantum return probability.

    Equals mean_r (1/N) sum_{j,c} (sum_{n in c} <j|Phi_n>^2)^2; for fully
    nondegenerate spectra this is the mean participation ratio of the
    eigenstates.
    """
    if not spectra:
        raise ValidationError("chi_bar needs at least one spectrum")
    if clusterings is None:
        clusterings = [cluster_degeneracies(s) for s in spectra]
    if len(clusterings) != len(spectra):
        raise ValidationError("need exactly one clustering per spectrum")
    total = 0.0
    for spec, clus in zip(spectra, clusterings):
        sqamps = np.ascontiguousarray(spec.squared_amplitudes())
        total += kernels.chi_bar_terms(sqamps, clus.starts) / spec.n
    return total / len(spectra)


def alpha_bar_lta(
    spectra: list[Spectrum],
    clusterings: list[DegeneracyClustering] | None = None,
) -> float:
    """LTA of the eigenvalue-only bound: mean_r sum_c m_c^2 / N^2.

    Collapses to 1/N whenever every eigenvalue is nondegenerate.
    """
    if not spectra:
        raise ValidationError("alpha_bar_lta needs at least one spectrum")
    if clusterings is None:
        clusterings = [cluster_degeneracies(s) for s in spectra]
    if len(clusterings) != len(spectra):
        raise ValidationError("need exactly one clustering per spectrum")
    total = 0.0
    for spec, clus in zip(spectra, clusterings):
        sizes = clus.sizes.astype(np.float64)
        total += float(np.sum(sizes**2)) / spec.n**2
    return total / len(spectra)


def participation(spec: Spectrum) -> np.ndarray:
    """Eigenstate weight distribution Xi[n, j] = <j|Phi_n>^4 / N."""
    return np.ascontiguousarray(spec.eigenvectors.T**4) / spec.n


def participation_mean(spectra: list[Spectrum]) -> np.ndarray:
    """Ensemble mean of the per-realization participation fields."""
    if not spectra:
        raise ValidationError("participation_mean needs at least one spectrum")
    acc = np.zeros((spectra[0].n, spectra[0].n))
    for spec in spectra:
        acc += participation(spec)
    return acc / len(spectra)


def ring_bloch_spectrum(n: int) -> Spectrum:
    """Analytic ring spectrum in the real standing-wave basis.

    Eigenvalues 2 - 2 cos(2 pi m / n) sorted ascending, doublets adjacent;
    the m = 0 mode is constant and, for even n, the top mode alternates
    in sign.  Matches ``diagonalize(laplacian(make_ring(n)))`` up to
    rotations inside the degenerate pairs.
    """
    if n < 3:
        raise ValidationError(f"ring needs n >= 3, got n={n}")
    j = np.arange(n)
    evals = np.empty(n)
    evecs = np.empty((n, n))
    evals[0] = 0.0
    evecs[:, 0] = 1.0 / np.sqrt(n)
    col = 1
    for m in range(1, (n - 1) // 2 + 1):
        energy = 2.0 - 2.0 * np.cos(2.0 * np.pi * m / n)
        theta = 2.0 * np.pi * m * j / n
        evals[col] = energy
        evecs[:, col] = np.sqrt(2.0 / n) * np.cos(theta)
        evals[col + 1] = energy
        evecs[:, col + 1] = np.sqrt(2.0 / n) * np.sin(theta)
        col += 2
    if n % 2 == 0:
        evals[col] = 4.0
        evecs[:, col] = np.where(j % 2 == 0, 1.0, -1.0) / np.sqrt(n)
        col += 1
    assert col == n
    return Spectrum(eigenvalues=evals, eigenvectors=evecs)
