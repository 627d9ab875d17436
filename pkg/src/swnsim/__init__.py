"""Continuous-time quantum and classical walks on small-world networks.

Builds N-node rings with B random shortcut bonds, diagonalizes their
Laplacian, and computes transport observables (transition probabilities,
return curves and their eigenvalue-only lower bound), spectral statistics
(density of states, level spacings, tail fits), and exact long-time
averages via degeneracy clustering, with deterministic seeded ensembles.
"""

from .dynamics import (
    ReturnCurve,
    TimeGrid,
    TransitionField,
    avg_return_classical,
    avg_return_quantum,
    classical_transition,
    linear_grid,
    log_grid,
    lower_bound,
    quantum_transition,
)
from .ensemble import (
    EnsembleConfig,
    EnsembleResult,
    chi_sweep,
    lta_operator,
    realization_seeds,
    run_ensemble,
)
from .errors import NumericalError, ValidationError
from .lta import (
    DegeneracyClustering,
    alpha_bar_lta,
    chi_bar,
    cluster_degeneracies,
    lta_matrix,
    participation,
    participation_mean,
    ring_bloch_spectrum,
)
from .network import Network, laplacian, make_ring, make_swn, network_from_json, network_to_json
from .spectral import (
    DosHistogram,
    SpacingHistogram,
    Spectrum,
    TailFit,
    diagonalize,
    dos,
    fit_tail,
    level_spacings,
    reference_poisson,
    reference_wigner,
    spacing_histogram,
    tail_samples,
)

__version__ = "0.1.0"

__all__ = [
    "EnsembleConfig",
    "EnsembleResult",
    "DegeneracyClustering",
    "DosHistogram",
    "Network",
    "NumericalError",
    "ReturnCurve",
    "SpacingHistogram",
    "Spectrum",
    "TailFit",
    "TimeGrid",
    "TransitionField",
    "ValidationError",
    "alpha_bar_lta",
    "avg_return_classical",
    "avg_return_quantum",
    "chi_bar",
    "chi_sweep",
    "classical_transition",
    "cluster_degeneracies",
    "diagonalize",
    "dos",
    "fit_tail",
    "laplacian",
    "level_spacings",
    "linear_grid",
    "log_grid",
    "lower_bound",
    "lta_matrix",
    "lta_operator",
    "make_ring",
    "make_swn",
    "network_from_json",
    "network_to_json",
    "participation",
    "participation_mean",
    "quantum_transition",
    "realization_seeds",
    "reference_poisson",
    "reference_wigner",
    "ring_bloch_spectrum",
    "run_ensemble",
    "spacing_histogram",
    "tail_samples",
]
