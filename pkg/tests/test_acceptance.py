"""Acceptance suite: one test per stated criterion, at its stated tolerance.

Each test prints a single line with the measured value(s); run with
``pytest -v tests/test_acceptance.py`` (add ``-s`` to see the lines on
passing tests too).  Statistical criteria use the documented master seed
below and desk-scale parameters (N <= 1000, R <= 500).
"""

import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from swnsim import (
    EnsembleConfig,
    alpha_bar_lta,
    avg_return_classical,
    avg_return_quantum,
    chi_bar,
    chi_sweep,
    classical_transition,
    cluster_degeneracies,
    diagonalize,
    fit_tail,
    laplacian,
    linear_grid,
    log_grid,
    lower_bound,
    lta_matrix,
    make_ring,
    make_swn,
    participation_mean,
    quantum_transition,
    ring_bloch_spectrum,
    run_ensemble,
    spacing_histogram,
    tail_samples,
)
from swnsim.dynamics import TimeGrid, local_maxima, slope_loglog
from swnsim.ensemble import lta_operator, realization_seeds
from oracles import classical_probabilities_taylor, quantum_probabilities_taylor

ACC_SEED = 20260809


def report(name, detail):
    print(f"ACCEPTANCE PASS {name}: {detail}")


@pytest.fixture(scope="module")
def swn_b100_spectra():
    """(N=100, B=100, R=100) ensemble spectra at the documented seed."""
    seeds = realization_seeds(ACC_SEED, 100)
    return [diagonalize(laplacian(make_swn(100, 100, s)), validate=False) for s in seeds]


def test_ring_closed_forms():
    target_even = (2 * 100 - 2) / 100**2
    worst = 0.0
    for spec in (ring_bloch_spectrum(100), diagonalize(laplacian(make_ring(100)))):
        chi = lta_matrix(spec)
        worst = max(worst, np.abs(np.diag(chi) - target_even).max())
        worst = max(worst, max(abs(chi[(j + 50) % 100, j] - target_even) for j in range(100)))
    assert worst <= 1e-9
    assert abs(target_even - 0.0198) < 1e-15

    n = 101
    target_odd = (2 * n - 1) / n**2
    chi = lta_matrix(diagonalize(laplacian(make_ring(n))))
    dev_odd = np.abs(np.diag(chi) - target_odd).max()
    assert dev_odd <= 1e-9
    for j in (0, 33):
        col = chi[:, j].copy()
        col[j] = -1.0
        assert col.max() < target_odd  # the diagonal is the single maximum
    report("ring closed forms", f"even dev {worst:.2e}, odd dev {dev_odd:.2e} (tol 1e-9)")


def test_ring_lower_bound_equality():
    spec = diagonalize(laplacian(make_ring(100)))
    grid = linear_grid(0.0, 200.0, 0.1)
    gap = np.abs(avg_return_quantum(spec, grid).values - lower_bound(spec, grid).values).max()
    assert gap <= 1e-10
    report("ring lower-bound equality", f"max |pibar - |abar|^2| = {gap:.2e} over [0,200] (tol 1e-10)")


def test_swn_lower_bound_inequality():
    grid = log_grid(1e-2, 1e4, 400)
    worst = -np.inf
    for b in (1, 2, 5, 100):
        for seed in realization_seeds(ACC_SEED + b, 50):
            spec = diagonalize(laplacian(make_swn(100, b, seed)), validate=False)
            excess = lower_bound(spec, grid).values - avg_return_quantum(spec, grid).values
            worst = max(worst, float(excess.max()))
    assert worst <= 1e-12
    report("swn lower-bound inequality", f"max bound excess {worst:.2e} over 200 realizations (tol 1e-12)")


def test_classical_equipartition():
    grid = linear_grid(0.0, 1e4, 1e4)  # t = 0 and t = 1e4
    worst = 0.0
    cases = [make_ring(100)] + [
        make_swn(100, b, seed)
        for b in (1, 2, 5, 100)
        for seed in realization_seeds(ACC_SEED + 7000 + b, 10)
    ]
    for net in cases:
        spec = diagonalize(laplacian(net), validate=False)
        field = classical_transition(spec, 50, grid)
        worst = max(worst, float(np.abs(field.values[-1] - 1e-2).max()))
    assert worst <= 1e-6
    report("classical equipartition", f"max |p(1e4) - 1/N| = {worst:.2e} over {len(cases)} graphs (tol 1e-6)")


def test_classical_ring_slope():
    spec = ring_bloch_spectrum(1000)
    grid = log_grid(1.0, 10.0, 60)
    curve = avg_return_classical(spec, grid).values
    slope, _ = slope_loglog(grid.times, curve, (1.0, 10.0))
    assert abs(slope + 0.5) <= 0.05
    report("classical ring slope", f"log-log slope {slope:.4f} on t in [1,10], N=1000 (want -0.50 +/- 0.05)")


def test_quantum_ring_maxima_decay():
    spec = diagonalize(laplacian(make_ring(100)))
    grid = linear_grid(0.0, 40.0, 0.005)
    curve = avg_return_quantum(spec, grid).values
    peaks_t, peaks_v = local_maxima(grid.times, curve, (1.0, 40.0))
    slope, used = slope_loglog(peaks_t, peaks_v, (1.0, 40.0))
    assert abs(slope + 1.0) <= 0.1
    report("quantum ring maxima decay", f"peak slope {slope:.4f} from {used} maxima (want -1.0 +/- 0.1)")


def test_nondegenerate_lta_of_bound(swn_b100_spectra):
    n = 100
    checked = 0
    for spec in swn_b100_spectra:
        clus = cluster_degeneracies(spec)
        if clus.all_singletons():
            assert abs(alpha_bar_lta([spec], [clus]) - 1 / n) <= 1e-12
            checked += 1
    assert checked > 0
    grid = linear_grid(0.0, 1e4, 0.05)
    worst = 0.0
    for spec in swn_b100_spectra[:3]:
        quad = lta_operator(grid.times, lower_bound(spec, grid).values, horizon=1e4)
        worst = max(worst, abs(float(quad) - 1 / n))
    assert worst <= 2e-3
    report(
        "nondegenerate LTA of bound",
        f"{checked}/100 singleton spectra exact at 1/N; quadrature dev {worst:.2e} (tol 2e-3)",
    )


def test_chi_bar_monotone_excess():
    ring_value = (2 * 100 - 2) / 100**2
    values = {}
    for b in (1, 2, 5, 100):
        cfg = EnsembleConfig(n=100, b=b, r=100, master_seed=ACC_SEED, observables=("chi_bar",))
        values[b] = float(run_ensemble(cfg, threads=2).means["chi_bar"])
    assert all(v > ring_value for v in values.values())
    assert values[100] > values[1]
    report(
        "chi_bar monotone excess",
        "R=100 values " + ", ".join(f"B={b}: {v:.5f}" for b, v in values.items())
        + f" all > {ring_value}",
    )


def test_chi_sweep_maximum():
    fractions = [round(0.02 * k, 2) for k in range(1, 16)]
    rows = chi_sweep([500], fractions, r=100, master_seed=ACC_SEED, threads=2)
    best = max(rows, key=lambda row: row["chi_bar"])
    assert 0.08 <= best["b_over_n"] <= 0.22
    report(
        "chi_bar sweep maximum",
        f"N=500 R=100 max at B/N={best['b_over_n']:.2f} (want within [0.08, 0.22])",
    )


def test_participation_anchors(swn_b100_spectra):
    n = 100
    worst_zero = 0.0
    for spec in swn_b100_spectra:
        xi0 = spec.eigenvectors[:, 0] ** 4 / n
        worst_zero = max(worst_zero, float(np.abs(xi0 - 1 / n**3).max()))
    assert worst_zero <= 1e-12

    worst_bloch = 0.0
    for spec in (ring_bloch_spectrum(100), diagonalize(laplacian(make_ring(100)))):
        clus = cluster_degeneracies(spec)
        diags = np.add.reduceat(spec.squared_amplitudes(), clus.starts[:-1], axis=1)
        worst_bloch = max(worst_bloch, float(np.abs(diags - clus.sizes / n).max()))
    assert worst_bloch <= 1e-9
    report(
        "participation anchors",
        f"zero-mode dev {worst_zero:.2e} (tol 1e-12); ring projector-diagonal dev {worst_bloch:.2e} (tol 1e-9)",
    )


def test_band_edge_localization(swn_b100_spectra):
    xi = participation_mean(swn_b100_spectra)
    edge = np.concatenate([xi[:10], xi[-10:]]).mean()
    middle = xi[10:90].mean()
    assert edge > middle
    report("band-edge localization", f"edge mean {edge:.3e} > middle mean {middle:.3e}")


def test_tail_exponent():
    cfg = EnsembleConfig(n=100, b=100, r=500, master_seed=ACC_SEED, observables=("spacings",))
    res = run_ensemble(cfg, threads=2)
    fit_swn = fit_tail(spacing_histogram(res.pooled["spacings"]))
    assert 1.0 <= fit_swn.mu <= 1.4

    rng = np.random.default_rng(99)
    fit_pois = fit_tail(spacing_histogram(tail_samples(1.0, 100_000, rng)))
    fit_wig = fit_tail(spacing_histogram(tail_samples(2.0, 100_000, rng)))
    assert abs(fit_pois.mu - 1.0) <= 0.1
    assert abs(fit_wig.mu - 2.0) <= 0.15
    report(
        "tail exponent",
        f"SWN mu={fit_swn.mu:.3f} (want [1.0,1.4]); planted mu=1 -> {fit_pois.mu:.3f}, "
        f"mu=2 -> {fit_wig.mu:.3f}",
    )


def test_oracle_equivalence():
    rng = np.random.default_rng(ACC_SEED)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(3, 9))
        capacity = n * (n - 1) // 2 - n
        b = int(rng.integers(0, capacity + 1))
        net = make_swn(n, b, int(rng.integers(0, 2**32)))
        lap = laplacian(net)
        spec = diagonalize(lap)
        for t in (0.1, 0.5, 1.0, 5.0):
            q_oracle = quantum_probabilities_taylor(lap, t)
            c_oracle = classical_probabilities_taylor(lap, t)
            grid = TimeGrid(times=np.array([t]), kind="linear")
            for j in range(n):
                q = quantum_transition(spec, j, grid).values[0]
                c = classical_transition(spec, j, grid).values[0]
                worst = max(worst, float(np.abs(q - q_oracle[:, j]).max()))
                worst = max(worst, float(np.abs(c - c_oracle[:, j]).max()))
    assert worst <= 1e-8
    report("oracle equivalence", f"max |eigh - Taylor| = {worst:.2e} over 100 graphs (tol 1e-8)")


def test_determinism_across_worker_counts(tmp_path):
    args = [
        "figure", "return-probs", "--n", "40", "--b", "1,3", "--r", "6",
        "--seed", "11", "--grid", "log:0.01:100:40",
    ]
    dirs = []
    for threads, name in ((1, "one"), (8, "eight")):
        out = tmp_path / name
        cmd = [sys.executable, "-m", "swnsim.cli"] + args + [
            "--out", str(out), "--threads", str(threads),
        ]
        subprocess.run(cmd, check=True, capture_output=True, cwd=tmp_path)
        dirs.append(out)
    csvs = sorted(p.name for p in dirs[0].glob("*.csv"))
    assert csvs, "no CSV outputs produced"
    for name in csvs:
        a = (dirs[0] / name).read_bytes()
        b = (dirs[1] / name).read_bytes()
        assert a == b, f"{name} differs between 1 and 8 workers"
    report("determinism", f"{len(csvs)} CSVs bit-identical across 1 and 8 workers")
