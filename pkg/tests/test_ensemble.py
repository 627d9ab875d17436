import numpy as np
import pytest

from swnsim import (
    EnsembleConfig,
    NumericalError,
    ValidationError,
    chi_sweep,
    linear_grid,
    log_grid,
    lower_bound,
    ring_bloch_spectrum,
    run_ensemble,
)
from swnsim.ensemble import lta_operator, realization_seed, realization_seeds
from swnsim import kernels


def small_cfg(**kw):
    base = dict(
        n=30,
        b=8,
        r=6,
        master_seed=77,
        observables=("quantum_return", "lower_bound", "chi_bar"),
        grid=log_grid(1e-1, 1e2, 40),
    )
    base.update(kw)
    return EnsembleConfig(**base)


def test_seed_derivation_is_slice_stable():
    assert realization_seeds(5, 4) == [realization_seed(5, i) for i in range(4)]
    assert realization_seeds(5, 2, offset=2) == realization_seeds(5, 4)[2:]
    assert realization_seeds(5, 4) != realization_seeds(6, 4)


def test_config_validation():
    with pytest.raises(ValidationError):
        small_cfg(r=0)
    with pytest.raises(ValidationError):
        small_cfg(observables=("nonsense",))
    with pytest.raises(ValidationError):
        small_cfg(observables=("quantum_return",), grid=None)
    with pytest.raises(ValidationError):
        small_cfg(observables=("carpet",), source=None)


def test_run_is_deterministic():
    a = run_ensemble(small_cfg())
    b = run_ensemble(small_cfg())
    assert a.seeds == b.seeds
    for key in a.means:
        assert np.array_equal(a.means[key], b.means[key])


def test_thread_count_does_not_change_results():
    a = run_ensemble(small_cfg(), threads=1)
    b = run_ensemble(small_cfg(), threads=4)
    for key in a.means:
        assert np.array_equal(a.means[key], b.means[key])


def test_mean_of_means_consistency():
    whole = run_ensemble(small_cfg(r=10))
    first = run_ensemble(small_cfg(r=5))
    second = run_ensemble(small_cfg(r=5, seed_offset=5))
    for key in whole.means:
        merged = (np.asarray(first.means[key]) + np.asarray(second.means[key])) / 2
        assert np.abs(merged - whole.means[key]).max() < 1e-12


def test_bound_holds_for_ensemble_means():
    res = run_ensemble(small_cfg(r=12))
    assert np.all(res.means["lower_bound"] <= res.means["quantum_return"] + 1e-12)


def test_pooled_observables_shapes():
    cfg = EnsembleConfig(
        n=20, b=4, r=5, master_seed=3, observables=("eigenvalues", "spacings")
    )
    res = run_ensemble(cfg)
    assert res.pooled["eigenvalues"].shape == (5, 20)
    assert res.pooled["spacings"].shape == (5 * 19,)


def test_carpet_observable_shape():
    grid = linear_grid(0.0, 5.0, 0.5)
    cfg = EnsembleConfig(
        n=20, b=2, r=3, master_seed=9, observables=("carpet",), grid=grid, source=10
    )
    res = run_ensemble(cfg)
    assert res.means["carpet"].shape == (11, 20)
    assert np.abs(res.means["carpet"].sum(axis=1) - 1.0).max() < 1e-9


def test_numerical_failure_reports_seed(monkeypatch):
    def broken(evals, evecs, source, times):
        return np.full((times.shape[0], evals.shape[0]), 0.5)

    monkeypatch.setattr(kernels, "quantum_field", broken)
    grid = linear_grid(0.0, 1.0, 0.5)
    cfg = EnsembleConfig(
        n=10, b=2, r=2, master_seed=11, observables=("carpet",), grid=grid, source=0
    )
    with pytest.raises(NumericalError, match="seed"):
        run_ensemble(cfg)


def test_lta_operator_constant_curve():
    times = np.linspace(0.0, 10.0, 101)
    assert lta_operator(times, np.full(101, 0.37)) == pytest.approx(0.37, abs=1e-15)


def test_lta_operator_horizon_error():
    times = np.linspace(0.0, 10.0, 101)
    with pytest.raises(ValidationError):
        lta_operator(times, np.ones(101), horizon=100.0)


def test_lta_operator_ring_quadrature():
    # finite-horizon average of the ring bound vs the exact cluster value
    spec = ring_bloch_spectrum(100)
    grid = linear_grid(0.0, 1e4, 0.05)
    curve = lower_bound(spec, grid).values
    assert abs(lta_operator(grid.times, curve, horizon=1e4) - 0.0198) < 2e-3


def test_ensemble_fluctuation_suppression():
    # time fluctuations of the averaged return shrink as R grows
    grid = linear_grid(1e3, 1e4, 45.0)
    stds = []
    for r in (10, 100, 500):
        cfg = EnsembleConfig(
            n=100, b=5, r=r, master_seed=31415,
            observables=("carpet",), grid=grid, source=50,
        )
        res = run_ensemble(cfg, threads=2)
        stds.append(res.means["carpet"][:, 50].std())
    assert stds[0] > stds[1] > stds[2]


def test_chi_sweep_rows():
    rows = chi_sweep([40], [0.1, 0.5], r=4, master_seed=6)
    assert [r["b"] for r in rows] == [4, 20]
    assert all(set(r) == {"n", "b", "b_over_n", "chi_bar", "alpha_bar_lta", "r_used"} for r in rows)
    again = chi_sweep([40], [0.1, 0.5], r=4, master_seed=6)
    assert rows == again


def test_chi_sweep_rejects_zero_bonds():
    with pytest.raises(ValidationError):
        chi_sweep([40], [0.001], r=2, master_seed=6)
