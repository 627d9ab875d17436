import numpy as np
import pytest

from swnsim import (
    ValidationError,
    TimeGrid,
    avg_return_classical,
    avg_return_quantum,
    classical_transition,
    diagonalize,
    laplacian,
    linear_grid,
    log_grid,
    lower_bound,
    make_ring,
    make_swn,
    quantum_transition,
)
from swnsim.dynamics import local_maxima, slope_loglog
from oracles import classical_probabilities_taylor, quantum_probabilities_taylor


@pytest.fixture(scope="module")
def ring100():
    return diagonalize(laplacian(make_ring(100)))


@pytest.fixture(scope="module")
def swn100():
    return diagonalize(laplacian(make_swn(100, 20, seed=17)))


def test_grid_validation():
    with pytest.raises(ValidationError):
        TimeGrid(times=np.array([1.0, 0.5]), kind="linear")
    with pytest.raises(ValidationError):
        TimeGrid(times=np.array([-1.0, 0.5]), kind="linear")
    with pytest.raises(ValidationError):
        log_grid(0.0, 10.0, 5)


def test_linear_grid_includes_endpoints():
    g = linear_grid(0.0, 100.0, 0.25)
    assert g.times[0] == 0.0
    assert g.times[-1] == 100.0
    assert g.times.size == 401


def test_identity_at_t0(swn100):
    g = TimeGrid(times=np.array([0.0]), kind="linear")
    for field in (quantum_transition(swn100, 7, g), classical_transition(swn100, 7, g)):
        expected = np.zeros(100)
        expected[7] = 1.0
        assert np.abs(field.values[0] - expected).max() < 1e-10


def test_two_node_hopping_is_sin_squared():
    lap = np.array([[1, -1], [-1, 1]], dtype=np.int64)
    spec = diagonalize(lap)
    g = linear_grid(0.0, 5.0, 0.05)
    field = quantum_transition(spec, 0, g)
    assert np.abs(field.values[:, 1] - np.sin(g.times) ** 2).max() < 1e-10
    for t in (0.3, 1.7, 5.0):
        oracle = quantum_probabilities_taylor(lap, t)
        idx = int(round(t / 0.05))
        assert np.abs(field.values[idx] - oracle[:, 0]).max() < 1e-10


def test_classical_small_ring_matches_taylor_oracle():
    lap = laplacian(make_ring(4))
    spec = diagonalize(lap)
    g = TimeGrid(times=np.array([0.05, 0.2, 0.8]), kind="linear")
    field = classical_transition(spec, 2, g)
    for i, t in enumerate(g.times):
        oracle = classical_probabilities_taylor(lap, t)
        assert np.abs(field.values[i] - oracle[:, 2]).max() < 1e-10


def test_source_validation(swn100):
    g = linear_grid(0.0, 1.0, 0.5)
    with pytest.raises(ValidationError):
        quantum_transition(swn100, 100, g)
    with pytest.raises(ValidationError):
        classical_transition(swn100, -1, g)


def test_probability_conservation(swn100):
    g = log_grid(1e-2, 1e3, 60)
    q = quantum_transition(swn100, 11, g).values
    c = classical_transition(swn100, 11, g).values
    assert np.abs(q.sum(axis=1) - 1.0).max() < 1e-9
    assert np.abs(c.sum(axis=1) - 1.0).max() < 1e-9
    assert q.min() >= 0.0
    assert c.min() >= -1e-12
    assert q.max() <= 1.0 + 1e-12
    assert c.max() <= 1.0 + 1e-12


def test_transition_symmetry(swn100):
    g = TimeGrid(times=np.array([0.7, 3.3]), kind="linear")
    qa = quantum_transition(swn100, 5, g).values
    qb = quantum_transition(swn100, 60, g).values
    assert abs(qa[0, 60] - qb[0, 5]) < 1e-10
    assert abs(qa[1, 60] - qb[1, 5]) < 1e-10
    ca = classical_transition(swn100, 5, g).values
    cb = classical_transition(swn100, 60, g).values
    assert abs(ca[0, 60] - cb[0, 5]) < 1e-10


def test_return_curves_start_at_one(swn100):
    g = TimeGrid(times=np.array([0.0, 1.0]), kind="linear")
    assert abs(avg_return_classical(swn100, g).values[0] - 1.0) < 1e-12
    assert abs(avg_return_quantum(swn100, g).values[0] - 1.0) < 1e-10
    assert abs(lower_bound(swn100, g).values[0] - 1.0) < 1e-12


def test_avg_return_classical_consistency(swn100):
    # eigenvalue-only curve equals the node average of the full field
    g = log_grid(1e-1, 1e2, 25)
    curve = avg_return_classical(swn100, g).values
    diag = np.zeros_like(curve)
    for j in range(swn100.n):
        diag += classical_transition(swn100, j, g).values[:, j]
    assert np.abs(curve - diag / swn100.n).max() < 1e-10


def test_avg_return_quantum_consistency(swn100):
    g = log_grid(1e-1, 1e2, 25)
    curve = avg_return_quantum(swn100, g).values
    diag = np.zeros_like(curve)
    for j in range(swn100.n):
        diag += quantum_transition(swn100, j, g).values[:, j]
    assert np.abs(curve - diag / swn100.n).max() < 1e-10


def test_lower_bound_holds(swn100):
    g = log_grid(1e-2, 1e4, 200)
    bound = lower_bound(swn100, g).values
    ret = avg_return_quantum(swn100, g).values
    assert np.all(bound <= ret + 1e-12)


def test_ring_bound_is_exact(ring100):
    g = linear_grid(0.0, 50.0, 0.5)
    bound = lower_bound(ring100, g).values
    ret = avg_return_quantum(ring100, g).values
    assert np.abs(bound - ret).max() < 1e-10


def test_classical_equipartition(swn100):
    g = TimeGrid(times=np.array([1e4]), kind="linear")
    field = classical_transition(swn100, 3, g)
    assert np.abs(field.values[0] - 1e-2).max() < 1e-6


def test_slope_loglog_exact_power_law():
    x = np.logspace(0, 2, 50)
    slope, used = slope_loglog(x, 3.0 * x**-1.5, (1.0, 100.0))
    assert abs(slope + 1.5) < 1e-12
    assert used == 50


def test_slope_loglog_window_too_small():
    with pytest.raises(ValidationError):
        slope_loglog(np.array([1.0, 2.0]), np.array([1.0, 2.0]), (5.0, 6.0))


def test_local_maxima_of_sin_squared():
    t = np.linspace(0, 10, 4001)
    peaks_t, peaks_v = local_maxima(t, np.sin(t) ** 2, (0.0, 10.0))
    assert len(peaks_t) == 3
    assert np.abs(peaks_t - np.array([np.pi / 2, 3 * np.pi / 2, 5 * np.pi / 2])).max() < 5e-3
    assert np.abs(peaks_v - 1.0).max() < 1e-5
