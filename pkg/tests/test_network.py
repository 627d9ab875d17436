import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swnsim import (
    ValidationError,
    laplacian,
    make_ring,
    make_swn,
    network_from_json,
    network_to_json,
)
from swnsim.network import max_extra_bonds, ring_edges


def test_smallest_ring():
    net = make_ring(3)
    assert net.edges == frozenset({(0, 1), (1, 2), (0, 2)})
    assert net.extra_bonds == 0


def test_ring_degrees():
    net = make_ring(100)
    assert len(net.edges) == 100
    assert np.all(net.degrees() == 2)


def test_ring_backbone_n16():
    net = make_ring(16)
    assert ring_edges(16) <= set(net.edges)


def test_ring_too_small():
    with pytest.raises(ValidationError):
        make_ring(2)


def test_swn_b0_is_ring():
    assert make_swn(100, 0, seed=99).edges == make_ring(100).edges


def test_swn_sketch_size():
    net = make_swn(16, 11, seed=4)
    assert len(net.edges) == 27
    assert ring_edges(16) <= set(net.edges)


def test_swn_saturates_to_complete_graph():
    net = make_swn(100, 4850, seed=0)
    assert len(net.edges) == 100 * 99 // 2
    assert np.all(net.degrees() == 99)


def test_swn_capacity_error():
    with pytest.raises(ValidationError):
        make_swn(10, max_extra_bonds(10) + 1, seed=0)
    with pytest.raises(ValidationError):
        make_swn(10, -1, seed=0)


def test_swn_deterministic():
    a = make_swn(60, 17, seed=123)
    b = make_swn(60, 17, seed=123)
    assert a.edges == b.edges
    c = make_swn(60, 17, seed=124)
    assert a.edges != c.edges


def test_laplacian_ring3():
    expected = np.array([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    assert np.array_equal(laplacian(make_ring(3)), expected)


def test_laplacian_ring4_spectrum():
    # closed form 2 - 2cos(2 pi k / 4) gives {0, 2, 2, 4}
    evals = np.linalg.eigvalsh(laplacian(make_ring(4)).astype(float))
    assert np.allclose(evals, [0.0, 2.0, 2.0, 4.0], atol=1e-12)


def test_laplacian_row_sums_zero():
    lap = laplacian(make_swn(40, 25, seed=8))
    assert lap.dtype == np.int64
    assert np.array_equal(lap, lap.T)
    assert np.all(lap.sum(axis=1) == 0)


def test_json_round_trip():
    net = make_swn(20, 7, seed=11)
    clone = network_from_json(network_to_json(net))
    assert clone == net


def test_json_rejects_bad_edges():
    with pytest.raises(ValidationError):
        network_from_json('{"n": 5, "b": 1, "seed": 0, "extra_edges": [[0, 9]]}')


@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(min_value=3, max_value=60),
    b_frac=st.floats(min_value=0.0, max_value=1.0),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_swn_invariants(n, b_frac, seed):
    b = int(round(b_frac * max_extra_bonds(n)))
    net = make_swn(n, b, seed)
    # simple graph with the full ring backbone and exact edge accounting
    assert all(u < v for u, v in net.edges)
    assert len(net.edges) == n + b
    assert ring_edges(n) <= set(net.edges)
    assert net.degrees().sum() == 2 * (n + b)
    assert make_swn(n, b, seed).edges == net.edges
