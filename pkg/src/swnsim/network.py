"""Ring and small-world network generation and the discrete Laplacian.

Networks are N nodes on a ring (bonds {j, j+1 mod N}) plus B extra bonds
drawn uniformly among the currently unconnected pairs: simple undirected
graphs, no self-loops, no parallel bonds.  Node indices are 0-based
everywhere, including serialized output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Network:
    """A simple undirected graph with a guaranteed ring backbone.

    Attributes
    ----------
    n : int
        Node count (>= 3).
    edges : frozenset[tuple[int, int]]
        Unordered bonds stored as (min, max) pairs; contains the N ring
        bonds plus ``extra_bonds`` shortcuts.
    extra_bonds : int
        Number of non-ring bonds B.
    seed : int
        RNG seed used to draw the shortcuts (0 for the plain ring).
    """

    n: int
    edges: frozenset[Edge]
    extra_bonds: int
    seed: int = 0

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


def ring_edges(n: int) -> set[Edge]:
    return {(j, (j + 1) % n) if j + 1 < n else (0, n - 1) for j in range(n)}


def max_extra_bonds(n: int) -> int:
    """Number of node pairs not already connected by the ring."""
    return n * (n - 1) // 2 - n


def make_ring(n: int) -> Network:
    """Regular one-dimensional ring of ``n`` nodes.

    Raises
    ------
    ValidationError
        If ``n < 3`` (no simple ring exists below that).
    """
    if n < 3:
        raise ValidationError(f"ring needs n >= 3, got n={n}")
    return Network(n=n, edges=frozenset(ring_edges(n)), extra_bonds=0, seed=0)


def make_swn(n: int, b: int, seed: int) -> Network:
    """Ring of ``n`` nodes plus ``b`` random shortcut bonds.

    Shortcuts are sampled uniformly without replacement from the pairs
    not already connected; the result is deterministic for a fixed seed.

    Raises
    ------
    ValidationError
        If ``n < 3``, ``b < 0``, or ``b`` exceeds the number of available
        non-ring pairs.
    """
    if n < 3:
        raise ValidationError(f"network needs n >= 3, got n={n}")
    capacity = max_extra_bonds(n)
    if b < 0 or b > capacity:
        raise ValidationError(
            f"b={b} out of range: a simple graph on n={n} ring nodes "
            f"admits at most {capacity} extra bonds"
        )
    edges = ring_edges(n)
    rng = np.random.default_rng(seed)
    if b > capacity // 2:
        # dense request: enumerate the non-edges and sample without replacement
        pool = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
        picks = rng.choice(len(pool), size=b, replace=False)
        for i in picks:
            edges.add(pool[i])
    else:
        accepted = 0
        while accepted < b:
            u = int(rng.integers(0, n))
            v = int(rng.integers(0, n))
            if u == v:
                continue
            e = (u, v) if u < v else (v, u)
            if e in edges:
                continue
            edges.add(e)
            accepted += 1
    return Network(n=n, edges=frozenset(edges), extra_bonds=b, seed=int(seed))


def laplacian(net: Network) -> np.ndarray:
    """Discrete Laplacian: node degree on the diagonal, -1 per bond.

    Integer matrix; every row sums to zero exactly, so it is symmetric
    positive semidefinite with smallest eigenvalue 0.
    """
    a = np.zeros((net.n, net.n), dtype=np.int64)
    for u, v in net.edges:
        a[u, v] = -1
        a[v, u] = -1
        a[u, u] += 1
        a[v, v] += 1
    return a


def network_to_json(net: Network) -> str:
    """Serialize as {"n", "b", "seed", "extra_edges"} (ring bonds implicit)."""
    extra = sorted(e for e in net.edges if e not in ring_edges(net.n))
    payload = {
        "n": net.n,
        "b": net.extra_bonds,
        "seed": net.seed,
        "extra_edges": [[int(u), int(v)] for u, v in extra],
    }
    return json.dumps(payload)


def network_from_json(text: str) -> Network:
    payload = json.loads(text)
    n = int(payload["n"])
    if n < 3:
        raise ValidationError(f"serialized network has n={n} < 3")
    edges = ring_edges(n)
    for u, v in payload["extra_edges"]:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ValidationError(f"edge [{u},{v}] out of bounds for n={n}")
        edges.add((u, v) if u < v else (v, u))
    net = Network(
        n=n,
        edges=frozenset(edges),
        extra_bonds=int(payload["b"]),
        seed=int(payload["seed"]),
    )
    if len(net.edges) != n + net.extra_bonds:
        raise ValidationError("serialized edge list inconsistent with n and b")
    return net
