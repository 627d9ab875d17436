#!/usr/bin/env python3
"""Time the numpy and numba kernel flavours on realistic workloads.

Usage: python benchmarks/bench_kernels.py [--n 100] [--repeats 20]

Shapes mirror the production runs: carpet grids (401 linear points),
return-probability grids (400 log points), and the degeneracy-cluster
accumulations of a ring-like spectrum.  Numba kernels are warmed up
before timing so compilation is excluded.
"""

import argparse
import time

import numpy as np

from swnsim import diagonalize, laplacian, make_ring, make_swn
from swnsim.kernels import kernel_flavours
from swnsim.lta import cluster_degeneracies


def timeit(fn, args, repeats):
    fn(*args)  # warm-up (and JIT compile for the numba flavour)
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn(*args)
    return (time.perf_counter() - t0) / repeats


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=100)
    parser.add_argument("--b", type=int, default=100)
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    tables = kernel_flavours()
    if tables["numba"] is None:
        raise SystemExit("numba flavour unavailable; nothing to compare")

    swn = diagonalize(laplacian(make_swn(args.n, args.b, seed=1)))
    ring = diagonalize(laplacian(make_ring(args.n)))
    evecs = np.ascontiguousarray(swn.eigenvectors)
    sqamps = np.ascontiguousarray(evecs**2)
    carpet_times = np.arange(0.0, 100.25, 0.25)
    log_times = np.logspace(-2, 4, 400)
    ring_starts = cluster_degeneracies(ring).starts
    swn_starts = cluster_degeneracies(swn).starts

    cases = [
        ("quantum_field (carpet grid)", (swn.eigenvalues, evecs, args.n // 2, carpet_times)),
        ("classical_field (log grid)", (swn.eigenvalues, evecs, args.n // 2, log_times)),
        ("return_quantum (log grid)", (swn.eigenvalues, sqamps, log_times)),
        ("return_classical (log grid)", (swn.eigenvalues, log_times)),
        ("bound_curve (log grid)", (swn.eigenvalues, log_times)),
        ("lta_matrix (ring clusters)", (np.ascontiguousarray(ring.eigenvectors), ring_starts)),
        ("lta_matrix (swn singletons)", (evecs, swn_starts)),
        ("chi_bar_terms (swn)", (sqamps, swn_starts)),
    ]

    print(f"n={args.n} b={args.b} repeats={args.repeats}")
    print(f"{'kernel':34s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}")
    for name, case_args in cases:
        key = name.split(" ")[0]
        t_np = timeit(tables["numpy"][key], case_args, args.repeats)
        t_nb = timeit(tables["numba"][key], case_args, args.repeats)
        print(f"{name:34s} {t_np * 1e3:9.3f}ms {t_nb * 1e3:9.3f}ms {t_np / t_nb:7.2f}x")


if __name__ == "__main__":
    main()
