"""Hot numeric kernels, in two interchangeable flavours.

Every kernel exists as a pure-numpy implementation (``_np_*``) and, when
numba is importable, a jit-compiled one (``_nb_*``).  The module-level
names are bound to one flavour at import time: numba when available,
unless the environment variable ``SWNSIM_NUMBA`` is set to ``0``/``off``,
which forces the numpy path.  ``benchmarks/bench_kernels.py`` times the
two flavours side by side.

All kernels take float64 arrays; eigenvector matrices are (node, mode)
ordered, i.e. column ``n`` is the n-th eigenstate.
"""

from __future__ import annotations

import os

import numpy as np


def _numba_requested() -> bool:
    flag = os.environ.get("SWNSIM_NUMBA", "auto").strip().lower()
    return flag not in ("0", "off", "false", "no")


# ---------------------------------------------------------------------------
# numpy flavour
# ---------------------------------------------------------------------------


def _np_quantum_field(evals, evecs, source, times):
    """|<k|exp(-iAt)|source>|^2 for all k over the grid -> (T, N)."""
    weights = evecs[source, :]
    phases = np.exp(-1j * np.outer(times, evals))
    amp = (phases * weights) @ evecs.T
    return amp.real**2 + amp.imag**2


def _np_classical_field(evals, evecs, source, times):
    """<k|exp(-At)|source> for all k over the grid -> (T, N)."""
    weights = evecs[source, :]
    decays = np.exp(-np.outer(times, evals))
    return (decays * weights) @ evecs.T


def _np_return_quantum(evals, sqamps, times):
    """Node-averaged quantum return probability -> (T,).

    ``sqamps[j, n] = <j|Phi_n>^2``; the diagonal return amplitude of node j
    is the phase-weighted row sum, and the curve is the mean of its
    squared modulus over nodes.
    """
    phases = np.exp(-1j * np.outer(times, evals))
    amp = phases @ sqamps.T
    return np.mean(amp.real**2 + amp.imag**2, axis=1)


def _np_return_classical(evals, times):
    """Eigenvalue-only classical return curve -> (T,)."""
    return np.mean(np.exp(-np.outer(times, evals)), axis=1)


def _np_bound_curve(evals, times):
    """Eigenvalue-only lower bound |mean_n exp(-iE_n t)|^2 -> (T,)."""
    amp = np.mean(np.exp(-1j * np.outer(times, evals)), axis=1)
    return amp.real**2 + amp.imag**2


def _np_lta_matrix(evecs, starts):
    """Long-time-averaged transition matrix from degeneracy clusters.

    ``starts`` holds cluster boundaries into the sorted mode axis
    (length C+1).  Within each cluster the spectral projector P survives
     the time average, contributing its elementwise square.
    """
    n = evecs.shape[0]
    sizes = np.diff(starts)
    out = np.zeros((n, n))
    singles = evecs[:, starts[:-1][sizes == 1]]
    if singles.size:
        w = singles**2
        out += w @ w.T
    for c in np.nonzero(sizes > 1)[0]:
        block = evecs[:, starts[c]:starts[c + 1]]
        proj = block @ block.T
        out += proj * proj
    return out


def _np_chi_bar_terms(sqamps, starts):
    """sum_j sum_clusters (sum_{n in cluster} sqamps[j,n])^2 (scalar)."""
    segsums = np.add.reduceat(sqamps, starts[:-1], axis=1)
    return float(np.sum(segsums * segsums))


_NP_KERNELS = {
    "quantum_field": _np_quantum_field,
    "classical_field": _np_classical_field,
    "return_quantum": _np_return_quantum,
    "return_classical": _np_return_classical,
    "bound_curve": _np_bound_curve,
    "lta_matrix": _np_lta_matrix,
    "chi_bar_terms": _np_chi_bar_terms,
}


# ---------------------------------------------------------------------------
# numba flavour
# ---------------------------------------------------------------------------

_NB_KERNELS: dict | None = None

if _numba_requested():
    try:
        from numba import njit
    except ImportError:
        njit = None

    if njit is not None:

        @njit(cache=True, nogil=True)
        def _nb_quantum_field(evals, evecs, source, times):
            n = evals.shape[0]
            nt = times.shape[0]
            out = np.empty((nt, n))
            weights = evecs[source, :].copy()
            wre = np.empty(n)
            wim = np.empty(n)
            for it in range(nt):
                t = times[it]
                for m in range(n):
                    ph = evals[m] * t
                    wre[m] = weights[m] * np.cos(ph)
                    wim[m] = -weights[m] * np.sin(ph)
                are = evecs @ wre
                aim = evecs @ wim
                for k in range(n):
                    out[it, k] = are[k] * are[k] + aim[k] * aim[k]
            return out

        @njit(cache=True, nogil=True)
        def _nb_classical_field(evals, evecs, source, times):
            n = evals.shape[0]
            nt = times.shape[0]
            out = np.empty((nt, n))
            weights = evecs[source, :].copy()
            w = np.empty(n)
            for it in range(nt):
                t = times[it]
                for m in range(n):
                    w[m] = weights[m] * np.exp(-evals[m] * t)
                out[it, :] = evecs @ w
            return out

        @njit(cache=True, nogil=True)
        def _nb_return_quantum(evals, sqamps, times):
            nj, n = sqamps.shape
            nt = times.shape[0]
            out = np.empty(nt)
            wre = np.empty(n)
            wim = np.empty(n)
            for it in range(nt):
                t = times[it]
                for m in range(n):
                    ph = evals[m] * t
                    wre[m] = np.cos(ph)
                    wim[m] = -np.sin(ph)
                are = sqamps @ wre
                aim = sqamps @ wim
                acc = 0.0
                for j in range(nj):
                    acc += are[j] * are[j] + aim[j] * aim[j]
                out[it] = acc / nj
            return out

        @njit(cache=True, nogil=True)
        def _nb_return_classical(evals, times):
            n = evals.shape[0]
            nt = times.shape[0]
            out = np.empty(nt)
            for it in range(nt):
                acc = 0.0
                for m in range(n):
                    acc += np.exp(-evals[m] * times[it])
                out[it] = acc / n
            return out

        @njit(cache=True, nogil=True)
        def _nb_bound_curve(evals, times):
            n = evals.shape[0]
            nt = times.shape[0]
            out = np.empty(nt)
            for it in range(nt):
                re = 0.0
                im = 0.0
                for m in range(n):
                    ph = evals[m] * times[it]
                    re += np.cos(ph)
                    im -= np.sin(ph)
                out[it] = (re * re + im * im) / (n * n)
            return out

        @njit(cache=True, nogil=True)
        def _nb_lta_matrix(evecs, starts):
            n = evecs.shape[0]
            out = np.zeros((n, n))
            ncl = starts.shape[0] - 1
            for c in range(ncl):
                a, b = starts[c], starts[c + 1]
                if b - a == 1:
                    v = evecs[:, a]
                    for k in range(n):
                        vk = v[k] * v[k]
                        for j in range(n):
                            out[k, j] += vk * v[j] * v[j]
                else:
                    for k in range(n):
                        for j in range(n):
                            p = 0.0
                            for m in range(a, b):
                                p += evecs[k, m] * evecs[j, m]
                            out[k, j] += p * p
            return out

        @njit(cache=True, nogil=True)
        def _nb_chi_bar_terms(sqamps, starts):
            nj = sqamps.shape[0]
            ncl = starts.shape[0] - 1
            total = 0.0
            for j in range(nj):
                for c in range(ncl):
                    s = 0.0
                    for m in range(starts[c], starts[c + 1]):
                        s += sqamps[j, m]
                    total += s * s
            return total

        _NB_KERNELS = {
            "quantum_field": _nb_quantum_field,
            "classical_field": _nb_classical_field,
            "return_quantum": _nb_return_quantum,
            "return_classical": _nb_return_classical,
            "bound_curve": _nb_bound_curve,
            "lta_matrix": _nb_lta_matrix,
            "chi_bar_terms": _nb_chi_bar_terms,
        }


BACKEND = "numba" if _NB_KERNELS is not None else "numpy"
_ACTIVE = _NB_KERNELS if _NB_KERNELS is not None else _NP_KERNELS

quantum_field = _ACTIVE["quantum_field"]
classical_field = _ACTIVE["classical_field"]
return_quantum = _ACTIVE["return_quantum"]
return_classical = _ACTIVE["return_classical"]
bound_curve = _ACTIVE["bound_curve"]
lta_matrix_kernel = _ACTIVE["lta_matrix"]
chi_bar_terms = _ACTIVE["chi_bar_terms"]


def kernel_flavours():
    """Both kernel tables, for parity tests and benchmarks."""
    return {"numpy": _NP_KERNELS, "numba": _NB_KERNELS}
