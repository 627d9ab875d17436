"""CSV and JSON writers for run artifacts.

Floats are written with repr (shortest round-trip form), so identical
inputs always produce identical bytes; readers exist for the formats the
tests and the plotting layer consume.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .spectral import DosHistogram, SpacingHistogram, TailFit


def _fmt(x) -> str:
    return repr(float(x))


def write_curve_csv(path, times, values) -> None:
    """ReturnCurve schema: t,value."""
    lines = ["t,value"]
    for t, v in zip(times, values):
        lines.append(f"{_fmt(t)},{_fmt(v)}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_curve_csv(path):
    rows = [line.split(",") for line in Path(path).read_text().strip().splitlines()[1:]]
    data = np.array([[float(a), float(b)] for a, b in rows])
    return data[:, 0], data[:, 1]


def write_field_csv(path, times, values) -> None:
    """TransitionField schema: header t,v_0..v_{N-1}; one row per time."""
    n = values.shape[1]
    header = "t," + ",".join(f"v_{k}" for k in range(n))
    lines = [header]
    for t, row in zip(times, values):
        lines.append(_fmt(t) + "," + ",".join(_fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def read_field_csv(path):
    body = Path(path).read_text().strip().splitlines()
    data = np.array([[float(x) for x in line.split(",")] for line in body[1:]])
    return data[:, 0], data[:, 1:]


def write_matrix_csv(path, matrix) -> None:
    """Square matrix with row/column index headers."""
    n = matrix.shape[0]
    lines = ["idx," + ",".join(str(j) for j in range(matrix.shape[1]))]
    for i in range(n):
        lines.append(str(i) + "," + ",".join(_fmt(v) for v in matrix[i]))
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix_csv(path):
    body = Path(path).read_text().strip().splitlines()
    return np.array([[float(x) for x in line.split(",")[1:]] for line in body[1:]])


def write_histogram_csv(path, hist: DosHistogram | SpacingHistogram) -> None:
    """Histogram schema: bin_left,bin_right,density."""
    lines = ["bin_left,bin_right,density"]
    for left, right, dens in zip(hist.bin_edges[:-1], hist.bin_edges[1:], hist.densities):
        lines.append(f"{_fmt(left)},{_fmt(right)},{_fmt(dens)}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_histogram_csv(path):
    body = Path(path).read_text().strip().splitlines()
    data = np.array([[float(x) for x in line.split(",")] for line in body[1:]])
    edges = np.concatenate([data[:, 0], data[-1:, 1]])
    return edges, data[:, 2]


def write_tailfit_json(path, fit: TailFit) -> None:
    payload = {
        "mu": fit.mu,
        "amplitude": fit.amplitude,
        "rate": fit.rate,
        "range": [fit.fit_range[0], fit.fit_range[1]],
        "residual": fit.residual,
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def write_sweep_csv(path, rows) -> None:
    """chi sweep schema: n,b,b_over_n,chi_bar,alpha_bar_lta,r_used."""
    lines = ["n,b,b_over_n,chi_bar,alpha_bar_lta,r_used"]
    for row in rows:
        lines.append(
            f"{row['n']},{row['b']},{_fmt(row['b_over_n'])},"
            f"{_fmt(row['chi_bar'])},{_fmt(row['alpha_bar_lta'])},{row['r_used']}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def read_sweep_csv(path):
    body = Path(path).read_text().strip().splitlines()
    rows = []
    for line in body[1:]:
        n, b, frac, cb, ab, r = line.split(",")
        rows.append(
            {
                "n": int(n), "b": int(b), "b_over_n": float(frac),
                "chi_bar": float(cb), "alpha_bar_lta": float(ab), "r_used": int(r),
            }
        )
    return rows


def write_manifest(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def read_manifest(path) -> dict:
    return json.loads(Path(path).read_text())
