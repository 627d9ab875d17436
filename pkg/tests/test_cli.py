import json

import numpy as np
import pytest

from swnsim import io
from swnsim.cli import main


def run_cli(args):
    return main(list(args))


def test_unknown_figure_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run_cli(["figure", "nope", "--out", str(tmp_path)])
    assert exc.value.code == 2


def test_bad_grid_spec_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as exc:
        run_cli(["figure", "carpets", "--grid", "weird:1:2", "--out", str(tmp_path)])
    assert exc.value.code == 2


def test_validation_failure_exit_code(tmp_path):
    # more extra bonds than a simple graph admits
    code = run_cli([
        "figure", "dos", "--n", "10", "--b", "9999", "--r", "2",
        "--out", str(tmp_path / "x"),
    ])
    assert code == 3


def test_figure_dos_outputs(tmp_path):
    out = tmp_path / "dos"
    code = run_cli([
        "figure", "dos", "--n", "40", "--b", "2,10", "--r", "40",
        "--seed", "5", "--bins", "24", "--out", str(out),
    ])
    assert code == 0
    manifest = io.read_manifest(out / "manifest.json")
    assert manifest["figure"] == "dos"
    assert manifest["params"]["bins"] == 24
    expected = {"dos_b2.csv", "spacing_b2.csv", "dos_b10.csv", "spacing_b10.csv", "tailfit_b10.json"}
    assert expected == set(manifest["files"])
    for name in expected:
        assert (out / name).exists()
    edges, dens = io.read_histogram_csv(out / "dos_b2.csv")
    assert abs(np.sum(dens * np.diff(edges)) - 1.0) < 1e-12
    fit = json.loads((out / "tailfit_b10.json").read_text())
    assert set(fit) == {"mu", "amplitude", "rate", "range", "residual"}
    assert len(manifest["seeds"]["2"]) == 40


def test_figure_carpets_ring_single_realization(tmp_path):
    out = tmp_path / "carpets"
    code = run_cli([
        "figure", "carpets", "--n", "30", "--b", "0", "--r", "1", "--j", "15",
        "--grid", "lin:0:5:0.5", "--out", str(out),
    ])
    assert code == 0
    times, values = io.read_field_csv(out / "carpet_b0.csv")
    assert times[0] == 0.0 and times[-1] == 5.0
    start = np.zeros(30)
    start[15] = 1.0
    assert np.abs(values[0] - start).max() < 1e-10


def test_figure_return_probs_files(tmp_path):
    out = tmp_path / "ret"
    code = run_cli([
        "figure", "return-probs", "--n", "30", "--b", "0,3", "--r", "4",
        "--grid", "log:0.1:100:20", "--out", str(out),
    ])
    assert code == 0
    for b in (0, 3):
        for stem in ("classical", "quantum", "bound"):
            t, v = io.read_curve_csv(out / f"{stem}_b{b}.csv")
            assert t.size == 20
            assert np.all(v >= 0) and np.all(v <= 1 + 1e-12)
    # bound below quantum return, pointwise, for each written bundle
    _, q = io.read_curve_csv(out / "quantum_b3.csv")
    _, a = io.read_curve_csv(out / "bound_b3.csv")
    assert np.all(a <= q + 1e-12)


def test_figure_zoom_files(tmp_path):
    out = tmp_path / "zoom"
    code = run_cli([
        "figure", "zoom", "--n", "24", "--b", "0,2", "--r", "3",
        "--grid", "lin:1:20:1", "--out", str(out),
    ])
    assert code == 0
    manifest = io.read_manifest(out / "manifest.json")
    assert set(manifest["files"]) == {"zoom_b0.csv", "zoom_b2.csv"}


def test_figure_lta_map_and_participation(tmp_path):
    out = tmp_path / "lta"
    assert run_cli([
        "figure", "lta-map", "--n", "24", "--b", "3", "--r", "5", "--out", str(out),
    ]) == 0
    chi = io.read_matrix_csv(out / "lta_b3.csv")
    assert chi.shape == (24, 24)
    assert np.abs(chi.sum(axis=0) - 1.0).max() < 1e-9

    out2 = tmp_path / "part"
    assert run_cli([
        "figure", "participation", "--n", "24", "--b", "3", "--r", "5", "--out", str(out2),
    ]) == 0
    xi = io.read_matrix_csv(out2 / "xi_b3.csv")
    assert xi.shape == (24, 24)
    assert np.abs(xi[0] - 1 / 24**3).max() < 1e-12


def test_figure_chi_sweep(tmp_path):
    out = tmp_path / "sweep"
    code = run_cli([
        "figure", "chi-sweep", "--n", "30", "--fractions", "0.1,0.2", "--r", "3",
        "--out", str(out),
    ])
    assert code == 0
    rows = io.read_sweep_csv(out / "chi_sweep.csv")
    assert [(r["n"], r["b"]) for r in rows] == [(30, 3), (30, 6)]


def test_run_command(tmp_path):
    cfg = {
        "n": 26,
        "b": 6,
        "r": 4,
        "master_seed": 17,
        "observables": ["quantum_return", "chi_bar", "spacings"],
        "grid": {"kind": "log", "start": 0.1, "stop": 100.0, "num": 15},
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out = tmp_path / "run"
    assert run_cli(["run", str(cfg_path), "--out", str(out)]) == 0
    manifest = io.read_manifest(out / "manifest.json")
    assert "chi_bar" in manifest["results"]
    assert (out / "quantum_return.csv").exists()
    assert (out / "spacings.csv").exists()
    assert len(manifest["seeds"]["6"]) == 4


def test_run_command_enumerates_schema_violations(tmp_path, capsys):
    cfg_path = tmp_path / "bad.json"
    cfg_path.write_text(json.dumps({
        "b": 2, "r": "four", "master_seed": 1,
        "observables": ["chi_bar", "bogus"], "mystery": 7,
    }))
    assert run_cli(["run", str(cfg_path)]) == 3
    err = capsys.readouterr().err
    assert "missing required key 'n'" in err
    assert "key 'r' must be int" in err
    assert "unknown key 'mystery'" in err
    assert "bogus" in err


def test_run_command_missing_file():
    assert run_cli(["run", "/nonexistent/cfg.json"]) == 3
