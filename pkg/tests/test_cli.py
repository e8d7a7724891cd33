#!/usr/bin/env python3
import os
import sys
import json

import numpy as np
import pandas as pd
import pytest

# Add the project root to the Python path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from cli import RunManifest, exit_code_for, run_command, cmd_sweep
from cli.commands import SWEEP_CSV_COLUMNS, hcurve_frame
from cli.manifest import ManifestError
from common.errors import DataFormatError, InputError, ResourceError
from db import SweepRunStore
from ingestion.matrix_loader import save_matrix_csv
from main import main


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv("QDFSIM_CIRCUIT_CAP", raising=False)
    monkeypatch.delenv("DB_PATH", raising=False)


@pytest.fixture
def diag_inputs(tmp_path):
    matrix = save_matrix_csv(np.diag([1.0, 0.5]), tmp_path / "F.csv")
    y = tmp_path / "y.csv"
    y.write_text("1\n1\n", encoding="utf-8")
    return matrix, y


def _read(path):
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


# ---------------------------------------------------------------------- #
# exit codes
# ---------------------------------------------------------------------- #
def test_exit_code_mapping():
    assert exit_code_for(ManifestError("x")) == 2
    assert exit_code_for(DataFormatError("x")) == 2
    assert exit_code_for(FileNotFoundError("x")) == 2
    assert exit_code_for(json.JSONDecodeError("x", "doc", 0)) == 2
    assert exit_code_for(InputError("x")) == 3
    assert exit_code_for(ResourceError("x")) == 3
    assert exit_code_for(RuntimeError("x")) == 4


# ---------------------------------------------------------------------- #
# solve
# ---------------------------------------------------------------------- #
def test_solve_writes_report(diag_inputs, tmp_path, capsys):
    matrix, y = diag_inputs
    out = tmp_path / "out"
    code = main(["solve", "--matrix", str(matrix), "--y", str(y), "--gamma", "1.0", "--out", str(out)])
    assert code == 0
    report = _read(out / "report.json")
    assert report["schema_version"] == 1
    assert report["kind"] == "solve_report"
    assert report["ok"] is True
    assert report["gamma"] == 1.0
    assert report["gamma_mode"] == "manual"
    assert report["distance"] <= 1e-12
    assert report["ratio_check"]["ok"] is True
    assert report["manifest"]["command"] == "solve"
    assert report["notes"] == []
    assert len(report["w_state"]) == 2
    assert "[ok]" in capsys.readouterr().out


def test_solve_output_is_byte_identical(diag_inputs, tmp_path):
    matrix, y = diag_inputs
    out = tmp_path / "out"
    argv = ["solve", "--matrix", str(matrix), "--y", str(y), "--seed", "3", "--out", str(out)]
    assert main(argv) == 0
    first = (out / "report.json").read_bytes()
    assert main(argv) == 0
    assert (out / "report.json").read_bytes() == first


def test_solve_gamma_out_of_range(diag_inputs, tmp_path):
    matrix, y = diag_inputs
    code = main(["solve", "--matrix", str(matrix), "--y", str(y), "--gamma", "5.0", "--out", str(tmp_path / "out")])
    assert code == 3
    assert not (tmp_path / "out" / "report.json").exists()


def test_solve_missing_inputs(diag_inputs, tmp_path):
    matrix, _ = diag_inputs
    out = str(tmp_path / "out")
    assert main(["solve", "--matrix", str(matrix), "--y", str(tmp_path / "missing.csv"), "--out", out]) == 2
    assert main(["solve", "--matrix", str(matrix), "--out", out]) == 2


def test_solve_malformed_matrix(diag_inputs, tmp_path):
    _, y = diag_inputs
    bad = tmp_path / "bad.csv"
    bad.write_text("1,abc\n0,1\n", encoding="utf-8")
    assert main(["solve", "--matrix", str(bad), "--y", str(y), "--out", str(tmp_path / "out")]) == 2


def test_solve_nonfinite_matrix_is_input_error(diag_inputs, tmp_path):
    _, y = diag_inputs
    bad = tmp_path / "nan.csv"
    bad.write_text("1,nan\n0,1\n", encoding="utf-8")
    assert main(["solve", "--matrix", str(bad), "--y", str(y), "--out", str(tmp_path / "out")]) == 3


def test_solve_reads_complex_column_pairs(tmp_path):
    matrix = tmp_path / "F.csv"
    matrix.write_text("1,0,0,0\n0,0,0.5,0\n", encoding="utf-8")
    y = tmp_path / "y.csv"
    y.write_text("1,0\n0,1\n", encoding="utf-8")
    out = tmp_path / "out"
    code = main(["solve", "--matrix", str(matrix), "--y", str(y), "--complex-columns", "--out", str(out)])
    assert code == 0
    report = _read(out / "report.json")
    assert report["N"] == 2
    assert report["manifest"]["complex_columns"] is True
    assert report["kappa"] == pytest.approx(2.0)


def test_solve_bad_epsilon(diag_inputs, tmp_path):
    matrix, y = diag_inputs
    code = main(["solve", "--matrix", str(matrix), "--y", str(y), "--epsilon", "0.9", "--out", str(tmp_path / "out")])
    assert code == 3


def test_solve_embeds_rectangular_input(tmp_path, capsys):
    rng = np.random.default_rng(8)
    F = rng.standard_normal((2, 3))
    matrix = save_matrix_csv(F, tmp_path / "F.csv")
    y = tmp_path / "y.csv"
    y.write_text("1\n-0.5\n", encoding="utf-8")
    out = tmp_path / "out"
    code = main(["solve", "--matrix", str(matrix), "--y", str(y), "--kappa", "3", "--out", str(out)])
    assert code == 0
    assert "[NOTICE]" in capsys.readouterr().out
    report = _read(out / "report.json")
    assert report["N"] == 5
    assert report["embedded_from"] == [2, 3]
    assert len(report["extracted_w_state"]) == 3
    assert report["upper_block_weight"] <= report["epsilon"] ** 2
    assert report["contaminated"] == (report["upper_block_weight"] ** 0.5 > 1e-8)
    assert len(report["notes"]) == 2


def test_solve_circuit_cap_from_env(diag_inputs, tmp_path, monkeypatch):
    matrix, y = diag_inputs
    monkeypatch.setenv("QDFSIM_CIRCUIT_CAP", "2")
    code = main(["solve", "--matrix", str(matrix), "--y", str(y), "--backend", "circuit",
                 "--out", str(tmp_path / "out")])
    assert code == 3


def test_bad_settings_file(diag_inputs, tmp_path):
    matrix, y = diag_inputs
    settings = tmp_path / "settings.yaml"
    settings.write_text("pipeline: [1,\n", encoding="utf-8")
    code = main(["solve", "--config", str(settings), "--matrix", str(matrix), "--y", str(y),
                 "--out", str(tmp_path / "out")])
    assert code == 2


# ---------------------------------------------------------------------- #
# sweep
# ---------------------------------------------------------------------- #
SWEEP_ARGS = ["sweep", "--N", "4", "8", "--kappas", "2", "10", "--epsilons", "0.1", "--seeds", "0", "1",
              "--profile", "mixed"]


def test_sweep_rows_and_summary(tmp_path):
    out = tmp_path / "out"
    assert main(SWEEP_ARGS + ["--out", str(out)]) == 0
    runs = pd.read_csv(out / "sweep.csv")
    assert list(runs.columns) == SWEEP_CSV_COLUMNS
    assert len(runs) == 8
    assert runs["ok"].all()
    assert (runs["tree_builds"] == 1).all()
    assert runs[["N", "kappa", "seed"]].values.tolist()[:3] == [[4, 2.0, 0], [4, 2.0, 1], [4, 10.0, 0]]

    summary = _read(out / "sweep_summary.json")
    assert summary["kind"] == "sweep_summary"
    assert summary["runs"] == 8
    assert summary["all_ok"] is True
    assert summary["failures"] == 0
    assert summary["max_distance"] <= 0.1
    assert summary["slope_query_units_vs_N"] is not None
    assert summary["slope_cost_vs_kappa"] > 0
    assert len(summary["cost_model"]) == 4
    assert summary["total_ledger"]["tree_builds"] == 8
    assert summary["total_ledger"]["qsve_calls"] == 8
    assert summary["total_ledger"]["qsve_query_units"] == pytest.approx(runs["query_units"].sum(), rel=1e-9)


def test_sweep_is_deterministic_across_workers(tmp_path):
    serial = tmp_path / "serial"
    threaded = tmp_path / "threaded"
    assert main(SWEEP_ARGS + ["--out", str(serial)]) == 0
    assert main(SWEEP_ARGS + ["--workers", "3", "--out", str(threaded)]) == 0
    assert (serial / "sweep.csv").read_bytes() == (threaded / "sweep.csv").read_bytes()


def test_sweep_stores_runs(tmp_path):
    db_path = tmp_path / "runs.duckdb"
    args = SWEEP_ARGS + ["--db-path", str(db_path), "--out", str(tmp_path / "out")]
    assert main(args) == 0
    assert main(args) == 0

    with SweepRunStore(db_path) as store:
        stored = store.load_runs()
    assert len(stored) == 8
    assert stored["master_key"].is_unique


def test_sweep_store_flag_uses_configured_path(tmp_path, monkeypatch):
    db_path = tmp_path / "env.duckdb"
    monkeypatch.setenv("DB_PATH", str(db_path))
    assert main(SWEEP_ARGS + ["--store", "--out", str(tmp_path / "out")]) == 0
    with SweepRunStore(db_path) as store:
        assert len(store.load_runs()) == 8


def test_sweep_empty_axis(tmp_path):
    args = ["sweep", "--N", "4", "--kappas", "2", "--epsilons", "0.1", "--out", str(tmp_path / "out")]
    assert main(args) == 3


def test_sweep_manifest_directly(tmp_path):
    manifest = RunManifest(command="sweep", out=tmp_path, Ns=[4], kappas=[4.0], epsilons=[0.2],
                           seeds=[0], profiles=["zero-mean"])
    assert run_command(cmd_sweep, manifest) == 0
    runs = pd.read_csv(tmp_path / "sweep.csv")
    assert runs["profile"].tolist() == ["zero-mean"]


# ---------------------------------------------------------------------- #
# hcurve
# ---------------------------------------------------------------------- #
def test_hcurve_output(tmp_path):
    out = tmp_path / "out"
    code = main(["hcurve", "--gammas", "0.01", "0.09", "0.09", "1.0", "--kappa", "10", "--n-points", "50",
                 "--out", str(out)])
    assert code == 0
    frame = pd.read_csv(out / "hcurve.csv")
    assert list(frame.columns) == ["abs_lambda", "in_band", "abs_h_gamma_0.01", "abs_h_gamma_0.09", "abs_h_gamma_1"]
    assert len(frame) == 50
    summary = _read(out / "hcurve_summary.json")
    assert summary["gammas"] == [0.01, 0.09, 1.0]
    assert summary["regimes"] == {"0.01": "decreasing", "0.09": "interior-peak", "1": "increasing"}


def test_hcurve_errors(tmp_path):
    out = str(tmp_path / "out")
    assert main(["hcurve", "--gammas", "2.0", "--kappa", "10", "--out", out]) == 3
    assert main(["hcurve", "--gammas", "0.5", "--out", out]) == 3
    assert main(["hcurve", "--kappa", "10", "--out", out]) == 3


def test_hcurve_frame_shares_grid():
    frame = hcurve_frame([0.25, 1.0], 1.0, 2.0, 4)
    assert frame["abs_lambda"].tolist() == pytest.approx([0.25, 0.5, 0.75, 1.0])
    assert frame["in_band"].tolist() == [False, True, True, True]
    assert frame["abs_h_gamma_1"].iloc[-1] == pytest.approx(0.5)


# ---------------------------------------------------------------------- #
# bench-signs
# ---------------------------------------------------------------------- #
def test_bench_signs_report(tmp_path):
    out = tmp_path / "out"
    assert main(["bench-signs", "--kappas", "2", "10", "100", "--N", "6", "--out", str(out)]) == 0
    report = _read(out / "bench_signs.json")
    assert report["kind"] == "sign_benchmark"
    assert report["parameters"]["N"] == 6
    assert report["parameters"]["delta"] == 0.005
    assert len(report["rows"]) == 6
    assert report["spectral_shift_sign_errors"] == 0
    assert report["wzp_unreliable_kappas"] == [100.0]


def test_bench_signs_needs_kappas(tmp_path):
    manifest = RunManifest(command="bench-signs", out=tmp_path)
    with pytest.raises(InputError):
        manifest.validate()
