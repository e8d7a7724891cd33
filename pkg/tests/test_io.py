#!/usr/bin/env python3
import os
import sys
import json
import math

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose

# Add the project root to the Python path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from common.errors import DataFormatError, InputError
from config.settings import DEFAULTS, circuit_cap, load_settings
from exporter.report_writer import SCHEMA_VERSION, read_json, to_json_text, write_csv, write_json
from ingestion.matrix_loader import load_matrix, load_vector, parse_complex, save_matrix_csv


@pytest.fixture
def clean_env(monkeypatch):
    monkeypatch.delenv("QDFSIM_CIRCUIT_CAP", raising=False)
    monkeypatch.delenv("DB_PATH", raising=False)
    return monkeypatch


# ---------------------------------------------------------------------- #
# ingestion
# ---------------------------------------------------------------------- #
@pytest.mark.parametrize(
    "cell, expected",
    [("1.5", 1.5), ("2-3j", 2 - 3j), ("1+2i", 1 + 2j), (" -0.5 ", -0.5), (3, 3.0), ([1.0, -2.0], 1 - 2j)],
)
def test_parse_complex(cell, expected):
    assert parse_complex(cell) == expected


def test_parse_complex_rejects_garbage():
    with pytest.raises(DataFormatError):
        parse_complex("abc")
    with pytest.raises(DataFormatError):
        parse_complex("")
    with pytest.raises(DataFormatError):
        parse_complex([1.0, 2.0, 3.0])


def test_load_matrix_csv(tmp_path):
    path = tmp_path / "F.csv"
    path.write_text("1,2-1j\n2+1j,0.5\n", encoding="utf-8")
    F = load_matrix(path)
    assert F.shape == (2, 2)
    assert_allclose(F, [[1, 2 - 1j], [2 + 1j, 0.5]])


def test_save_matrix_csv_is_read_back(tmp_path):
    rng = np.random.default_rng(0)
    A = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    A[0, 0] = 2j
    A[1, 1] = 0.0
    path = save_matrix_csv(A, tmp_path / "nested" / "A.csv")
    assert_allclose(load_matrix(path), A)


def test_load_matrix_json_forms(tmp_path):
    plain = tmp_path / "plain.json"
    plain.write_text(json.dumps({"matrix": [[1, 0], [0, -1]]}), encoding="utf-8")
    assert_allclose(load_matrix(plain), [[1, 0], [0, -1]])

    pairs = tmp_path / "pairs.json"
    pairs.write_text(json.dumps({"matrix": [[[1, 0], [0, 1]], [[0, -1], [2, 0]]]}), encoding="utf-8")
    assert_allclose(load_matrix(pairs), [[1, 1j], [-1j, 2]])

    strings = tmp_path / "strings.json"
    strings.write_text(json.dumps([["1", "2+1j"], ["2-1j", "3"]]), encoding="utf-8")
    assert_allclose(load_matrix(strings), [[1, 2 + 1j], [2 - 1j, 3]])


def test_load_vector_forms(tmp_path):
    column = tmp_path / "y.csv"
    column.write_text("1\n2\n", encoding="utf-8")
    assert_allclose(load_vector(column), [1, 2])

    row = tmp_path / "y_row.csv"
    row.write_text("1,2,3-1i\n", encoding="utf-8")
    assert_allclose(load_vector(row), [1, 2, 3 - 1j])

    pairs = tmp_path / "y.json"
    pairs.write_text(json.dumps({"vector": [[1, 1], [0, -2]]}), encoding="utf-8")
    assert_allclose(load_vector(pairs), [1 + 1j, -2j])

    npy = tmp_path / "y.npy"
    np.save(npy, np.array([0.5, 1.5]))
    assert_allclose(load_vector(npy), [0.5, 1.5])


def test_load_matrix_npy(tmp_path):
    path = tmp_path / "F.npy"
    np.save(path, np.eye(3) * (1 + 1j))
    assert_allclose(load_matrix(path), np.eye(3) * (1 + 1j))


def test_loader_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_matrix(tmp_path / "missing.csv")

    other = tmp_path / "F.txt"
    other.write_text("1", encoding="utf-8")
    with pytest.raises(DataFormatError):
        load_matrix(other)

    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(DataFormatError):
        load_matrix(broken)

    no_key = tmp_path / "no_key.json"
    no_key.write_text(json.dumps({"values": [1, 2]}), encoding="utf-8")
    with pytest.raises(DataFormatError):
        load_vector(no_key)

    ragged = tmp_path / "ragged.csv"
    ragged.write_text("1,2\n3\n", encoding="utf-8")
    with pytest.raises(DataFormatError):
        load_matrix(ragged)

    empty = tmp_path / "empty.csv"
    empty.write_text("", encoding="utf-8")
    with pytest.raises(DataFormatError):
        load_matrix(empty)

    nan = tmp_path / "nan.csv"
    nan.write_text("1,nan\n0,1\n", encoding="utf-8")
    with pytest.raises(InputError):
        load_matrix(nan)

    not_vector = tmp_path / "square.csv"
    not_vector.write_text("1,2\n3,4\n", encoding="utf-8")
    with pytest.raises(DataFormatError):
        load_vector(not_vector)


def test_nan_cells_reach_finiteness_check(tmp_path):
    for text in ("1,NaN\n0,1\n", "1,inf\n0,1\n", "nan+1j,0\n0,1\n"):
        path = tmp_path / "nonfinite.csv"
        path.write_text(text, encoding="utf-8")
        with pytest.raises(InputError):
            load_matrix(path)

    blank = tmp_path / "blank.csv"
    blank.write_text("1,\n0,1\n", encoding="utf-8")
    with pytest.raises(DataFormatError):
        load_matrix(blank)


def test_load_complex_column_pairs(tmp_path):
    vector = tmp_path / "y.csv"
    vector.write_text("1,2\n3,-4\n0.5,0\n", encoding="utf-8")
    assert_allclose(load_vector(vector, complex_columns=True), [1 + 2j, 3 - 4j, 0.5])

    matrix = tmp_path / "F.csv"
    matrix.write_text("1,0,0,1\n0,-1,2,0\n", encoding="utf-8")
    assert_allclose(load_matrix(matrix, complex_columns=True), [[1, 1j], [-1j, 2]])

    odd = tmp_path / "odd.csv"
    odd.write_text("1,2,3\n", encoding="utf-8")
    with pytest.raises(DataFormatError):
        load_matrix(odd, complex_columns=True)

    mixed = tmp_path / "mixed.csv"
    mixed.write_text("1+1j,2\n", encoding="utf-8")
    with pytest.raises(DataFormatError):
        load_vector(mixed, complex_columns=True)


# ---------------------------------------------------------------------- #
# exporter
# ---------------------------------------------------------------------- #
def test_json_text_is_sorted_and_versioned():
    text = to_json_text({"b": np.float64(1.5), "a": np.int64(2), "z": 1 + 2j, "flag": np.bool_(True)}, "solve_report")
    document = json.loads(text)
    assert document["schema_version"] == SCHEMA_VERSION
    assert document["kind"] == "solve_report"
    assert document["z"] == [1.0, 2.0]
    assert document["flag"] is True
    keys = list(document.keys())
    assert keys == sorted(keys)
    assert text.endswith("\n")


def test_json_writes_non_finite_as_strings(tmp_path):
    path = write_json({"kappa": math.inf, "nested": [float("nan")]}, tmp_path / "out" / "r.json", kind="x")
    document = read_json(path)
    assert document["kappa"] == "inf"
    assert document["nested"] == ["nan"]


def test_json_output_is_deterministic(tmp_path):
    payload = {"w": np.array([0.6, 0.8]), "ledger": {"tree_builds": 1, "qsve_query_units": 22.36}}
    first = write_json(payload, tmp_path / "a.json", kind="solve_report").read_bytes()
    second = write_json(dict(reversed(list(payload.items()))), tmp_path / "b.json", kind="solve_report").read_bytes()
    assert first == second


def test_write_csv(tmp_path):
    df = pd.DataFrame({"N": [4, 8], "distance": [0.01, 0.02]})
    path = write_csv(df, tmp_path / "sweep.csv")
    assert path.read_text(encoding="utf-8") == "N,distance\n4,0.01\n8,0.02\n"


# ---------------------------------------------------------------------- #
# settings
# ---------------------------------------------------------------------- #
def test_settings_defaults(clean_env, tmp_path):
    settings = load_settings(tmp_path / "missing.yaml")
    assert settings == DEFAULTS
    assert settings is not DEFAULTS


def test_settings_yaml_override(clean_env, tmp_path):
    path = tmp_path / "settings.yaml"
    path.write_text("pipeline:\n  epsilon: 0.2\ncircuit:\n  cap: 64\n", encoding="utf-8")
    settings = load_settings(path)
    assert settings["pipeline"]["epsilon"] == 0.2
    assert settings["pipeline"]["c0"] == 1.0
    assert settings["circuit"] == {"cap": 64}
    assert DEFAULTS["pipeline"]["epsilon"] == 0.1


def test_settings_env_override(clean_env, tmp_path):
    clean_env.setenv("QDFSIM_CIRCUIT_CAP", "64")
    clean_env.setenv("DB_PATH", str(tmp_path / "runs.duckdb"))
    settings = load_settings(tmp_path / "missing.yaml")
    assert settings["circuit"]["cap"] == 64
    assert settings["database"]["path"] == str(tmp_path / "runs.duckdb")
    assert circuit_cap() == 64


def test_settings_bad_values(clean_env, tmp_path):
    assert circuit_cap() == DEFAULTS["circuit"]["cap"]
    clean_env.setenv("QDFSIM_CIRCUIT_CAP", "lots")
    with pytest.raises(InputError):
        circuit_cap()
    clean_env.setenv("QDFSIM_CIRCUIT_CAP", "0")
    with pytest.raises(InputError):
        load_settings(tmp_path / "missing.yaml")

    listing = tmp_path / "list.yaml"
    listing.write_text("- 1\n- 2\n", encoding="utf-8")
    clean_env.delenv("QDFSIM_CIRCUIT_CAP")
    with pytest.raises(InputError):
        load_settings(listing)
