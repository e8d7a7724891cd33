#!/usr/bin/env python3
import os
import sys

import pandas as pd
import pytest

# Add the project root to the Python path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from db import DuckDBConnection, SweepRunStore, SWEEP_COLUMNS, master_key


def _runs(seeds=(0, 1)) -> pd.DataFrame:
    rows = []
    for seed in seeds:
        rows.append({
            "N": 4, "kappa": 10.0, "epsilon": 0.1, "seed": seed, "profile": "mixed",
            "gamma": 0.05, "delta": 0.0025, "distance": 0.01 * (seed + 1), "p_bar": 0.2, "p_exact": 0.21,
            "iterations": 3, "query_units": 900.0, "tree_builds": 1, "ok": True,
        })
    return pd.DataFrame(rows)


def test_master_key_format():
    assert master_key(4, 10.0, 0.1, 3, "mixed") == "4_10_0.1_3_mixed"
    assert master_key(16, 2.5, 0.05, 0, "zero-mean") == "16_2.5_0.05_0_zero-mean"


def test_connection_in_memory():
    with DuckDBConnection(":memory:") as conn:
        assert conn.is_connected()
        conn.execute_query("CREATE TABLE t (master_key VARCHAR PRIMARY KEY, v INTEGER)")
        df = pd.DataFrame({"master_key": ["a", "b"], "v": [1, 2]})
        assert conn.save_dataframe(df, "t") == 2
        assert conn.save_dataframe(df, "t") == 0
        assert conn.fetch_df("SELECT v FROM t ORDER BY v")["v"].tolist() == [1, 2]
        with pytest.raises(ValueError):
            conn.save_dataframe(pd.DataFrame({"v": [3]}), "t")
        assert conn.save_dataframe(pd.DataFrame(columns=["master_key", "v"]), "t") == 0
    assert not conn.is_connected()


def test_connection_resolves_env_path(tmp_path, monkeypatch):
    target = tmp_path / "nested" / "env.duckdb"
    monkeypatch.setenv("DB_PATH", str(target))
    conn = DuckDBConnection()
    assert conn.db_path == str(target)
    assert target.parent.exists()
    conn.close()


def test_sweep_store_is_idempotent(tmp_path):
    db_path = tmp_path / "runs.duckdb"
    with SweepRunStore(db_path) as store:
        assert store.save_runs(_runs()) == 2
        assert store.save_runs(_runs()) == 0
        assert store.save_runs(_runs((1, 2))) == 1
        loaded = store.load_runs()
    assert list(loaded.columns) == SWEEP_COLUMNS
    assert loaded["master_key"].tolist() == ["4_10_0.1_0_mixed", "4_10_0.1_1_mixed", "4_10_0.1_2_mixed"]
    assert (loaded["command"] == "sweep").all()

    # the file persists across connections
    with SweepRunStore(db_path) as store:
        assert len(store.load_runs()) == 3


def test_sweep_store_drops_duplicate_rows_in_one_batch(tmp_path):
    with SweepRunStore(tmp_path / "runs.duckdb") as store:
        assert store.save_runs(pd.concat([_runs((0,)), _runs((0,))])) == 1
        assert store.save_runs(pd.DataFrame()) == 0


def test_sweep_store_rejects_incomplete_rows(tmp_path):
    with SweepRunStore(tmp_path / "runs.duckdb") as store:
        with pytest.raises(ValueError):
            store.save_runs(_runs().drop(columns=["p_bar"]))


def test_sweep_store_needs_schema(tmp_path):
    schema = tmp_path / "schema.sql"
    schema.write_text("CREATE TABLE IF NOT EXISTS other (x INTEGER);\n", encoding="utf-8")
    with pytest.raises(ValueError):
        SweepRunStore(tmp_path / "runs.duckdb", schema_path=schema)
    with pytest.raises(FileNotFoundError):
        SweepRunStore(tmp_path / "runs.duckdb", schema_path=tmp_path / "missing.sql")
