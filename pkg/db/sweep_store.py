# db/sweep_store.py
"""
スイープ結果を DuckDB の sweep_runs テーブルへ保存する。

テーブル定義は db/schema_definition.sql から読み込む。
master_key が既に存在する行はスキップされるため、同じスイープを
再実行しても行は重複しない。
"""

import logging
import re
from pathlib import Path
from typing import Optional, Union

import pandas as pd

from .duckdb_connection import DuckDBConnection

logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).resolve().parent / "schema_definition.sql"
DEFAULT_TABLE = "sweep_runs"

SWEEP_COLUMNS = [
    "master_key", "command", "N", "kappa", "epsilon", "seed", "profile",
    "gamma", "delta", "distance", "p_bar", "p_exact",
    "iterations", "query_units", "tree_builds", "ok",
]


def master_key(N: int, kappa: float, epsilon: float, seed: int, profile: str) -> str:
    return f"{int(N)}_{float(kappa):g}_{float(epsilon):g}_{int(seed)}_{profile}"


class SweepRunStore:
    def __init__(
        self,
        db_path: Optional[Union[str, Path]] = None,
        table_name: str = DEFAULT_TABLE,
        schema_path: Union[str, Path] = SCHEMA_PATH,
    ):
        self.table_name = table_name
        self.schema_path = Path(schema_path)
        self.connection = DuckDBConnection(db_path)
        try:
            self._ensure_table()
        except Exception as e:
            logger.error(f"Error during SweepRunStore initialization: {e}", exc_info=True)
            self.connection.close()
            raise

    def __enter__(self) -> "SweepRunStore":
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.close()

    def _ensure_table(self) -> None:
        """schema_definition.sql から対象テーブルの CREATE 文だけを抜き出して実行する。"""
        logger.info(f"Reading schema definition: {self.schema_path}")
        if not self.schema_path.exists():
            raise FileNotFoundError(f"Schema file not found: {self.schema_path}")
        full_schema_sql = self.schema_path.read_text(encoding="utf-8")

        match = re.search(
            r"CREATE\s+TABLE\s+IF\s+NOT\s+EXISTS\s+" + re.escape(self.table_name) + r"\s*\((.*?)\);",
            full_schema_sql,
            re.IGNORECASE | re.DOTALL | re.MULTILINE,
        )
        if not match:
            raise ValueError(f"Could not find CREATE TABLE statement for {self.table_name} in {self.schema_path}")

        create_sql = match.group(0)
        self.connection.execute_query(create_sql)
        logger.info(f"Ensured table '{self.table_name}' exists.")

    def save_runs(self, runs: pd.DataFrame, command: str = "sweep") -> int:
        """Insert sweep rows; returns the number of rows actually added."""
        if runs.empty:
            logger.warning("No sweep rows to save.")
            return 0
        df = runs.copy()
        if "master_key" not in df.columns:
            df["master_key"] = [
                master_key(r.N, r.kappa, r.epsilon, r.seed, r.profile)
                for r in df.itertuples(index=False)
            ]
        df["command"] = command
        missing = [c for c in SWEEP_COLUMNS if c not in df.columns]
        if missing:
            raise ValueError(f"Sweep rows are missing columns: {missing}")
        df = df[SWEEP_COLUMNS].drop_duplicates(subset=["master_key"], keep="first")
        return self.connection.save_dataframe(df, self.table_name)

    def load_runs(self) -> pd.DataFrame:
        return self.connection.fetch_df(f'SELECT * FROM "{self.table_name}" ORDER BY master_key')

    def close(self) -> None:
        self.connection.close()
