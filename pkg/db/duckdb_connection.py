# db/duckdb_connection.py
import os
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Union

import duckdb
import pandas as pd
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

DEFAULT_DB_PATH = "data/qdfsim.duckdb"
MEMORY = ":memory:"
STAGING_VIEW = "qdfsim_staging_rows"


def resolve_db_path(db_path: Optional[Union[str, Path]] = None) -> str:
    """明示指定 → DB_PATH (.env / 環境変数) → 既定値 の順で決める。"""
    if db_path is not None:
        return str(db_path)
    load_dotenv()
    resolved = os.getenv("DB_PATH") or DEFAULT_DB_PATH
    logger.debug(f"DB path resolved from environment/defaults: {resolved}")
    return resolved


class DuckDBConnection:
    """
    duckdb.connect の薄いラッパー。

    * 接続は最初に必要になった時点で開く。
    * with 文で使うと抜けるときに必ず close する (ファイルロックを残さない)。
    """

    def __init__(
        self,
        db_path: Optional[Union[str, Path]] = None,
        read_only: bool = False,
        config: Optional[Dict[str, Any]] = None,
    ) -> None:
        self.db_path = resolve_db_path(db_path)
        self.read_only = read_only
        self.config = dict(config or {})
        self._conn: Optional[duckdb.DuckDBPyConnection] = None
        if self.db_path != MEMORY:
            Path(self.db_path).expanduser().resolve().parent.mkdir(parents=True, exist_ok=True)

    def __enter__(self) -> "DuckDBConnection":
        self.connection()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.close()

    def connection(self) -> duckdb.DuckDBPyConnection:
        if self._conn is None:
            mode = "read-only" if self.read_only else "read-write"
            logger.debug(f"Opening DuckDB ({mode}): {self.db_path}")
            self._conn = duckdb.connect(database=self.db_path, read_only=self.read_only, config=self.config)
        return self._conn

    def is_connected(self) -> bool:
        return self._conn is not None

    def execute_query(self, query: str, params: Optional[Sequence[Any]] = None) -> duckdb.DuckDBPyConnection:
        logger.debug(f"SQL on {self.db_path}: {query[:120]}")
        try:
            if params is None:
                return self.connection().execute(query)
            return self.connection().execute(query, params)
        except duckdb.Error as e:
            logger.error(f"Query failed ({e}): {query[:120]}")
            raise

    def fetch_df(self, query: str, params: Optional[Sequence[Any]] = None) -> pd.DataFrame:
        return self.execute_query(query, params).df()

    def row_count(self, table_name: str) -> int:
        return int(self.execute_query(f'SELECT COUNT(*) FROM "{table_name}"').fetchone()[0])

    def save_dataframe(self, df: pd.DataFrame, table_name: str, check_duplicate_master_key: bool = True) -> int:
        """df の行を table_name に追加し、実際に増えた行数を返す。

        check_duplicate_master_key=True のときは既存の master_key と衝突する行を黙って飛ばす。
        """
        if df.empty:
            logger.warning(f"Nothing to insert into '{table_name}': empty DataFrame")
            return 0
        if check_duplicate_master_key and "master_key" not in df.columns:
            raise ValueError(f"rows for '{table_name}' need a 'master_key' column")

        columns = ", ".join(f'"{c}"' for c in df.columns)
        conflict = ' ON CONFLICT ("master_key") DO NOTHING' if check_duplicate_master_key else ""
        query = f'INSERT INTO "{table_name}" ({columns}) SELECT {columns} FROM {STAGING_VIEW}{conflict}'

        conn = self.connection()
        before = self.row_count(table_name)
        conn.register(STAGING_VIEW, df)
        try:
            conn.begin()
            try:
                conn.execute(query)
                conn.commit()
            except duckdb.Error:
                conn.rollback()
                logger.error(f"Insert into '{table_name}' rolled back", exc_info=True)
                raise
        finally:
            conn.unregister(STAGING_VIEW)

        inserted = self.row_count(table_name) - before
        logger.info(f"Inserted {inserted}/{len(df)} rows into '{table_name}'")
        return inserted

    def close(self) -> None:
        if self._conn is None:
            return
        try:
            self._conn.close()
            logger.debug(f"Closed DuckDB: {self.db_path}")
        finally:
            self._conn = None
