"""
Database package.

DuckDB connection wrapper and persistence of sweep runs.
"""

from .duckdb_connection import DuckDBConnection
from .sweep_store import SweepRunStore, SWEEP_COLUMNS, master_key

__all__ = ['DuckDBConnection', 'SweepRunStore', 'SWEEP_COLUMNS', 'master_key']
