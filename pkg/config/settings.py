# config/settings.py
"""
設定の読み込み

settings.yaml の値を既定値の上にマージし、その後 .env / 環境変数で上書きする。
"""

import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from dotenv import load_dotenv

from common.errors import InputError

logger = logging.getLogger(__name__)

SETTINGS_PATH = Path(__file__).resolve().parent / "settings.yaml"
CIRCUIT_CAP_ENV = "QDFSIM_CIRCUIT_CAP"
DB_PATH_ENV = "DB_PATH"

DEFAULTS: Dict[str, Any] = {
    "pipeline": {
        "epsilon": 0.1,
        "c0": 1.0,
        "backend": "ideal",
        "postselect": "exact",
        "seed": 0,
        "bernoulli_trials": 10000,
    },
    "circuit": {"cap": 256},
    "sweep": {"profiles": ["mixed", "zero-mean"], "workers": 1},
    "output": {"dir": "exports"},
    "database": {"path": "data/qdfsim.duckdb", "table": "sweep_runs"},
    "logging": {"level": "INFO"},
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _env_int(name: str) -> Optional[int]:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{name} must be an integer, got '{raw}'") from None
    if value < 1:
        raise InputError(f"{name} must be >= 1, got {value}")
    return value


def load_settings(path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """Return the merged settings dictionary."""
    load_dotenv()
    path = Path(path) if path is not None else SETTINGS_PATH
    loaded: Dict[str, Any] = {}
    if path.exists():
        with open(path, "r", encoding="utf-8") as f:
            loaded = yaml.safe_load(f) or {}
        if not isinstance(loaded, dict):
            raise InputError(f"settings file {path} must contain a mapping")
        logger.debug(f"Loaded settings from {path}")
    else:
        logger.warning(f"Settings file not found: {path}. Using built-in defaults.")
    settings = _merge(DEFAULTS, loaded)

    cap = _env_int(CIRCUIT_CAP_ENV)
    if cap is not None:
        settings["circuit"]["cap"] = cap
        logger.info(f"Circuit cap overridden by {CIRCUIT_CAP_ENV}: {cap}")
    db_path = os.getenv(DB_PATH_ENV)
    if db_path:
        settings["database"]["path"] = db_path
    return settings


def circuit_cap() -> int:
    """Circuit-size cap: QDFSIM_CIRCUIT_CAP if set, else the built-in default."""
    load_dotenv()
    cap = _env_int(CIRCUIT_CAP_ENV)
    return cap if cap is not None else int(DEFAULTS["circuit"]["cap"])
