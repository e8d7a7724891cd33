# exporter/report_writer.py
"""
レポート出力 (JSON / CSV)

JSON はキーをソートし、トップレベルに schema_version を持つ。
同じ入力からは同じバイト列が出力される。
"""

import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
PathLike = Union[str, Path]


def _default(obj: Any):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, Path):
        return str(obj)
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def _sanitize(value: Any) -> Any:
    """inf/nan are not valid JSON; write them as strings."""
    if isinstance(value, dict):
        return {k: _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    if isinstance(value, (float, np.floating)) and not math.isfinite(value):
        return str(float(value))
    return value


def to_json_text(payload: Dict[str, Any], kind: str) -> str:
    document = {"schema_version": SCHEMA_VERSION, "kind": kind}
    document.update(_sanitize(payload))
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False, default=_default) + "\n"


def write_json(payload: Dict[str, Any], path: PathLike, kind: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json_text(payload, kind), encoding="utf-8")
    logger.info(f"Wrote {kind} report to {path}")
    return path


def write_csv(df: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, encoding="utf-8", lineterminator="\n")
    logger.info(f"Wrote {len(df)} rows to {path}")
    return path


def read_json(path: PathLike) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)
