# ingestion/matrix_loader.py
"""
行列・ベクトルファイルの読み込み

対応形式:
    .csv   ヘッダなし、各セルは実数または複素数文字列 ("1.5", "2-3j", "1+2i")。
           complex_columns=True の場合は (re, im) の列ペアとして読む
    .json  {"matrix": [...]} / {"vector": [...]} または配列そのもの。
           要素は数値または [re, im] のペア
    .npy   numpy 配列
"""

import json
import logging
from pathlib import Path
from typing import Any, Union

import numpy as np
import pandas as pd

from common.errors import DataFormatError, InputError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def parse_complex(cell: Any) -> complex:
    """Parse one CSV cell or JSON element into a complex number."""
    if isinstance(cell, (list, tuple)):
        if len(cell) != 2:
            raise DataFormatError(f"complex pair must have two elements, got {cell!r}")
        return complex(float(cell[0]), float(cell[1]))
    if isinstance(cell, (int, float, complex)) and not isinstance(cell, bool):
        return complex(cell)
    text = str(cell).strip().replace(" ", "")
    if not text:
        raise DataFormatError("empty cell")
    if text.endswith("i"):
        text = text[:-1] + "j"
    try:
        return complex(text)
    except ValueError:
        raise DataFormatError(f"cannot parse '{cell}' as a complex number") from None


def _read_csv(path: Path) -> np.ndarray:
    try:
        df = pd.read_csv(
            path, header=None, dtype=str, skip_blank_lines=True, keep_default_na=False, na_values=[], encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        raise DataFormatError(f"{path} is empty") from None
    except pd.errors.ParserError as e:
        raise DataFormatError(f"{path} is not a valid CSV file: {e}") from None
    if df.isna().any().any():
        raise DataFormatError(f"{path} has missing cells")
    return np.array([[parse_complex(c) for c in row] for row in df.itertuples(index=False)], dtype=complex)


def _read_json(path: Path, key: str) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as f:
            payload = json.load(f)
    except json.JSONDecodeError as e:
        raise DataFormatError(f"{path} is not valid JSON: {e}") from None
    if isinstance(payload, dict):
        if key not in payload:
            raise DataFormatError(f"{path} has no '{key}' field")
        payload = payload[key]
    if not isinstance(payload, list) or not payload:
        raise DataFormatError(f"{path}: '{key}' must be a non-empty array")
    ndim = 2 if key == "matrix" else 1
    try:
        numeric = np.asarray(payload, dtype=float)
    except (TypeError, ValueError):
        numeric = None
    if numeric is not None:
        if numeric.ndim == ndim:
            return numeric.astype(complex)
        if numeric.ndim == ndim + 1 and numeric.shape[-1] == 2:
            return numeric[..., 0] + 1j * numeric[..., 1]
        raise DataFormatError(f"{path}: '{key}' has shape {numeric.shape}, expected {ndim}-D (or [re, im] pairs)")
    # 文字列要素 ("1+2j") を含む場合
    try:
        cells = np.array(payload, dtype=object)
    except ValueError:
        raise DataFormatError(f"{path}: '{key}' is ragged") from None
    if cells.ndim != ndim:
        raise DataFormatError(f"{path}: '{key}' has shape {cells.shape}, expected {ndim}-D")
    return np.vectorize(parse_complex, otypes=[complex])(cells)


def _combine_columns(data: np.ndarray, path: Path) -> np.ndarray:
    """(re, im) column pairs -> complex entries."""
    if data.ndim != 2 or data.shape[1] % 2:
        raise DataFormatError(f"{path}: (re, im) columns need an even column count, got shape {data.shape}")
    if np.any(data.imag != 0):
        raise DataFormatError(f"{path}: (re, im) columns must hold real numbers")
    return data[:, 0::2].real + 1j * data[:, 1::2].real


def _read(path: PathLike, key: str, complex_columns: bool = False) -> np.ndarray:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"input file not found: {path}")
    suffix = path.suffix.lower()
    if suffix == ".csv":
        data = _read_csv(path)
    elif suffix == ".json":
        data = _read_json(path, key)
    elif suffix == ".npy":
        try:
            data = np.asarray(np.load(path, allow_pickle=False), dtype=complex)
        except ValueError as e:
            raise DataFormatError(f"{path} is not a numeric .npy file: {e}") from None
    else:
        raise DataFormatError(f"unsupported file type '{suffix}' for {path}")
    if not np.all(np.isfinite(data)):
        raise InputError(f"{path} contains non-finite values")
    if complex_columns:
        data = _combine_columns(data, path)
    return data


def load_matrix(path: PathLike, complex_columns: bool = False) -> np.ndarray:
    data = _read(path, "matrix", complex_columns)
    if data.ndim != 2:
        raise DataFormatError(f"{path}: expected a 2-D matrix, got shape {data.shape}")
    logger.info(f"Loaded {data.shape[0]}x{data.shape[1]} matrix from {path}")
    return data


def load_vector(path: PathLike, complex_columns: bool = False) -> np.ndarray:
    """A vector may be stored as one row or one column; with ``complex_columns``
    a two-column file holds (re, im) per row."""
    data = _read(path, "vector", complex_columns)
    if data.ndim == 2 and 1 in data.shape:
        data = data.reshape(-1)
    if data.ndim != 1:
        raise DataFormatError(f"{path}: expected a vector, got shape {data.shape}")
    logger.info(f"Loaded vector of length {data.shape[0]} from {path}")
    return data


def save_matrix_csv(matrix, path: PathLike) -> Path:
    """Write a matrix in the CSV format read by load_matrix."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    matrix = np.atleast_2d(np.asarray(matrix, dtype=complex))
    cells = [[repr(complex(v)).strip("()") for v in row] for row in matrix]
    pd.DataFrame(cells).to_csv(path, header=False, index=False, encoding="utf-8")
    return path
