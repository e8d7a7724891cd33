# common/errors.py
"""
qdfsim の例外クラス

ライブラリ側は例外を送出するだけで、終了コードへの対応付けは cli 側で行う。
"""

from typing import Optional

import numpy as np

# 数値許容誤差
HERMITIAN_RTOL = 1e-12
ORTHONORMAL_ATOL = 1e-10
NORMALIZATION_ATOL = 1e-10


class QDFError(Exception):
    """Base class for every error raised by qdfsim."""


class InputError(QDFError, ValueError):
    """Dimension mismatch, non-finite data or a violated precondition."""


class StateUndefinedError(QDFError):
    """A quantum state was requested from a zero vector."""


class ResourceError(QDFError):
    """The dense circuit simulation would exceed its configured size."""


class DegenerateError(InputError):
    """The instance makes the algorithm's contract vacuous (F̂ = 0, p̄ = 0)."""


class PrecisionError(InputError):
    """The requested precision is too coarse for a reliable comparison."""


class DataFormatError(QDFError):
    """An input file could not be parsed."""


def require_finite(array, name: str) -> np.ndarray:
    """Return ``array`` as a complex ndarray, raising InputError on NaN/inf."""
    arr = np.asarray(array, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} contains non-finite entries")
    return arr


def require_positive(value: float, name: str, strict: bool = True) -> float:
    value = float(value)
    if not np.isfinite(value) or value < 0 or (strict and value == 0):
        bound = "> 0" if strict else ">= 0"
        raise InputError(f"{name} must be {bound}, got {value}")
    return value


def require_length(vector: np.ndarray, expected: int, name: str, context: Optional[str] = None) -> None:
    if vector.ndim != 1 or vector.shape[0] != expected:
        where = f" ({context})" if context else ""
        raise InputError(f"{name} must have length {expected}, got shape {vector.shape}{where}")
