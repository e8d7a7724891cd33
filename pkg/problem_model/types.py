# problem_model/types.py
"""
Domain types of the fitting problem.

All types are frozen dataclasses; arrays are copied and marked read-only on
construction so instances can be shared between sweep workers.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from common.errors import InputError, HERMITIAN_RTOL, ORTHONORMAL_ATOL


def _frozen(array, dtype=complex) -> np.ndarray:
    arr = np.array(array, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class FitSample:
    """A single observation (x_i, y_i)."""

    x: complex
    y: complex

    def __post_init__(self) -> None:
        if not (np.isfinite(complex(self.x)) and np.isfinite(complex(self.y))):
            raise InputError(f"FitSample must be finite, got x={self.x}, y={self.y}")


@dataclass(frozen=True)
class DesignMatrix:
    """F with F_ij = f_j(x_i); m samples by n basis functions."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InputError(f"DesignMatrix must be a non-empty 2-D array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InputError("DesignMatrix contains non-finite entries")
        object.__setattr__(self, "entries", _frozen(arr))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape


@dataclass(frozen=True)
class RidgeSolution:
    w_star: np.ndarray
    objective_value: float
    gamma: float
    residual_norm: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "w_star", _frozen(self.w_star))


@dataclass(frozen=True)
class SpectralData:
    """Eigen-decomposition of a Hermitian matrix, eigenvalues sorted descending.

    ``vectors[:, i]`` is the unit eigenvector for ``values[i]``.
    """

    values: np.ndarray
    vectors: np.ndarray
    spectral_norm: float
    frobenius_norm: float
    kappa: float
    mean_eig: float
    effective_kappa: float = math.inf

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen(self.values, dtype=float))
        object.__setattr__(self, "vectors", _frozen(self.vectors))

    @property
    def dimension(self) -> int:
        return int(self.values.shape[0])

    @property
    def invertible(self) -> bool:
        return math.isfinite(self.kappa)

    @property
    def pairs(self) -> List[Tuple[float, np.ndarray]]:
        return [(float(self.values[i]), self.vectors[:, i]) for i in range(self.dimension)]

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


@dataclass(frozen=True)
class HermitianProblem:
    """A Hermitian fitting instance (F, y) together with its spectral data.

    ``kappa`` may be a declared upper bound of the exact condition number.
    """

    F: np.ndarray
    y: np.ndarray
    spectral: SpectralData
    kappa: float
    embedded_from: Optional[Tuple[int, int]] = field(default=None)  # (m, n) of the original F

    def __post_init__(self) -> None:
        F = np.asarray(self.F, dtype=complex)
        y = np.asarray(self.y, dtype=complex)
        if F.ndim != 2 or F.shape[0] != F.shape[1]:
            raise InputError(f"F must be square, got shape {F.shape}")
        if y.shape != (F.shape[0],):
            raise InputError(f"y must have length {F.shape[0]}, got shape {y.shape}")
        if not (np.all(np.isfinite(F)) and np.all(np.isfinite(y))):
            raise InputError("HermitianProblem requires finite F and y")
        scale = max(np.linalg.norm(F), 1.0)
        if np.linalg.norm(F - F.conj().T) > HERMITIAN_RTOL * scale:
            raise InputError("F is not Hermitian within tolerance")
        V = self.spectral.vectors
        if V.shape != F.shape:
            raise InputError("spectral data does not match F")
        if np.linalg.norm(V.conj().T @ V - np.eye(F.shape[0])) > ORTHONORMAL_ATOL * F.shape[0]:
            raise InputError("eigenvectors are not orthonormal")
        if self.kappa < 1:
            raise InputError(f"kappa must be >= 1, got {self.kappa}")
        norm = self.spectral.spectral_norm
        if norm > 0 and np.min(np.abs(self.spectral.values)) < norm / self.kappa * (1 - 1e-9):
            raise InputError(
                f"declared kappa={self.kappa} is smaller than the exact condition number "
                f"{self.spectral.kappa}"
            )
        object.__setattr__(self, "F", _frozen(F))
        object.__setattr__(self, "y", _frozen(y))

    @property
    def N(self) -> int:
        return int(self.F.shape[0])

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectral.values

    @property
    def eigenvectors(self) -> np.ndarray:
        return self.spectral.vectors

    @property
    def spectral_norm(self) -> float:
        return self.spectral.spectral_norm

    @property
    def frobenius_norm(self) -> float:
        return self.spectral.frobenius_norm

    @property
    def mean_eig(self) -> float:
        return self.spectral.mean_eig

    @property
    def singular(self) -> bool:
        return not self.spectral.invertible

    def pipeline_kappa(self, allow_null_space: bool = False) -> float:
        """Condition number used by the pipeline; for singular F the nonzero-spectrum value."""
        if math.isfinite(self.kappa):
            return self.kappa
        if allow_null_space and math.isfinite(self.spectral.effective_kappa):
            return self.spectral.effective_kappa
        raise InputError("F is singular (kappa is infinite); the pipeline needs an invertible F")
