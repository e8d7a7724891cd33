# problem_model/ridge.py
"""
Classical ridge-regression oracle.

w* = (F†F + γI)⁻¹ F†y by a dense Cholesky solve. This is the reference every
pipeline run is compared against, so it is exact rather than fast.
"""

import logging
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg as la

from common.errors import InputError, require_finite, require_positive
from .types import FitSample, DesignMatrix, RidgeSolution

logger = logging.getLogger(__name__)

RESIDUAL_RTOL = 1e-10


def _check_dims(F: np.ndarray, y: np.ndarray) -> None:
    if F.ndim != 2:
        raise InputError(f"F must be 2-D, got shape {F.shape}")
    if y.ndim != 1 or y.shape[0] != F.shape[0]:
        raise InputError(f"y must have length {F.shape[0]}, got shape {y.shape}")


def objective(F, y, gamma: float, w) -> float:
    """‖Fw − y‖² + γ‖w‖²."""
    F = require_finite(F, "F")
    y = require_finite(y, "y")
    w = require_finite(w, "w")
    _check_dims(F, y)
    if w.ndim != 1 or w.shape[0] != F.shape[1]:
        raise InputError(f"w must have length {F.shape[1]}, got shape {w.shape}")
    gamma = require_positive(gamma, "gamma", strict=False)
    residual = F @ w - y
    return float(np.vdot(residual, residual).real + gamma * np.vdot(w, w).real)


def ridge_solve(F, y, gamma: float) -> RidgeSolution:
    """Solve the regularized normal equations (F†F + γI) w = F†y."""
    F = require_finite(F, "F")
    y = require_finite(y, "y")
    _check_dims(F, y)
    gamma = require_positive(gamma, "gamma")

    n = F.shape[1]
    gram = F.conj().T @ F + gamma * np.eye(n)
    rhs = F.conj().T @ y
    w = la.solve(gram, rhs, assume_a="pos")

    # one step of iterative refinement when the residual is loose
    residual = rhs - gram @ w
    bound = RESIDUAL_RTOL * max(np.linalg.norm(rhs), np.finfo(float).tiny)
    if np.linalg.norm(residual) > bound:
        w = w + la.solve(gram, residual, assume_a="pos")
        residual = rhs - gram @ w
        if np.linalg.norm(residual) > bound:
            logger.warning(
                f"Normal-equation residual {np.linalg.norm(residual):.3e} exceeds "
                f"{bound:.3e} after refinement (gamma={gamma})"
            )

    return RidgeSolution(
        w_star=w,
        objective_value=objective(F, y, gamma, w),
        gamma=gamma,
        residual_norm=float(np.linalg.norm(residual)),
    )


def polynomial_design(xs: Sequence[complex], n: int) -> DesignMatrix:
    """Design matrix for the polynomial basis f_j(x) = x^(j-1), j = 1..n."""
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    xs = require_finite(xs, "xs")
    if xs.ndim != 1 or xs.shape[0] < 1:
        raise InputError("xs must be a non-empty 1-D sequence")
    return DesignMatrix(np.vander(xs, N=n, increasing=True))


def design_from_samples(samples: Iterable[FitSample], n: int):
    """Return (DesignMatrix, y) built from FitSamples with the polynomial basis."""
    samples = list(samples)
    if not samples:
        raise InputError("at least one FitSample is required")
    design = polynomial_design([s.x for s in samples], n)
    y = np.array([s.y for s in samples], dtype=complex)
    return design, y


def fit_samples(samples: Iterable[FitSample], n: int, gamma: float) -> RidgeSolution:
    """Fit n polynomial coefficients to the samples with ridge regularization."""
    design, y = design_from_samples(samples, n)
    logger.info(f"Fitting {design.shape[0]} samples with {n} basis functions (gamma={gamma})")
    return ridge_solve(design.entries, y, gamma)
