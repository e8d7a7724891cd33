# sign_recovery/shift.py
"""
Spectral shift F̂ = F + s·I with s = ‖F‖* (or a user-supplied bound s ≥ ‖F‖*).

Every eigenvalue of F̂ is λ_i + s ≥ 0, so singular values of F̂ equal its
eigenvalues and one QSVE run recovers signed λ by subtracting s.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from common.errors import InputError
from problem_model.types import HermitianProblem, SpectralData

logger = logging.getLogger(__name__)

PSD_RTOL = 1e-10
IDENTITY_RTOL = 1e-12


def offset_spectral(spectral: SpectralData, offset: float, matrix: np.ndarray) -> SpectralData:
    """Spectral data of F + offset·I from that of F; eigenvectors are shared."""
    values = spectral.values + offset
    magnitudes = np.abs(values)
    norm = float(magnitudes.max()) if magnitudes.size else 0.0
    smallest = float(magnitudes.min()) if magnitudes.size else 0.0
    kappa = norm / smallest if smallest > 0 else math.inf
    nonzero = magnitudes[magnitudes > 0]
    return SpectralData(
        values=values,
        vectors=spectral.vectors,
        spectral_norm=norm,
        frobenius_norm=float(np.linalg.norm(matrix)),
        kappa=kappa,
        mean_eig=math.fsum(values) / len(values),
        effective_kappa=norm / float(nonzero.min()) if nonzero.size else math.inf,
    )


@dataclass(frozen=True)
class ShiftedMatrix:
    F_hat: np.ndarray
    shift: float
    source: HermitianProblem
    spectral: SpectralData

    @property
    def frobenius_norm(self) -> float:
        return self.spectral.frobenius_norm

    @property
    def degenerate(self) -> bool:
        """F̂ = 0: every eigenvalue of F equals −s."""
        return self.frobenius_norm == 0.0 or self.spectral.spectral_norm <= PSD_RTOL * self.shift


def shift_amount(problem: HermitianProblem, spectral_bound: Optional[float] = None) -> float:
    """s = ‖F‖*, or ``spectral_bound`` when given; it may not be below ‖F‖*."""
    s = problem.spectral_norm
    if spectral_bound is None:
        return s
    if not (math.isfinite(spectral_bound) and spectral_bound >= s * (1 - 1e-12)):
        raise InputError(f"spectral_bound={spectral_bound} is below the spectral norm {s:.6g}")
    return float(spectral_bound)


def shift(problem: HermitianProblem, spectral_bound: Optional[float] = None) -> ShiftedMatrix:
    """Return F + s·I; ``spectral_bound`` may replace ‖F‖* by any s ≥ ‖F‖*."""
    s = shift_amount(problem, spectral_bound)
    F_hat = problem.F + s * np.eye(problem.N)
    spectral = offset_spectral(problem.spectral, s, F_hat)
    lowest = float(spectral.values.min())
    if lowest < -PSD_RTOL * max(s, 1.0):
        raise InputError(f"shifted matrix is not positive semi-definite (min eigenvalue {lowest:.3e})")
    shifted = ShiftedMatrix(F_hat=F_hat, shift=s, source=problem, spectral=spectral)
    if shifted.degenerate:
        logger.warning("Shifted matrix is zero: every eigenvalue of F equals -|F|*")
    return shifted


@dataclass(frozen=True)
class FrobeniusCheck:
    lhs: float  # ‖F̂‖_F
    rhs: float  # sqrt(‖F‖_F² + 2s·N·𝔼(λ) + N·s²)
    bound: float  # 2√N·s
    instance_bound: float  # √N·s·sqrt(2 + 2𝔼(λ)/s)
    ok: bool
    shift: float = 0.0


def frobenius_identity(problem: HermitianProblem, spectral_bound: Optional[float] = None) -> FrobeniusCheck:
    """Compare ‖F̂‖_F with its closed form in terms of the mean eigenvalue.

    The shift is s = ‖F‖* unless ``spectral_bound`` is given, in which case
    both bounds are taken for that larger s. Agreement is checked on the
    squared norms relative to ‖F‖_F² + N·s², so the total-cancellation case
    F = −s·I is handled.
    """
    N = problem.N
    s = shift_amount(problem, spectral_bound)
    fro = problem.frobenius_norm
    mean = problem.mean_eig
    lhs = float(np.linalg.norm(problem.F + s * np.eye(N)))
    if s == 0.0:
        return FrobeniusCheck(lhs=lhs, rhs=0.0, bound=0.0, instance_bound=0.0, ok=lhs == 0.0)
    rhs_sq = fro ** 2 + 2 * s * N * mean + N * s ** 2
    rhs = math.sqrt(max(rhs_sq, 0.0))
    bound = 2 * math.sqrt(N) * s
    instance_bound = math.sqrt(N) * s * math.sqrt(max(2 + 2 * mean / s, 0.0))
    scale = fro ** 2 + N * s ** 2
    agrees = abs(lhs ** 2 - rhs_sq) <= IDENTITY_RTOL * scale
    within = lhs <= bound * (1 + IDENTITY_RTOL)
    if not (agrees and within):
        logger.warning(
            f"Frobenius identity check failed: lhs={lhs:.12g} rhs={rhs:.12g} bound={bound:.6g}"
        )
    return FrobeniusCheck(
        lhs=lhs, rhs=rhs, bound=bound, instance_bound=instance_bound, ok=bool(agrees and within), shift=s,
    )


def mean_eig_regime(problem: HermitianProblem, tol: float = 0.05) -> str:
    """Classify 𝔼(λ)/‖F‖*: near_minus_norm, negative, zero or positive."""
    s = problem.spectral_norm
    if s == 0.0:
        return "zero"
    ratio = problem.mean_eig / s
    if ratio <= -1 + tol:
        return "near_minus_norm"
    if abs(ratio) <= tol:
        return "zero"
    return "negative" if ratio < 0 else "positive"
