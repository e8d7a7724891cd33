# problem_model/hermitian.py
"""
Hermitian embedding and spectral decomposition.

Non-Hermitian design matrices are embedded as [[0, F], [F†, 0]]; the lower
block of the embedded ridge solution is the original solution.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
import scipy.linalg as la

from common.errors import InputError, HERMITIAN_RTOL, require_finite
from .types import SpectralData, HermitianProblem

logger = logging.getLogger(__name__)

# |λ| below this fraction of ‖F‖* is treated as an exact zero eigenvalue
ZERO_EIGENVALUE_RTOL = 1e-12
CONTAMINATION_RTOL = 1e-8


def hermitian_embed(F, y) -> Tuple[np.ndarray, np.ndarray]:
    """Return (F̃, ỹ) with F̃ = [[0, F], [F†, 0]] and ỹ = (y, 0)."""
    F = require_finite(F, "F")
    y = require_finite(y, "y")
    if F.ndim != 2:
        raise InputError(f"F must be 2-D, got shape {F.shape}")
    m, n = F.shape
    if y.shape != (m,):
        raise InputError(f"y must have length {m}, got shape {y.shape}")
    F_tilde = np.block([
        [np.zeros((m, m), dtype=complex), F],
        [F.conj().T, np.zeros((n, n), dtype=complex)],
    ])
    y_tilde = np.concatenate([y, np.zeros(n, dtype=complex)])
    logger.debug(f"Embedded {m}x{n} matrix into {m + n}x{m + n} Hermitian matrix")
    return F_tilde, y_tilde


def extract_solution(w_tilde, m: int, n: int) -> Tuple[np.ndarray, bool]:
    """Return the lower n-block of an embedded solution and a contamination flag.

    The flag is set when the upper m-block carries more than 1e-8 of the
    total norm.
    """
    w_tilde = require_finite(w_tilde, "w_tilde")
    if w_tilde.ndim != 1 or w_tilde.shape[0] != m + n:
        raise InputError(f"w_tilde must have length m+n={m + n}, got shape {w_tilde.shape}")
    upper = w_tilde[:m]
    total = np.linalg.norm(w_tilde)
    contaminated = bool(total > 0 and np.linalg.norm(upper) > CONTAMINATION_RTOL * total)
    if contaminated:
        logger.warning(
            f"Upper block of embedded solution is not zero: "
            f"|upper|/|w| = {np.linalg.norm(upper) / total:.3e}"
        )
    return w_tilde[m:].copy(), contaminated


def spectral_decompose(F) -> SpectralData:
    """Eigen-decompose a Hermitian matrix; eigenvalues sorted descending.

    A zero eigenvalue makes ``kappa`` infinite; ``effective_kappa`` is then
    the ratio over the nonzero part of the spectrum.
    """
    F = require_finite(F, "F")
    if F.ndim != 2 or F.shape[0] != F.shape[1]:
        raise InputError(f"F must be square, got shape {F.shape}")
    fro = float(np.linalg.norm(F))
    if np.linalg.norm(F - F.conj().T) > HERMITIAN_RTOL * max(fro, 1.0):
        raise InputError("F is not Hermitian within tolerance")

    values, vectors = la.eigh((F + F.conj().T) / 2)
    order = np.argsort(values)[::-1]
    values = values[order]
    vectors = vectors[:, order]

    magnitudes = np.abs(values)
    spectral_norm = float(magnitudes.max()) if magnitudes.size else 0.0
    nonzero = magnitudes > ZERO_EIGENVALUE_RTOL * max(spectral_norm, np.finfo(float).tiny)
    if spectral_norm == 0.0:
        kappa = effective = math.inf
    elif nonzero.all():
        kappa = effective = spectral_norm / float(magnitudes.min())
    else:
        kappa = math.inf
        effective = spectral_norm / float(magnitudes[nonzero].min())
        values = np.where(nonzero, values, 0.0)
        logger.warning(
            f"F has {int((~nonzero).sum())} zero eigenvalue(s); kappa is infinite "
            f"(nonzero-spectrum kappa {effective:.4g})"
        )

    return SpectralData(
        values=values,
        vectors=vectors,
        spectral_norm=spectral_norm,
        frobenius_norm=fro,
        kappa=kappa,
        mean_eig=math.fsum(values) / len(values),
        effective_kappa=effective,
    )


def make_problem(F, y, kappa: Optional[float] = None, embedded_from=None) -> HermitianProblem:
    """Build a HermitianProblem, computing spectral data exactly.

    A declared ``kappa`` must be an upper bound of the exact condition number.
    """
    spectral = spectral_decompose(F)
    declared = spectral.kappa if kappa is None else float(kappa)
    if kappa is not None and declared < spectral.kappa * (1 - 1e-9):
        raise InputError(
            f"declared kappa={declared} is below the exact condition number {spectral.kappa:.6g}"
        )
    return HermitianProblem(F=F, y=y, spectral=spectral, kappa=declared, embedded_from=embedded_from)
