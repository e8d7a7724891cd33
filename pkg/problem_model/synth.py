# problem_model/synth.py
"""
Synthetic Hermitian problems with a controlled spectrum.

‖F‖* is normalized to 1, eigenvalue magnitudes lie in [1/κ, 1] and the
eigenvectors come from a seeded Haar-random unitary.
"""

import logging
import math

import numpy as np
from scipy.stats import unitary_group

from common.errors import InputError
from .types import SpectralData, HermitianProblem

logger = logging.getLogger(__name__)

SIGN_PROFILES = ("all-positive", "all-negative", "mixed", "zero-mean")


def _magnitudes(rng: np.random.Generator, count: int, kappa: float) -> np.ndarray:
    # the first two magnitudes pin ‖F‖* = 1 and min|λ| = 1/κ
    low = 1.0 / kappa
    mags = rng.uniform(low, 1.0, size=count)
    mags[0] = 1.0
    if count > 1:
        mags[1] = low
    return mags


def _eigenvalues(rng: np.random.Generator, N: int, kappa: float, profile: str) -> np.ndarray:
    if profile == "zero-mean":
        if N % 2:
            raise InputError(f"zero-mean profile needs an even N, got N={N}")
        mags = _magnitudes(rng, N // 2, kappa)
        return np.concatenate([mags, -mags])
    mags = _magnitudes(rng, N, kappa)
    if profile == "all-positive":
        return mags
    if profile == "all-negative":
        return -mags
    signs = rng.choice([-1.0, 1.0], size=N)
    if np.all(signs == signs[0]):
        signs[rng.integers(N)] *= -1.0
    return signs * mags


def synth_problem(seed: int, N: int, kappa_target: float, eig_sign_profile: str = "mixed") -> HermitianProblem:
    """Generate a deterministic HermitianProblem for the given seed."""
    if N < 2:
        raise InputError(f"N must be >= 2, got {N}")
    if not kappa_target >= 1:
        raise InputError(f"kappa_target must be >= 1, got {kappa_target}")
    if eig_sign_profile not in SIGN_PROFILES:
        raise InputError(f"unknown sign profile '{eig_sign_profile}'; expected one of {SIGN_PROFILES}")

    rng = np.random.default_rng(seed)
    values = _eigenvalues(rng, N, float(kappa_target), eig_sign_profile)
    order = np.argsort(values, kind="stable")[::-1]
    values = values[order]

    U = unitary_group.rvs(N, random_state=rng)
    F = (U * values) @ U.conj().T
    F = (F + F.conj().T) / 2
    y = rng.standard_normal(N) + 1j * rng.standard_normal(N)

    magnitudes = np.abs(values)
    spectral = SpectralData(
        values=values,
        vectors=U,
        spectral_norm=float(magnitudes.max()),
        frobenius_norm=float(np.linalg.norm(F)),
        kappa=float(magnitudes.max() / magnitudes.min()),
        mean_eig=math.fsum(values) / N,
        effective_kappa=float(magnitudes.max() / magnitudes.min()),
    )
    logger.debug(
        f"Synthesized problem seed={seed} N={N} kappa={kappa_target} profile={eig_sign_profile} "
        f"mean_eig={spectral.mean_eig:.3g}"
    )
    return HermitianProblem(F=F, y=y, spectral=spectral, kappa=float(kappa_target))
