# pipeline/analysis.py
"""
Analytic checks and cost models around the rotation function h.

All functions are pure; sweeps in tests and in the CLI call them directly.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy import integrate, stats

from common.errors import InputError
from .config import EPSILON_MAX
from .gamma import check_gamma
from .rotation import h

logger = logging.getLogger(__name__)

BOUNDARY_RTOL = 1e-12


def _delta(epsilon: float, kappa: float, spectral_norm: float) -> float:
    return spectral_norm * epsilon / (4 * kappa)


def lemma3_check(
    lam: float,
    lam_bar: float,
    gamma: float,
    epsilon: float,
    kappa: float,
    spectral_norm: float,
    c0: float = 1.0,
) -> Tuple[float, float, bool]:
    """(|h(λ̄) − h(λ)|, (ε/3)|h(λ)|, lhs ≤ rhs) for an in-band λ and |λ̄ − λ| ≤ δ."""
    if not (0 < epsilon <= EPSILON_MAX):
        raise InputError(f"epsilon must lie in (0, 4/7], got {epsilon}")
    if not (kappa >= 1 and spectral_norm > 0 and gamma > 0):
        raise InputError("need kappa >= 1, spectral_norm > 0 and gamma > 0")
    low = spectral_norm / kappa
    if not (low * (1 - BOUNDARY_RTOL) <= abs(lam) <= spectral_norm * (1 + BOUNDARY_RTOL)):
        raise InputError(f"|lambda|={abs(lam)} is outside [{low:.6g}, {spectral_norm:.6g}]")
    delta = _delta(epsilon, kappa, spectral_norm)
    if abs(lam_bar - lam) > delta * (1 + BOUNDARY_RTOL):
        raise InputError(f"|lambda_bar - lambda|={abs(lam_bar - lam):.3g} exceeds delta={delta:.3g}")
    lhs = abs(h(lam_bar, gamma, c0) - h(lam, gamma, c0))
    rhs = epsilon / 3 * abs(h(lam, gamma, c0))
    return lhs, rhs, bool(lhs <= rhs)


@dataclass(frozen=True)
class MinH:
    min_value: float
    lower_bound: float
    branch: int  # 1: γ ≥ ‖F‖*²/κ, 2: below


def min_h(gamma: float, kappa: float, spectral_norm: float, c0: float = 1.0) -> MinH:
    """Minimum of |h| over |λ| ∈ [‖F‖*/κ, ‖F‖*] and its closed-form lower bound.

    |h| is unimodal with its peak at √γ, so the minimum sits at an endpoint.
    """
    gamma = check_gamma(gamma, spectral_norm, kappa)
    s = spectral_norm
    min_value = min(abs(h(s / kappa, gamma, c0)), abs(h(s, gamma, c0)))
    if gamma >= s ** 2 / kappa:
        branch, bound = 1, c0 * s / (2 * math.sqrt(gamma) * kappa)
    else:
        branch, bound = 2, c0 * math.sqrt(gamma) / (2 * s)
    return MinH(min_value=min_value, lower_bound=bound, branch=branch)


def iteration_bound(gamma: float, kappa: float, spectral_norm: float, c0: float = 1.0) -> float:
    """2/c0 · max{√γκ/‖F‖*, ‖F‖*/√γ}."""
    root = math.sqrt(gamma)
    return 2.0 / c0 * max(root * kappa / spectral_norm, spectral_norm / root)


def expected_iterations(kappa: float, spectral_norm: float = 1.0) -> Tuple[float, float]:
    """Mean iteration bound under log-uniform γ: (quadrature, 2(κ − √κ)/ln κ)."""
    if not (math.isfinite(kappa) and kappa > 1):
        raise InputError(f"kappa must be > 1, got {kappa}")
    if not spectral_norm > 0:
        raise InputError(f"spectral_norm must be > 0, got {spectral_norm}")
    s = spectral_norm
    lower = math.log(s ** 2 / kappa ** 2)
    upper = math.log(s ** 2)
    crossover = math.log(s ** 2) - math.log(kappa)

    left, _ = integrate.quad(lambda t: s * math.exp(-t / 2), lower, crossover, epsabs=0, epsrel=1e-13)
    right, _ = integrate.quad(lambda t: kappa * math.exp(t / 2) / s, crossover, upper, epsabs=0, epsrel=1e-13)
    quadrature = (left + right) / (2 * math.log(kappa))
    closed_form = 2 * (kappa - math.sqrt(kappa)) / math.log(kappa)
    return quadrature, closed_form


def h_curve(gamma: float, spectral_norm: float, kappa: float, n_points: int, c0: float = 1.0) -> pd.DataFrame:
    """|h| on a uniform |λ| grid over (0, ‖F‖*], with the feasible band marked."""
    if n_points < 2:
        raise InputError(f"n_points must be >= 2, got {n_points}")
    s = spectral_norm
    lam = np.linspace(s / n_points, s, n_points)
    return pd.DataFrame({
        "abs_lambda": lam,
        "abs_h": np.abs(h(lam, gamma, c0)),
        "in_band": lam >= s / kappa * (1 - BOUNDARY_RTOL),
    })


def band_regime(gamma: float, spectral_norm: float, kappa: float) -> str:
    """Shape of |h| on the band [‖F‖*/κ, ‖F‖*]: the peak of |h| is at |λ| = √γ."""
    gamma = check_gamma(gamma, spectral_norm, kappa)
    root = math.sqrt(gamma)
    if root <= spectral_norm / kappa * (1 + BOUNDARY_RTOL):
        return "decreasing"
    if root >= spectral_norm * (1 - BOUNDARY_RTOL):
        return "increasing"
    return "interior-peak"


@dataclass(frozen=True)
class RatioCheck:
    max_ratio_error: float
    sqrt_p_ratio: float
    lower: float
    upper: float
    ok: bool


def ratio_bounds(report) -> RatioCheck:
    """Per-component |h(λ̄)/h(λ) − 1| ≤ ε/3 and √(p/p̄) ∈ [1/(1+ε/3), 1/(1−ε/3)]."""
    eps = report.epsilon
    errors = []
    for comp in report.components:
        if comp["null_space"]:
            continue
        exact = h(comp["lambda"], report.gamma, report.c0)
        if exact != 0.0:
            errors.append(abs(h(comp["lambda_bar"], report.gamma, report.c0) / exact - 1))
    max_error = max(errors) if errors else 0.0
    sqrt_ratio = math.sqrt(report.p_exact / report.p_bar)
    lower, upper = 1 / (1 + eps / 3), 1 / (1 - eps / 3)
    tol = 1e-12
    ok = max_error <= eps / 3 + tol and lower - tol <= sqrt_ratio <= upper + tol
    return RatioCheck(max_ratio_error=max_error, sqrt_p_ratio=sqrt_ratio, lower=lower, upper=upper, ok=bool(ok))


def scaling_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log y against log x."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.size < 2:
        raise InputError("scaling_slope needs two equal-length sequences with at least 2 points")
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise InputError("scaling_slope needs positive values")
    if np.unique(xs).size < 2:
        raise InputError("scaling_slope needs at least two distinct x values")
    return float(stats.linregress(np.log(xs), np.log(ys)).slope)


def cost_model(N: int, kappa: float, epsilon: float, spectral_norm: float = 1.0) -> Dict[str, float]:
    """Worst-case query units per QSVE call and their product with the mean iteration count."""
    units = 8 * kappa * math.sqrt(N) / epsilon
    iterations = expected_iterations(kappa, spectral_norm)[1] if kappa > 1 else 1.0
    return {
        "N": N,
        "kappa": kappa,
        "epsilon": epsilon,
        "worst_case_query_units": units,
        "expected_iterations": iterations,
        "expected_cost": units * iterations,
    }
