# sign_recovery/baseline.py
"""
Two-matrix comparison baseline for sign recovery.

QSVE runs on F and on F + μI; a component's sign is + when its second
estimate exceeds the first. Needs two tree builds and δ < μ/2.
"""

import logging
import math
from typing import Iterable, Optional

import numpy as np
import pandas as pd

from common.errors import InputError, PrecisionError, require_positive
from problem_model.synth import synth_problem
from problem_model.types import HermitianProblem
from qsve.ledger import CostLedger
from qsve.state import QuantumState, AnnotatedState
from .estimates import eigen_estimates, run_backend
from .shift import offset_spectral

logger = logging.getLogger(__name__)

DEFAULT_BENCH_DELTA = 0.005


def default_mu(problem: HermitianProblem) -> float:
    """μ = ‖F‖*/κ, which is 1/κ for a normalized F."""
    return problem.spectral_norm / problem.pipeline_kappa(allow_null_space=True)


def wzp_baseline(
    problem: HermitianProblem,
    mu: Optional[float],
    delta: float,
    backend: str = "ideal",
    ledger: Optional[CostLedger] = None,
    state: Optional[QuantumState] = None,
    strict: bool = True,
    cap: Optional[int] = None,
) -> AnnotatedState:
    """Signed estimates λ̄_j = ±σ̄(F)_j from comparing F and F + μI.

    ``state`` defaults to the normalized y. With ``strict=False`` the δ ≥ μ/2
    regime is run anyway (for benchmarks) instead of raising PrecisionError.
    """
    delta = require_positive(delta, "delta")
    mu = default_mu(problem) if mu is None else require_positive(mu, "mu")
    if delta >= mu / 2:
        message = f"delta={delta:.4g} >= mu/2={mu / 2:.4g}: the comparison of estimates is unreliable"
        if strict:
            raise PrecisionError(message)
        logger.warning(message)
    state = state if state is not None else QuantumState.from_vector(problem.y)
    if state.dimension != problem.N:
        raise InputError(f"state dimension {state.dimension} does not match N={problem.N}")

    shifted_matrix = problem.F + mu * np.eye(problem.N)
    shifted_spectral = offset_spectral(problem.spectral, mu, shifted_matrix)
    if ledger is not None:
        ledger.charge_tree_build(2)
    first = run_backend(problem.spectral, problem.F, state, delta, backend, ledger, cap)
    second = run_backend(shifted_spectral, shifted_matrix, state, delta, backend, ledger, cap)

    signed = [
        sigma if shifted_sigma > sigma else -sigma
        for sigma, shifted_sigma in zip(first.estimates, second.estimates)
    ]
    return first.with_estimates(signed, grid_offset=0.0)


def _sign_errors(problem: HermitianProblem, annotated: AnnotatedState) -> int:
    exact = problem.eigenvalues[annotated.indices]
    return int(np.sum(np.sign(annotated.estimates) != np.sign(exact)))


def _max_error(problem: HermitianProblem, annotated: AnnotatedState) -> float:
    exact = problem.eigenvalues[annotated.indices]
    return float(np.max(np.abs(annotated.estimates - exact)))


def sign_benchmark(
    kappas: Iterable[float],
    N: int = 8,
    delta: float = DEFAULT_BENCH_DELTA,
    seed: int = 0,
    backend: str = "ideal",
    profile: str = "mixed",
) -> pd.DataFrame:
    """Spectral shift vs. two-matrix comparison across κ; one row per (κ, method)."""
    kappas = list(kappas)
    if not kappas:
        raise InputError("sign benchmark needs at least one kappa")
    rows = []
    for kappa in kappas:
        problem = synth_problem(seed, N, kappa, profile)
        # equal weight on every eigenvector so each sign is exercised
        state = QuantumState(problem.eigenvectors.sum(axis=1) / math.sqrt(problem.N))

        ledger = CostLedger()
        annotated = eigen_estimates(problem, state, delta, backend=backend, ledger=ledger)
        rows.append({
            "kappa": float(kappa),
            "method": "spectral_shift",
            "delta": delta,
            "mu": None,
            "reliable": True,
            "tree_builds": ledger.tree_builds,
            "query_units": ledger.qsve_query_units,
            "sign_errors": _sign_errors(problem, annotated),
            "max_abs_error": _max_error(problem, annotated),
        })

        ledger = CostLedger()
        mu = default_mu(problem)
        annotated = wzp_baseline(problem, mu, delta, backend=backend, ledger=ledger, state=state, strict=False)
        rows.append({
            "kappa": float(kappa),
            "method": "wzp",
            "delta": delta,
            "mu": mu,
            "reliable": bool(delta < mu / 2),
            "tree_builds": ledger.tree_builds,
            "query_units": ledger.qsve_query_units,
            "sign_errors": _sign_errors(problem, annotated),
            "max_abs_error": _max_error(problem, annotated),
        })
        logger.info(
            f"kappa={kappa}: spectral-shift sign errors {rows[-2]['sign_errors']}, "
            f"wzp sign errors {rows[-1]['sign_errors']} (reliable={rows[-1]['reliable']})"
        )
    return pd.DataFrame(rows)
