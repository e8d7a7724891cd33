# pipeline/rotation.py
"""
Conditional rotation by h(λ̄) and post-selection on the auxiliary qubit.

After the rotation and uncomputation the accepted branch is
Σ_i β_i h(λ̄_i)|v_i⟩, accepted with probability p̄ = Σ_i |β_i|² h(λ̄_i)².
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from common.errors import DegenerateError, InputError, require_positive
from problem_model.types import HermitianProblem
from qsve.ledger import CostLedger
from qsve.state import QuantumState, AnnotatedState

logger = logging.getLogger(__name__)

MODES = ("exact", "bernoulli", "amplify")


def h(lam, gamma: float, c0: float = 1.0):
    """c0·√γ·λ/(λ² + γ); odd in λ with |h| ≤ c0/2, peak at |λ| = √γ."""
    gamma = require_positive(gamma, "gamma")
    lam = np.asarray(lam, dtype=float)
    value = c0 * math.sqrt(gamma) * lam / (lam ** 2 + gamma)
    return float(value) if value.ndim == 0 else value


def prepare_y_state(problem: HermitianProblem) -> Tuple[QuantumState, np.ndarray]:
    """|y⟩ = y/‖y‖ and its eigenbasis coefficients β_i = ⟨v_i|y⟩/‖y‖."""
    if np.linalg.norm(problem.y) == 0.0:
        raise InputError("y is the zero vector; |y> is undefined")
    state = QuantumState.from_vector(problem.y)
    betas = state.coefficients(problem.eigenvectors)
    return state, betas


@dataclass(frozen=True)
class RotationResult:
    w_state: QuantumState
    p_bar: float
    iterations: int
    coefficients: np.ndarray  # β_i·h(λ̄_i) per annotated component, before normalization
    acceptance_rate: Optional[float] = None
    first_success: Optional[int] = None


def rotate_and_postselect(
    annotated: AnnotatedState,
    gamma: float,
    c0: float = 1.0,
    mode: str = "exact",
    seed: Union[int, np.random.SeedSequence, None] = 0,
    trials: int = 10000,
    ledger: Optional[CostLedger] = None,
    null_threshold: float = 0.0,
) -> RotationResult:
    """Apply the h(λ̄) rotation and post-select the accepted branch.

    Components with |λ̄| < ``null_threshold`` are treated as null-space
    directions and receive coefficient 0.
    """
    if mode not in MODES:
        raise InputError(f"unknown postselect mode '{mode}'; expected one of {MODES}")
    gamma = require_positive(gamma, "gamma")
    estimates = annotated.estimates
    rotation = np.asarray(h(estimates, gamma, c0), dtype=float)
    if np.any(np.abs(rotation) > 1.0):
        raise InputError(f"rotation amplitude exceeds 1 (c0={c0}); c0 must be < 2")
    if null_threshold > 0:
        rotation = np.where(np.abs(estimates) < null_threshold, 0.0, rotation)

    coefficients = annotated.betas * rotation
    p_bar = math.fsum(np.abs(coefficients) ** 2)
    if p_bar == 0.0:
        raise DegenerateError("post-selection probability is zero: every h(lambda_bar) vanishes")

    w = annotated.vectors() @ coefficients / math.sqrt(p_bar)
    w_state = QuantumState.from_vector(w)
    iterations = math.ceil(1.0 / math.sqrt(p_bar))

    acceptance_rate = None
    first_success = None
    if mode == "bernoulli":
        rng = np.random.default_rng(seed)
        accepted = rng.random(int(trials)) < p_bar
        acceptance_rate = float(accepted.mean())
        hits = np.flatnonzero(accepted)
        first_success = int(hits[0]) + 1 if hits.size else None
        logger.debug(f"Bernoulli post-selection: {accepted.sum()}/{trials} accepted (p_bar={p_bar:.4g})")
    elif mode == "amplify" and ledger is not None:
        ledger.charge_amplification(iterations)

    return RotationResult(
        w_state=w_state,
        p_bar=float(p_bar),
        iterations=int(iterations),
        coefficients=coefficients,
        acceptance_rate=acceptance_rate,
        first_success=first_success,
    )
