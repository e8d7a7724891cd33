# sign_recovery/estimates.py
"""
Signed eigenvalue estimates via one QSVE run on the shifted matrix.

λ̄_j = σ̄(F̂)_j − s, hence |λ̄_j − λ_j| = |σ̄(F̂)_j − (λ_j + s)| ≤ δ.
"""

import logging
from typing import Optional

from common.errors import DegenerateError, InputError, require_positive
from kp_tree.tree_set import build
from problem_model.types import HermitianProblem
from qsve.circuit import qsve_circuit, bits_for_precision
from qsve.ideal import qsve_ideal
from qsve.ledger import CostLedger
from qsve.state import QuantumState, AnnotatedState
from .shift import shift, ShiftedMatrix

logger = logging.getLogger(__name__)

BACKENDS = ("ideal", "circuit")


def run_backend(
    spectral,
    matrix,
    state: QuantumState,
    delta: float,
    backend: str,
    ledger: Optional[CostLedger],
    cap: Optional[int] = None,
) -> AnnotatedState:
    """Run one QSVE on a Hermitian matrix whose eigen data is ``spectral``."""
    if backend == "ideal":
        return qsve_ideal(spectral, state, delta, ledger)
    if backend == "circuit":
        trees = build(matrix)
        bits = bits_for_precision(spectral.frobenius_norm, delta)
        return qsve_circuit(trees, state, bits, basis=spectral.vectors, ledger=ledger, cap=cap)
    raise InputError(f"unknown backend '{backend}'; expected one of {BACKENDS}")


def eigen_estimates(
    problem: HermitianProblem,
    state: QuantumState,
    delta: float,
    backend: str = "ideal",
    ledger: Optional[CostLedger] = None,
    spectral_bound: Optional[float] = None,
    cap: Optional[int] = None,
    shifted: Optional[ShiftedMatrix] = None,
) -> AnnotatedState:
    """Annotate each eigencomponent of ``state`` with a signed estimate λ̄_j."""
    delta = require_positive(delta, "delta")
    if state.dimension != problem.N:
        raise InputError(f"state dimension {state.dimension} does not match N={problem.N}")
    shifted = shifted if shifted is not None else shift(problem, spectral_bound)
    if shifted.degenerate:
        raise DegenerateError("shifted matrix is zero (all eigenvalues equal -|F|*); QSVE is vacuous")

    if ledger is not None:
        ledger.charge_tree_build()
    annotated = run_backend(shifted.spectral, shifted.F_hat, state, delta, backend, ledger, cap)
    signed = [sigma - shifted.shift for sigma in annotated.estimates]
    logger.debug(
        f"Eigen estimates via {backend} backend: shift={shifted.shift:.6g} delta={delta:.4g} "
        f"components={len(signed)}"
    )
    return annotated.with_estimates(signed, grid_offset=-shifted.shift)
