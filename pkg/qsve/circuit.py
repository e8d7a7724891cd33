# qsve/circuit.py
"""
Circuit QSVE backend: phase estimation on the walk operator.

A measured phase θ̄ maps to σ̄ = ‖A‖_F·cos(θ̄/2); outcomes ±θ̄ give the same
σ̄ and are merged. Each component's estimate is the modal σ̄ of its own
phase-estimation run, so the betas are never altered.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from common.errors import InputError, ResourceError, require_positive
from kp_tree.tree_set import KPTreeSet
from .ledger import CostLedger
from .phase_estimation import PhaseEstimate, phase_estimate, eigendecompose, MAX_BITS
from .state import QuantumState, AnnotatedState, Component, decompose, GRID_PHASE
from .walk import walk_operator

logger = logging.getLogger(__name__)


def bits_for_precision(frobenius: float, delta: float, max_bits: int = MAX_BITS) -> int:
    """Smallest b with ‖A‖_F·π/2^b ≤ δ."""
    frobenius = require_positive(frobenius, "frobenius")
    delta = require_positive(delta, "delta")
    bits = max(1, math.ceil(math.log2(frobenius * math.pi / delta)))
    while frobenius * math.pi / (1 << bits) > delta:
        bits += 1
    if bits > max_bits:
        raise ResourceError(
            f"precision delta={delta:.3g} needs {bits} phase bits (max {max_bits}) for |A|_F={frobenius:.3g}"
        )
    return bits


def singular_basis(A: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Right singular vectors (columns) and singular values padded to n."""
    _, s, Vh = np.linalg.svd(A)
    n = A.shape[1]
    values = np.zeros(n)
    values[:s.shape[0]] = s
    return Vh.conj().T, values


def folded_distribution(estimate: PhaseEstimate, frobenius: float) -> pd.DataFrame:
    """Distribution over σ̄ after merging the ±θ̄ outcomes."""
    M = estimate.grid_size
    k = np.arange(M)
    folded = np.bincount(np.minimum(k, M - k), weights=estimate.marginal, minlength=M // 2 + 1)
    ks = np.arange(folded.shape[0])
    return pd.DataFrame({
        "folded_outcome": ks,
        "sigma": frobenius * np.cos(np.pi * ks / M),
        "probability": folded,
    })


def modal_sigma(estimate: PhaseEstimate, frobenius: float) -> float:
    table = folded_distribution(estimate, frobenius)
    return float(table["sigma"].iloc[int(table["probability"].to_numpy().argmax())])


def qsve_circuit(
    trees: KPTreeSet,
    state: QuantumState,
    bits: int,
    basis: Optional[np.ndarray] = None,
    ledger: Optional[CostLedger] = None,
    cap: Optional[int] = None,
) -> AnnotatedState:
    """Annotate each singular-basis component of ``state`` with its modal σ̄.

    ``basis`` holds right singular vectors as columns; when omitted it is
    taken from a classical SVD of the stored matrix.
    """
    m, n = trees.dims
    if state.dimension != n:
        raise InputError(f"state dimension {state.dimension} does not match matrix columns {n}")
    W = walk_operator(trees, cap=cap, ledger=ledger)
    if basis is None:
        basis, _ = singular_basis(trees.to_matrix())
    basis = np.asarray(basis, dtype=complex)
    if basis.shape != (n, n):
        raise InputError(f"basis must be {n}x{n}, got shape {basis.shape}")

    eigensystem = eigendecompose(W)
    components: List[Component] = []
    for index, beta in decompose(state, basis):
        estimate = phase_estimate(W, bits, W.embed(basis[:, index]), eigensystem=eigensystem)
        components.append(Component(beta=beta, vector_index=index, estimate=modal_sigma(estimate, W.frobenius)))

    grid_step = W.frobenius * math.pi / (1 << bits)
    if ledger is not None:
        ledger.charge_walk_applications(1 << bits)
        ledger.charge_qsve(W.frobenius, grid_step)
    logger.debug(f"Circuit QSVE: {len(components)} components, b={bits}, grid step {grid_step:.4g}")
    return AnnotatedState(
        components=tuple(components),
        basis=basis,
        grid_step=grid_step,
        grid=GRID_PHASE,
    )
