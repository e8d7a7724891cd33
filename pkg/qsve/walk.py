# qsve/walk.py
"""
Walk operator W = (2PP† − I)(2QQ† − I) built from tree queries.

P: |i⟩ ↦ |i⟩ ⊗ |conj(A_i)/‖A_i‖⟩ and Q: |j⟩ ↦ |row-norm state⟩ ⊗ |j⟩, so
P†Q = A/‖A‖_F and every singular value σ of A gives eigenphases ±θ with
cos(θ/2) = σ/‖A‖_F.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from common.errors import InputError, ResourceError, StateUndefinedError
from config.settings import circuit_cap
from kp_tree.tree_set import KPTreeSet
from .ledger import CostLedger

logger = logging.getLogger(__name__)

UNITARITY_ATOL = 1e-8


@dataclass(frozen=True)
class WalkOperator:
    matrix: np.ndarray
    frobenius: float
    dims: tuple
    P: np.ndarray
    Q: np.ndarray

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[0])

    def unitarity_error(self) -> float:
        W = self.matrix
        return float(np.linalg.norm(W.conj().T @ W - np.eye(self.dimension)))

    def embed(self, vector: np.ndarray) -> np.ndarray:
        """Q|v⟩ for a column-space vector v."""
        vector = np.asarray(vector, dtype=complex)
        if vector.shape != (self.dims[1],):
            raise InputError(f"vector must have length {self.dims[1]}, got shape {vector.shape}")
        return self.Q @ vector


def check_cap(m: int, n: int, cap: Optional[int] = None) -> int:
    cap = circuit_cap() if cap is None else int(cap)
    if m * n > cap:
        raise ResourceError(
            f"circuit simulation of a {m}x{n} matrix needs dimension {m * n} > cap {cap}; "
            f"use the ideal backend or raise QDFSIM_CIRCUIT_CAP"
        )
    return cap


def walk_operator(
    trees: KPTreeSet,
    cap: Optional[int] = None,
    ledger: Optional[CostLedger] = None,
) -> WalkOperator:
    m, n = trees.dims
    check_cap(m, n, cap)
    frobenius = trees.frobenius_norm
    if frobenius == 0.0:
        raise InputError("walk operator of a zero matrix is undefined")

    dim = m * n
    P = np.zeros((dim, m), dtype=complex)
    for i in range(m):
        basis = np.zeros(m)
        basis[i] = 1.0
        try:
            row_state = trees.row_amplitudes(i, ledger).conj()
        except StateUndefinedError:
            # zero rows carry no weight in Q; any unit vector keeps P an isometry
            row_state = np.zeros(n, dtype=complex)
            row_state[0] = 1.0
        P[:, i] = np.kron(basis, row_state)

    norms = trees.norm_vector_state(ledger)
    Q = np.zeros((dim, n), dtype=complex)
    for j in range(n):
        basis = np.zeros(n)
        basis[j] = 1.0
        Q[:, j] = np.kron(norms, basis)

    identity = np.eye(dim)
    W = (2 * P @ P.conj().T - identity) @ (2 * Q @ Q.conj().T - identity)
    op = WalkOperator(matrix=W, frobenius=frobenius, dims=(m, n), P=P, Q=Q)
    error = op.unitarity_error()
    if error > UNITARITY_ATOL:
        logger.warning(f"Walk operator deviates from unitarity: |W†W - I|_F = {error:.3e}")
    logger.debug(f"Built walk operator of dimension {dim} (|A|_F = {frobenius:.6g})")
    return op
