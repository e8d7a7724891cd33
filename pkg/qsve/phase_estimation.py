# qsve/phase_estimation.py
"""
Exact statevector simulation of b-bit phase estimation.

The input is expanded in W's eigenbasis (complex Schur form, which is
diagonal for a unitary). For an eigenphase φ the register amplitude of
outcome k is (1/M)·Σ_x e^{ixφ}e^{−2πixk/M} with M = 2^b, computed with one
FFT per eigencomponent.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd
import scipy.linalg as la

from common.errors import InputError, ResourceError
from .ledger import CostLedger
from .state import QuantumState
from .walk import WalkOperator

logger = logging.getLogger(__name__)

MAX_BITS = 20
# eigencomponents whose weight is below this are not propagated
WEIGHT_ATOL = 1e-15


@dataclass(frozen=True)
class PhaseEstimate:
    """Joint distribution over (register outcome k, W-eigencomponent e)."""

    bits: int
    eigenphases: np.ndarray  # φ_e in (−π, π]
    weights: np.ndarray  # |c_e|²
    joint: np.ndarray  # shape (2^b, E)

    @property
    def grid_size(self) -> int:
        return 1 << self.bits

    @property
    def marginal(self) -> np.ndarray:
        return self.joint.sum(axis=1)

    def outcome_phase(self, k) -> np.ndarray:
        """θ̄ = 2πk/M mapped into (−π, π]."""
        theta = 2 * np.pi * np.asarray(k, dtype=float) / self.grid_size
        return np.where(theta > np.pi, theta - 2 * np.pi, theta)

    @property
    def modal_outcome(self) -> int:
        return int(np.argmax(self.marginal))

    def to_frame(self) -> pd.DataFrame:
        """One row per outcome with non-negligible probability."""
        marginal = self.marginal
        ks = np.nonzero(marginal > WEIGHT_ATOL)[0]
        return pd.DataFrame({
            "outcome": ks,
            "phase": self.outcome_phase(ks),
            "probability": marginal[ks],
        })


def eigendecompose(W: WalkOperator):
    """Eigenphases and orthonormal eigenvectors of the walk operator."""
    T, Z = la.schur(W.matrix, output="complex")
    return np.angle(np.diag(T)), Z


def phase_estimate(
    W: WalkOperator,
    bits: int,
    state,
    ledger: Optional[CostLedger] = None,
    eigensystem=None,
) -> PhaseEstimate:
    """Simulate phase estimation of W on ``state`` (a QuantumState on W's space or a raw vector)."""
    if not 1 <= int(bits) <= MAX_BITS:
        raise ResourceError(f"phase register must have 1..{MAX_BITS} bits, got {bits}")
    bits = int(bits)
    amplitudes = state.amplitudes if isinstance(state, QuantumState) else np.asarray(state, dtype=complex)
    if amplitudes.shape != (W.dimension,):
        raise InputError(f"state must have dimension {W.dimension}, got shape {amplitudes.shape}")

    phases, Z = eigensystem if eigensystem is not None else eigendecompose(W)
    coeffs = Z.conj().T @ amplitudes
    weights = np.abs(coeffs) ** 2
    live = np.nonzero(weights > WEIGHT_ATOL)[0]
    if live.size == 0:
        raise InputError("state has no overlap with the walk operator's eigenbasis")

    M = 1 << bits
    x = np.arange(M)
    joint = np.empty((M, live.size))
    for col, e in enumerate(live):
        register = np.fft.fft(np.exp(1j * x * phases[e])) / M
        joint[:, col] = weights[e] * np.abs(register) ** 2

    if ledger is not None:
        ledger.charge_walk_applications(M)
    return PhaseEstimate(bits=bits, eigenphases=phases[live], weights=weights[live], joint=joint)
