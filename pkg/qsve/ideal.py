# qsve/ideal.py
"""
Ideal QSVE backend.

Attaches quantize(σ_j, δ) to every eigenbasis component. Deterministic and
exact up to the quantization, so large sweeps stay cheap.
"""

import logging
import math
from typing import Optional

import numpy as np

from common.errors import InputError, require_positive
from problem_model.types import SpectralData
from .ledger import CostLedger
from .state import QuantumState, AnnotatedState, Component, decompose, GRID_UNIFORM

logger = logging.getLogger(__name__)

TIE_ATOL = 1e-9


def quantize(value: float, delta: float) -> float:
    """round-half-away-from-zero(value/δ)·δ.

    Ties are detected with a fixed window on the fractional part so that
    e.g. 0.95/0.1, which is 9.4999… in binary, still rounds to 10.
    """
    delta = require_positive(delta, "delta")
    steps = float(value) / delta
    magnitude = abs(steps)
    base = math.floor(magnitude)
    rounded = base + 1 if magnitude - base >= 0.5 - TIE_ATOL else base
    return math.copysign(rounded, steps) * delta if rounded else 0.0


def qsve_ideal(
    spectral: SpectralData,
    state: QuantumState,
    delta: float,
    ledger: Optional[CostLedger] = None,
) -> AnnotatedState:
    """Annotate each component with σ̄_j = quantize(σ_j, δ); σ_j = |λ_j|."""
    delta = require_positive(delta, "delta")
    if state.dimension != spectral.dimension:
        raise InputError(
            f"state dimension {state.dimension} does not match matrix dimension {spectral.dimension}"
        )
    singular_values = np.abs(spectral.values)
    components = [
        Component(beta=beta, vector_index=index, estimate=quantize(singular_values[index], delta))
        for index, beta in decompose(state, spectral.vectors)
    ]
    if ledger is not None:
        ledger.charge_qsve(spectral.frobenius_norm, delta)
    logger.debug(f"Ideal QSVE: {len(components)} components at delta={delta:.4g}")
    return AnnotatedState(
        components=tuple(components),
        basis=spectral.vectors,
        grid_step=delta,
        grid=GRID_UNIFORM,
    )
