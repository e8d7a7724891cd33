# qsve/state.py
"""
Quantum states handled by the QSVE backends.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from common.errors import InputError, StateUndefinedError, NORMALIZATION_ATOL

logger = logging.getLogger(__name__)

GRID_UNIFORM = "uniform"
GRID_PHASE = "phase"
GRID_ATOL = 1e-9
# eigenbasis coefficients at or below this magnitude are not annotated
COMPONENT_ATOL = 1e-14


def _readonly(array, dtype=complex) -> np.ndarray:
    arr = np.array(array, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class QuantumState:
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.shape[0] < 1:
            raise InputError(f"state amplitudes must be a non-empty 1-D array, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise InputError("state amplitudes contain non-finite entries")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > NORMALIZATION_ATOL:
            raise InputError(f"state is not normalized: sum |a|^2 = {norm_sq:.12g}")
        object.__setattr__(self, "amplitudes", _readonly(amps))

    @classmethod
    def from_vector(cls, vector) -> "QuantumState":
        vec = np.asarray(vector, dtype=complex)
        norm = np.linalg.norm(vec)
        if norm == 0.0:
            raise StateUndefinedError("cannot normalize a zero vector into a state")
        return cls(vec / norm)

    @property
    def dimension(self) -> int:
        return int(self.amplitudes.shape[0])

    def coefficients(self, basis: np.ndarray) -> np.ndarray:
        """β_i = ⟨v_i|ψ⟩ for the columns v_i of ``basis``."""
        if basis.shape[0] != self.dimension:
            raise InputError(
                f"state dimension {self.dimension} does not match basis dimension {basis.shape[0]}"
            )
        return basis.conj().T @ self.amplitudes


@dataclass(frozen=True)
class Component:
    beta: complex
    vector_index: int
    estimate: float


@dataclass(frozen=True)
class AnnotatedState:
    """Σ_j β_j |v_j⟩|estimate_j⟩.

    With ``grid == "uniform"`` every estimate equals grid_offset + k·grid_step
    for an integer k. Circuit estimates live on a cosine grid (``"phase"``);
    grid_step is then its widest spacing.
    """

    components: Tuple[Component, ...]
    basis: np.ndarray
    grid_step: float
    grid: str = GRID_UNIFORM
    grid_offset: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "basis", _readonly(self.basis))
        if not self.components:
            raise InputError("annotated state has no components")
        if not (math.isfinite(self.grid_step) and self.grid_step > 0):
            raise InputError(f"grid_step must be > 0, got {self.grid_step}")
        if self.grid not in (GRID_UNIFORM, GRID_PHASE):
            raise InputError(f"unknown grid kind '{self.grid}'")
        weight = math.fsum(abs(c.beta) ** 2 for c in self.components)
        if abs(weight - 1.0) > NORMALIZATION_ATOL:
            raise InputError(f"annotated state is not normalized: sum |beta|^2 = {weight:.12g}")
        if self.grid == GRID_UNIFORM:
            for c in self.components:
                steps = (c.estimate - self.grid_offset) / self.grid_step
                if abs(steps - round(steps)) > GRID_ATOL * max(1.0, abs(steps)):
                    raise InputError(
                        f"estimate {c.estimate} is not on the grid "
                        f"{self.grid_offset} + k*{self.grid_step}"
                    )

    @property
    def betas(self) -> np.ndarray:
        return np.array([c.beta for c in self.components], dtype=complex)

    @property
    def estimates(self) -> np.ndarray:
        return np.array([c.estimate for c in self.components], dtype=float)

    @property
    def indices(self) -> List[int]:
        return [c.vector_index for c in self.components]

    def vectors(self) -> np.ndarray:
        """Basis vectors of the annotated components, one per column."""
        return self.basis[:, self.indices]

    def with_estimates(self, estimates, grid_offset: float = 0.0) -> "AnnotatedState":
        """Same betas and basis with new estimates (used after a spectral shift)."""
        estimates = list(estimates)
        if len(estimates) != len(self.components):
            raise InputError("one estimate per component is required")
        components = tuple(
            Component(c.beta, c.vector_index, float(e)) for c, e in zip(self.components, estimates)
        )
        return AnnotatedState(
            components=components,
            basis=self.basis,
            grid_step=self.grid_step,
            grid=self.grid,
            grid_offset=grid_offset,
        )


def decompose(state: QuantumState, basis: np.ndarray) -> List[Tuple[int, complex]]:
    """Return (index, β) for every basis vector the state overlaps."""
    betas = state.coefficients(basis)
    return [(int(i), complex(b)) for i, b in enumerate(betas) if abs(b) > COMPONENT_ATOL]
