# pipeline/gamma.py
"""
Log-uniform sampling of the regularization weight γ over [‖F‖*²/κ², ‖F‖*²].
"""

import logging
import math
from typing import Union

import numpy as np

from common.errors import InputError

logger = logging.getLogger(__name__)

RANGE_RTOL = 1e-12

SeedLike = Union[int, np.random.SeedSequence, None]


class GammaSampler:
    """Draws γ = e^t with t uniform on [ln low, ln high]."""

    def __init__(self, low: float, high: float, seed: SeedLike = 0):
        if not (math.isfinite(low) and math.isfinite(high) and 0 < low <= high):
            raise InputError(f"gamma interval must satisfy 0 < low <= high, got [{low}, {high}]")
        self.low = float(low)
        self.high = float(high)
        self.seed = seed
        self._rng = np.random.default_rng(seed)

    @classmethod
    def for_problem(cls, spectral_norm: float, kappa: float, seed: SeedLike = 0) -> "GammaSampler":
        low, high = admissible_interval(spectral_norm, kappa)
        return cls(low, high, seed)

    def sample(self) -> float:
        if self.low == self.high:
            return self.low
        t = self._rng.uniform(math.log(self.low), math.log(self.high))
        return float(min(max(math.exp(t), self.low), self.high))

    def sample_many(self, count: int) -> np.ndarray:
        if self.low == self.high:
            return np.full(count, self.low)
        t = self._rng.uniform(math.log(self.low), math.log(self.high), size=count)
        return np.clip(np.exp(t), self.low, self.high)

    def __repr__(self) -> str:
        return f"GammaSampler(low={self.low:.6g}, high={self.high:.6g}, seed={self.seed})"


def admissible_interval(spectral_norm: float, kappa: float):
    """[‖F‖*²/κ², ‖F‖*²]."""
    if not (spectral_norm > 0 and kappa >= 1 and math.isfinite(kappa)):
        raise InputError(f"need spectral_norm > 0 and finite kappa >= 1, got {spectral_norm}, {kappa}")
    high = spectral_norm ** 2
    return high / kappa ** 2, high


def check_gamma(gamma: float, spectral_norm: float, kappa: float) -> float:
    low, high = admissible_interval(spectral_norm, kappa)
    if not (low * (1 - RANGE_RTOL) <= gamma <= high * (1 + RANGE_RTOL)):
        raise InputError(f"gamma={gamma} is outside the admissible interval [{low:.6g}, {high:.6g}]")
    return float(gamma)


def sample_gamma(sampler: GammaSampler) -> float:
    gamma = sampler.sample()
    logger.info(f"Sampled gamma={gamma:.6g} from [{sampler.low:.6g}, {sampler.high:.6g}]")
    return gamma
