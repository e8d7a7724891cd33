# pipeline/config.py
import logging
import math
from dataclasses import dataclass, asdict
from typing import Any, Dict, Optional, Tuple

import numpy as np

from common.errors import InputError

logger = logging.getLogger(__name__)

# (1 + ε/4)/(1 − ε/4) ≤ 4/3 holds exactly when ε ≤ 4/7
EPSILON_MAX = 4.0 / 7.0

GAMMA_SAMPLED = "sampled"
GAMMA_MANUAL = "manual"
POSTSELECT_MODES = ("exact", "bernoulli", "amplify")
BACKENDS = ("ideal", "circuit")


@dataclass(frozen=True)
class PipelineConfig:
    """パイプライン実行設定"""

    epsilon: float
    c0: float = 1.0
    gamma: Optional[float] = None  # 指定時は manual モード
    backend: str = "ideal"
    postselect_mode: str = "exact"
    seed: int = 0
    bernoulli_trials: int = 10000
    allow_null_space: bool = False
    spectral_bound: Optional[float] = None
    circuit_cap: Optional[int] = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.epsilon) and 0 < self.epsilon <= EPSILON_MAX):
            raise InputError(f"epsilon must lie in (0, 4/7], got {self.epsilon}")
        if not (math.isfinite(self.c0) and 0 < self.c0 < 2):
            raise InputError(f"c0 must lie in (0, 2), got {self.c0}")
        if self.gamma is not None and not (math.isfinite(self.gamma) and self.gamma > 0):
            raise InputError(f"manual gamma must be > 0, got {self.gamma}")
        if self.backend not in BACKENDS:
            raise InputError(f"unknown backend '{self.backend}'; expected one of {BACKENDS}")
        if self.postselect_mode not in POSTSELECT_MODES:
            raise InputError(
                f"unknown postselect mode '{self.postselect_mode}'; expected one of {POSTSELECT_MODES}"
            )
        if self.bernoulli_trials < 1:
            raise InputError(f"bernoulli_trials must be >= 1, got {self.bernoulli_trials}")

    @property
    def gamma_mode(self) -> str:
        return GAMMA_MANUAL if self.gamma is not None else GAMMA_SAMPLED

    def seed_streams(self) -> Tuple[np.random.SeedSequence, np.random.SeedSequence]:
        """Independent child seeds for the γ draw and the Bernoulli trials."""
        gamma_seed, trial_seed = np.random.SeedSequence(self.seed).spawn(2)
        return gamma_seed, trial_seed

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["gamma_mode"] = self.gamma_mode
        return data
