"""
Regularized fitting pipeline: γ sampling, |y> preparation, signed QSVE,
conditional rotation and post-selection, plus the analysis helpers used to
check its guarantees.
"""

from .config import PipelineConfig, EPSILON_MAX, POSTSELECT_MODES
from .gamma import GammaSampler, sample_gamma, admissible_interval, check_gamma
from .rotation import h, prepare_y_state, rotate_and_postselect, RotationResult
from .runner import run, PipelineReport
from .analysis import (
    lemma3_check,
    min_h,
    MinH,
    iteration_bound,
    expected_iterations,
    h_curve,
    band_regime,
    ratio_bounds,
    RatioCheck,
    scaling_slope,
    cost_model,
)

__all__ = [
    'PipelineConfig',
    'EPSILON_MAX',
    'POSTSELECT_MODES',
    'GammaSampler',
    'sample_gamma',
    'admissible_interval',
    'check_gamma',
    'h',
    'prepare_y_state',
    'rotate_and_postselect',
    'RotationResult',
    'run',
    'PipelineReport',
    'lemma3_check',
    'min_h',
    'MinH',
    'iteration_bound',
    'expected_iterations',
    'h_curve',
    'band_regime',
    'ratio_bounds',
    'RatioCheck',
    'scaling_slope',
    'cost_model',
]
