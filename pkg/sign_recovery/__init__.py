"""
Signed eigenvalue estimation for Hermitian matrices.

The spectral shift path needs a single QSVE run; the two-matrix comparison
baseline is kept for benchmarks only.
"""

from .shift import ShiftedMatrix, FrobeniusCheck, shift, shift_amount, frobenius_identity, mean_eig_regime, offset_spectral
from .estimates import eigen_estimates, BACKENDS
from .baseline import wzp_baseline, sign_benchmark, default_mu

__all__ = [
    'ShiftedMatrix',
    'FrobeniusCheck',
    'shift',
    'shift_amount',
    'frobenius_identity',
    'mean_eig_regime',
    'offset_spectral',
    'eigen_estimates',
    'BACKENDS',
    'wzp_baseline',
    'sign_benchmark',
    'default_mu',
]
