"""
QSVE simulation: quantum states, the cost ledger and two backends
(ideal quantization and phase estimation on the walk operator).
"""

from .state import QuantumState, AnnotatedState, Component, decompose, GRID_UNIFORM, GRID_PHASE
from .ledger import CostLedger
from .ideal import quantize, qsve_ideal
from .walk import WalkOperator, walk_operator, check_cap
from .phase_estimation import PhaseEstimate, phase_estimate, MAX_BITS
from .circuit import qsve_circuit, bits_for_precision, folded_distribution, modal_sigma

__all__ = [
    'QuantumState',
    'AnnotatedState',
    'Component',
    'decompose',
    'GRID_UNIFORM',
    'GRID_PHASE',
    'CostLedger',
    'quantize',
    'qsve_ideal',
    'WalkOperator',
    'walk_operator',
    'check_cap',
    'PhaseEstimate',
    'phase_estimate',
    'MAX_BITS',
    'qsve_circuit',
    'bits_for_precision',
    'folded_distribution',
    'modal_sigma',
]
