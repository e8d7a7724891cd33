"""
Binary-tree storage granting row-state access to a matrix.
"""

from .amplitude_tree import AmplitudeTree, node_query, depth_for
from .tree_set import KPTreeSet, build, row_amplitudes, norm_vector_state, update_entry
from .serialization import save_tree_set, load_tree_set, dumps, loads

__all__ = [
    'AmplitudeTree',
    'node_query',
    'depth_for',
    'KPTreeSet',
    'build',
    'row_amplitudes',
    'norm_vector_state',
    'update_entry',
    'save_tree_set',
    'load_tree_set',
    'dumps',
    'loads',
]
