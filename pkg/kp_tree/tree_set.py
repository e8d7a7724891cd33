# kp_tree/tree_set.py
"""
Row trees plus the row-norm tree for a complex m×n matrix.

Row i's tree gives the state A_i/‖A_i‖; the norm tree, whose leaf i holds
‖A_i‖², gives (‖A_1‖, …, ‖A_m‖)/‖A‖_F. Readers may share a set; writers
(update_entry) need exclusive access.
"""

import logging
import math
from typing import List, Tuple

import numpy as np

from common.errors import InputError, StateUndefinedError, require_finite
from .amplitude_tree import AmplitudeTree, unit_phase

logger = logging.getLogger(__name__)


class KPTreeSet:
    def __init__(self, m: int, n: int):
        if m < 1 or n < 1:
            raise InputError(f"matrix dimensions must be positive, got ({m}, {n})")
        self.dims: Tuple[int, int] = (int(m), int(n))
        self.row_trees: List[AmplitudeTree] = [AmplitudeTree(n) for _ in range(m)]
        self.norm_tree = AmplitudeTree(m)
        self.build_cost = 0

    @property
    def m(self) -> int:
        return self.dims[0]

    @property
    def n(self) -> int:
        return self.dims[1]

    @property
    def frobenius_norm(self) -> float:
        return math.sqrt(self.norm_tree.root)

    def update_entry(self, i: int, j: int, value: complex) -> None:
        """Overwrite A_ij and repair both ancestor paths."""
        m, n = self.dims
        if not (0 <= i < m and 0 <= j < n):
            raise InputError(f"entry ({i}, {j}) is outside a {m}x{n} matrix")
        value = complex(value)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise InputError(f"entry ({i}, {j}) is not finite: {value}")
        row = self.row_trees[i]
        writes = row.set_leaf(j, abs(value) ** 2, unit_phase(value))
        writes += self.norm_tree.set_leaf(i, row.root)
        self.build_cost += writes

    def row_amplitudes(self, i: int, ledger=None) -> np.ndarray:
        if not 0 <= i < self.m:
            raise InputError(f"row {i} is outside a matrix with {self.m} rows")
        try:
            return self.row_trees[i].amplitudes(ledger)
        except StateUndefinedError:
            raise StateUndefinedError(f"row {i} is zero; its state is undefined") from None

    def norm_vector_state(self, ledger=None) -> np.ndarray:
        try:
            return self.norm_tree.amplitudes(ledger).real
        except StateUndefinedError:
            raise StateUndefinedError("matrix is zero; the row-norm state is undefined") from None

    def to_matrix(self) -> np.ndarray:
        """Dense matrix recovered from the leaves (for checks and serialization tests)."""
        return np.array([np.sqrt(t.leaves) * t.phases for t in self.row_trees])

    def verify(self) -> None:
        for tree in self.row_trees:
            tree.verify()
        self.norm_tree.verify()
        for i, tree in enumerate(self.row_trees):
            if self.norm_tree.leaves[i] != tree.root:
                raise InputError(f"norm tree leaf {i} does not match row {i}'s root")

    def same_as(self, other: "KPTreeSet") -> bool:
        return (
            self.dims == other.dims
            and self.norm_tree.same_as(other.norm_tree)
            and all(a.same_as(b) for a, b in zip(self.row_trees, other.row_trees))
        )

    def __repr__(self) -> str:
        return f"KPTreeSet(dims={self.dims}, build_cost={self.build_cost})"


def build(A) -> KPTreeSet:
    """Insert every nonzero entry of A in row-major order.

    build_cost counts prefix-sum node writes: ⌈log₂ n⌉ + ⌈log₂ m⌉ per
    nonzero entry.
    """
    A = require_finite(A, "A")
    if A.ndim != 2:
        raise InputError(f"A must be 2-D, got shape {A.shape}")
    m, n = A.shape
    trees = KPTreeSet(m, n)
    rows, cols = np.nonzero(A)
    for i, j in zip(rows, cols):
        trees.update_entry(int(i), int(j), A[i, j])
    trees.verify()
    logger.debug(f"Built tree set for {m}x{n} matrix: nnz={len(rows)} build_cost={trees.build_cost}")
    return trees


def row_amplitudes(trees: KPTreeSet, i: int, ledger=None) -> np.ndarray:
    return trees.row_amplitudes(i, ledger)


def norm_vector_state(trees: KPTreeSet, ledger=None) -> np.ndarray:
    return trees.norm_vector_state(ledger)


def update_entry(trees: KPTreeSet, i: int, j: int, value: complex) -> None:
    trees.update_entry(i, j, value)
