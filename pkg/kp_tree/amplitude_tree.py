# kp_tree/amplitude_tree.py
"""
Binary prefix-sum tree over squared magnitudes of one vector.

Heap layout: node (level, index) lives at ``2**level + index``; level 0 is
the root and level ``depth`` holds the leaves. The leaf count is padded to
the next power of two with zero leaves. Each leaf also keeps a unit phase so
complex rows can be reconstructed.
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from common.errors import InputError, StateUndefinedError

logger = logging.getLogger(__name__)

TREE_RTOL = 1e-12


def depth_for(n: int) -> int:
    """⌈log₂ n⌉, with depth 0 for a single leaf."""
    if n < 1:
        raise InputError(f"tree needs at least one leaf, got {n}")
    return max(0, (n - 1).bit_length())


def unit_phase(value: complex) -> complex:
    magnitude = abs(value)
    return complex(value) / magnitude if magnitude > 0 else 1.0 + 0.0j


class AmplitudeTree:
    """Prefix-sum tree of |v_j|² with per-leaf phases."""

    def __init__(self, n: int):
        self.n = int(n)
        self.depth = depth_for(self.n)
        self.size = 1 << self.depth
        self._nodes = np.zeros(2 * self.size, dtype=np.float64)
        self._phases = np.ones(self.size, dtype=complex)

    @classmethod
    def from_vector(cls, vector) -> "AmplitudeTree":
        """Build a tree bottom-up in one pass (no cost accounting)."""
        vector = np.asarray(vector, dtype=complex)
        if vector.ndim != 1:
            raise InputError(f"vector must be 1-D, got shape {vector.shape}")
        if not np.all(np.isfinite(vector)):
            raise InputError("vector contains non-finite entries")
        tree = cls(vector.shape[0])
        tree._nodes[tree.size:tree.size + tree.n] = np.abs(vector) ** 2
        tree._phases[:tree.n] = [unit_phase(v) for v in vector]
        for heap in range(tree.size - 1, 0, -1):
            tree._nodes[heap] = tree._nodes[2 * heap] + tree._nodes[2 * heap + 1]
        tree.verify()
        return tree

    # ------------------------------------------------------------------ #
    # Read access
    # ------------------------------------------------------------------ #
    @property
    def root(self) -> float:
        return float(self._nodes[1])

    @property
    def leaves(self) -> np.ndarray:
        return self._nodes[self.size:self.size + self.n].copy()

    @property
    def phases(self) -> np.ndarray:
        return self._phases[:self.n].copy()

    @property
    def nodes(self) -> np.ndarray:
        return self._nodes.copy()

    def node_query(self, level: int, index: int, ledger=None) -> float:
        """Return the stored value of node (level, index); charges one tree query."""
        if not (0 <= level <= self.depth) or not (0 <= index < (1 << level)):
            raise InputError(f"node ({level}, {index}) is outside a depth-{self.depth} tree")
        if ledger is not None:
            ledger.charge_tree_queries(1)
        return float(self._nodes[(1 << level) + index])

    def leaf_phase(self, index: int) -> complex:
        if not 0 <= index < self.size:
            raise InputError(f"leaf {index} is outside a {self.size}-leaf tree")
        return complex(self._phases[index])

    def amplitudes(self, ledger=None) -> np.ndarray:
        """Reconstruct v/‖v‖ from node queries, descending from the root.

        Magnitudes are products of sqrt(child/parent) along each path. A child
        whose sibling covers only padding inherits the parent value without a
        query, so a vector of length n costs at most 2n − 1 queries.
        """
        root = self.node_query(0, 0, ledger)
        if root <= 0.0:
            raise StateUndefinedError("cannot prepare a state from a zero vector")
        magnitudes = np.zeros(self.n)
        stack: List[Tuple[int, int, float, float]] = [(0, 0, root, 1.0)]
        while stack:
            level, index, value, amplitude = stack.pop()
            if level == self.depth:
                magnitudes[index] = amplitude
                continue
            if value == 0.0:
                continue
            child_level = level + 1
            span = 1 << (self.depth - child_level)
            left, right = 2 * index, 2 * index + 1
            if right * span >= self.n:
                stack.append((child_level, left, value, amplitude))
                continue
            for child in (left, right):
                child_value = self.node_query(child_level, child, ledger)
                stack.append((child_level, child, child_value, amplitude * math.sqrt(child_value / value)))
        return magnitudes * self._phases[:self.n]

    # ------------------------------------------------------------------ #
    # Write access
    # ------------------------------------------------------------------ #
    def set_leaf(self, index: int, sq_mag: float, phase: complex = 1.0) -> int:
        """Write one leaf and recompute its ancestors; returns internal-node writes."""
        if not 0 <= index < self.n:
            raise InputError(f"leaf {index} is outside a length-{self.n} tree")
        if not (math.isfinite(sq_mag) and sq_mag >= 0.0):
            raise InputError(f"squared magnitude must be finite and >= 0, got {sq_mag}")
        heap = self.size + index
        self._nodes[heap] = sq_mag
        self._phases[index] = phase if sq_mag > 0.0 else 1.0 + 0.0j
        writes = 0
        heap //= 2
        while heap >= 1:
            self._nodes[heap] = self._nodes[2 * heap] + self._nodes[2 * heap + 1]
            writes += 1
            heap //= 2
        return writes

    def verify(self) -> None:
        """Check every tree invariant; raises InputError on violation."""
        for heap in range(1, self.size):
            if self._nodes[heap] != self._nodes[2 * heap] + self._nodes[2 * heap + 1]:
                raise InputError(f"internal node {heap} is not the sum of its children")
        if np.any(self._nodes < 0) or not np.all(np.isfinite(self._nodes)):
            raise InputError("tree holds negative or non-finite values")
        exact = math.fsum(self._nodes[self.size:])
        if abs(self.root - exact) > TREE_RTOL * max(exact, np.finfo(float).tiny):
            raise InputError(f"root {self.root} disagrees with compensated leaf sum {exact}")
        leaves = self._nodes[self.size:]
        live = leaves > 0
        if not np.allclose(np.abs(self._phases[live]), 1.0, rtol=0, atol=1e-12):
            raise InputError("leaf phases must have unit modulus")
        if not np.all(self._phases[~live] == 1.0):
            raise InputError("zero leaves must carry phase 1")

    def copy(self) -> "AmplitudeTree":
        other = AmplitudeTree(self.n)
        other._nodes = self._nodes.copy()
        other._phases = self._phases.copy()
        return other

    def same_as(self, other: "AmplitudeTree") -> bool:
        return (
            self.n == other.n
            and np.array_equal(self._nodes, other._nodes)
            and np.array_equal(self._phases, other._phases)
        )

    def _load_arrays(self, nodes: np.ndarray, phases: np.ndarray) -> None:
        if nodes.shape != self._nodes.shape or phases.shape != self._phases.shape:
            raise InputError("serialized tree arrays do not match the tree shape")
        self._nodes = nodes.astype(np.float64, copy=True)
        self._phases = phases.astype(complex, copy=True)
        self.verify()

    def __repr__(self) -> str:
        return f"AmplitudeTree(n={self.n}, depth={self.depth}, root={self.root:.6g})"


def node_query(tree: AmplitudeTree, level: int, index: int, ledger=None) -> float:
    return tree.node_query(level, index, ledger)
