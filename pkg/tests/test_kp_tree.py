#!/usr/bin/env python3
import os
import sys
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

# Add the project root to the Python path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from common.errors import InputError, StateUndefinedError
from kp_tree import (
    AmplitudeTree,
    build,
    depth_for,
    load_tree_set,
    node_query,
    norm_vector_state,
    row_amplitudes,
    save_tree_set,
    update_entry,
)
from kp_tree.serialization import dumps, loads
from qsve.ledger import CostLedger


def test_depth_for():
    assert depth_for(1) == 0
    assert depth_for(2) == 1
    assert depth_for(3) == 2
    assert depth_for(4) == 2
    assert depth_for(5) == 3
    with pytest.raises(InputError):
        depth_for(0)


def test_single_row_leaves_and_root():
    trees = build(np.array([[0.6, 0.8]]))
    row = trees.row_trees[0]
    assert_allclose(row.leaves, [0.36, 0.64])
    assert row.root == pytest.approx(1.0)


def test_complex_entry_stores_squared_length_and_phase():
    trees = build(np.array([[3 + 4j, 0.0]]))
    row = trees.row_trees[0]
    assert row.leaves[0] == pytest.approx(25.0)
    assert row.leaf_phase(0) == pytest.approx((3 + 4j) / 5)
    assert row.leaf_phase(1) == 1.0


def test_identity_norm_tree():
    trees = build(np.eye(2))
    assert_allclose(trees.norm_tree.leaves, [1, 1])
    assert trees.norm_tree.root == 2.0
    assert trees.frobenius_norm == pytest.approx(math.sqrt(2))


def test_node_queries():
    trees = build(np.array([[0.6, 0.8]]))
    row = trees.row_trees[0]
    ledger = CostLedger()
    assert node_query(row, 0, 0, ledger) == pytest.approx(1.0)
    assert node_query(row, 1, 1, ledger) == pytest.approx(0.64)
    assert ledger.tree_queries == 2

    four = AmplitudeTree.from_vector(np.ones(4))
    assert four.node_query(1, 0) == 2.0
    assert four.node_query(1, 1) == 2.0
    with pytest.raises(InputError):
        four.node_query(3, 0)
    with pytest.raises(InputError):
        four.node_query(1, 2)


def test_row_amplitudes_examples():
    trees = build(np.array([[0.6, 0.8], [3 + 4j, 0.0], [0.0, 0.0]]))
    assert_allclose(row_amplitudes(trees, 0), [0.6, 0.8], atol=1e-15)
    assert_allclose(row_amplitudes(trees, 1), [(3 + 4j) / 5, 0.0], atol=1e-15)
    with pytest.raises(StateUndefinedError):
        row_amplitudes(trees, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 7, 8, 13, 16])
def test_row_amplitudes_round_trip_and_query_count(n):
    rng = np.random.default_rng(n)
    row = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    trees = build(row[np.newaxis, :])
    ledger = CostLedger()
    amplitudes = trees.row_amplitudes(0, ledger)
    assert_allclose(amplitudes, row / np.linalg.norm(row), atol=1e-12)
    assert ledger.tree_queries <= 2 * n - 1


def test_norm_vector_state_examples():
    assert_allclose(norm_vector_state(build(np.eye(2))), [1 / math.sqrt(2), 1 / math.sqrt(2)])
    A = np.array([[3.0, 0.0], [0.0, 4.0]])
    assert_allclose(norm_vector_state(build(A)), [0.6, 0.8], atol=1e-15)
    with pytest.raises(StateUndefinedError):
        norm_vector_state(build(np.zeros((2, 2))))


def test_update_entry_example():
    trees = build(np.array([[0.6, 0.8]]))
    update_entry(trees, 0, 1, 0.0)
    row = trees.row_trees[0]
    assert_allclose(row.leaves, [0.36, 0.0])
    assert row.root == pytest.approx(0.36)
    assert trees.norm_tree.leaves[0] == pytest.approx(0.36)
    assert row.leaf_phase(1) == 1.0
    trees.verify()


def test_update_then_rebuild_is_identical():
    rng = np.random.default_rng(5)
    A = rng.standard_normal((4, 6)) + 1j * rng.standard_normal((4, 6))
    A[rng.random(A.shape) < 0.3] = 0.0
    trees = build(A)
    mutated = A.copy()
    for i, j in [(0, 0), (2, 5), (3, 1), (1, 4)]:
        value = complex(rng.standard_normal(), rng.standard_normal())
        mutated[i, j] = value
        trees.update_entry(i, j, value)
    mutated[2, 2] = 0.0
    trees.update_entry(2, 2, 0.0)
    assert trees.same_as(build(mutated))


def test_update_with_same_value_is_invisible():
    A = np.array([[1.0, 2j], [0.5, -1.0]])
    trees = build(A)
    before = build(A)
    trees.update_entry(0, 1, 2j)
    assert trees.same_as(before)


def test_update_rejects_out_of_range():
    trees = build(np.eye(2))
    with pytest.raises(InputError):
        trees.update_entry(2, 0, 1.0)
    with pytest.raises(InputError):
        trees.update_entry(0, 0, complex(np.inf, 0))


def test_build_cost_counts_prefix_writes():
    # cost per nonzero = ⌈log₂ n⌉ + ⌈log₂ m⌉
    for m, n in [(2, 2), (4, 8), (3, 5), (8, 16)]:
        A = np.ones((m, n))
        trees = build(A)
        assert trees.build_cost == m * n * (depth_for(n) + depth_for(m))


def test_build_cost_scales_like_nnz_log_n():
    ns = np.array([4, 8, 16, 32, 64])
    costs = np.array([build(np.ones((1, n))).build_cost for n in ns])
    nnz_log = ns * np.log2(ns)
    assert_allclose(costs / nnz_log, 1.0)


def test_tree_invariants_hold_after_build():
    rng = np.random.default_rng(9)
    A = rng.standard_normal((5, 7)) * 1e3 + 1j * rng.standard_normal((5, 7))
    trees = build(A)
    trees.verify()
    for tree in trees.row_trees:
        nodes = tree.nodes
        for heap in range(1, tree.size):
            assert nodes[heap] == nodes[2 * heap] + nodes[2 * heap + 1]
    assert_allclose(trees.to_matrix(), A, rtol=1e-12)


def test_verify_detects_corruption():
    tree = AmplitudeTree.from_vector(np.array([1.0, 2.0, 3.0]))
    broken = tree.copy()
    broken._nodes[1] += 1.0
    with pytest.raises(InputError):
        broken.verify()


def test_serialization_round_trip(tmp_path):
    rng = np.random.default_rng(1)
    A = rng.standard_normal((3, 5)) + 1j * rng.standard_normal((3, 5))
    A[1, 2] = 0.0
    trees = build(A)
    path = save_tree_set(trees, tmp_path / "trees.kpts")
    restored = load_tree_set(path)
    assert restored.same_as(trees)
    assert restored.build_cost == trees.build_cost
    assert dumps(restored) == dumps(trees)


def test_serialization_rejects_bad_data(tmp_path):
    data = dumps(build(np.eye(2)))
    with pytest.raises(InputError):
        loads(b"XXXX" + data[4:])
    with pytest.raises(InputError):
        loads(data[:-8])
    with pytest.raises(FileNotFoundError):
        load_tree_set(tmp_path / "missing.kpts")
