# kp_tree/serialization.py
"""
KPTreeSet のバイナリ保存・読み込み

Layout (little-endian):
    magic   4s   b"KPTS"
    version u2
    m, n    u4, u4
    cost    u8
    per row: node array (2·size_n float64), phases (size_n × (re, im) float64)
    norm tree node array (2·size_m float64)
"""

import logging
import struct
from pathlib import Path
from typing import Union

import numpy as np

from common.errors import InputError
from .amplitude_tree import AmplitudeTree
from .tree_set import KPTreeSet

logger = logging.getLogger(__name__)

MAGIC = b"KPTS"
FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sHIIQ")
_F64 = np.dtype("<f8")


def _tree_bytes(tree: AmplitudeTree, with_phases: bool) -> bytes:
    payload = tree.nodes.astype(_F64).tobytes()
    if with_phases:
        phases = np.empty((tree.size, 2), dtype=_F64)
        full = np.ones(tree.size, dtype=complex)
        full[:tree.n] = tree.phases
        phases[:, 0] = full.real
        phases[:, 1] = full.imag
        payload += phases.tobytes()
    return payload


def dumps(trees: KPTreeSet) -> bytes:
    m, n = trees.dims
    parts = [_HEADER.pack(MAGIC, FORMAT_VERSION, m, n, trees.build_cost)]
    for tree in trees.row_trees:
        parts.append(_tree_bytes(tree, with_phases=True))
    parts.append(_tree_bytes(trees.norm_tree, with_phases=False))
    return b"".join(parts)


def loads(data: bytes) -> KPTreeSet:
    """Parse a serialized KPTreeSet; every tree invariant is checked."""
    if len(data) < _HEADER.size:
        raise InputError("tree file is truncated (no header)")
    magic, version, m, n, cost = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise InputError(f"not a tree file (magic {magic!r})")
    if version != FORMAT_VERSION:
        raise InputError(f"unsupported tree file version {version}")

    trees = KPTreeSet(m, n)
    size_n = trees.row_trees[0].size
    size_m = trees.norm_tree.size
    expected = _HEADER.size + m * (2 * size_n + 2 * size_n) * 8 + 2 * size_m * 8
    if len(data) != expected:
        raise InputError(f"tree file has {len(data)} bytes, expected {expected}")

    offset = _HEADER.size
    for tree in trees.row_trees:
        nodes = np.frombuffer(data, dtype=_F64, count=2 * size_n, offset=offset)
        offset += 2 * size_n * 8
        pairs = np.frombuffer(data, dtype=_F64, count=2 * size_n, offset=offset).reshape(size_n, 2)
        offset += 2 * size_n * 8
        tree._load_arrays(nodes, pairs[:, 0] + 1j * pairs[:, 1])
    nodes = np.frombuffer(data, dtype=_F64, count=2 * size_m, offset=offset)
    trees.norm_tree._load_arrays(nodes, np.ones(size_m, dtype=complex))
    trees.build_cost = int(cost)
    trees.verify()
    return trees


def save_tree_set(trees: KPTreeSet, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(dumps(trees))
    logger.info(f"Saved {trees.dims[0]}x{trees.dims[1]} tree set to {path}")
    return path


def load_tree_set(path: Union[str, Path]) -> KPTreeSet:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"tree file not found: {path}")
    trees = loads(path.read_bytes())
    logger.info(f"Loaded {trees.dims[0]}x{trees.dims[1]} tree set from {path}")
    return trees
