# qsve/ledger.py
"""
Query-cost ledger.

One ledger per run; a ledger has a single writer. Every counter only grows.
"""

import logging
import math
from dataclasses import dataclass, asdict
from typing import Dict, Any

from common.errors import InputError

logger = logging.getLogger(__name__)


@dataclass
class CostLedger:
    qsve_query_units: float = 0.0
    tree_queries: int = 0
    amplification_rounds: int = 0
    tree_builds: int = 0
    walk_applications: int = 0
    qsve_calls: int = 0

    def _check(self, name: str, amount: float) -> None:
        if not (math.isfinite(amount) and amount >= 0):
            raise InputError(f"ledger charge for {name} must be finite and >= 0, got {amount}")

    def charge_qsve(self, frobenius: float, delta: float) -> float:
        """Charge one QSVE invocation at precision delta: ‖A‖_F/δ units."""
        units = float(frobenius) / float(delta)
        self._check("qsve_query_units", units)
        self.qsve_query_units += units
        self.qsve_calls += 1
        return units

    def charge_tree_queries(self, count: int = 1) -> None:
        self._check("tree_queries", count)
        self.tree_queries += int(count)

    def charge_tree_build(self, count: int = 1) -> None:
        self._check("tree_builds", count)
        self.tree_builds += int(count)

    def charge_walk_applications(self, count: int) -> None:
        self._check("walk_applications", count)
        self.walk_applications += int(count)

    def charge_amplification(self, rounds: int) -> None:
        self._check("amplification_rounds", rounds)
        self.amplification_rounds += int(rounds)

    def merge(self, other: "CostLedger") -> None:
        for key, value in asdict(other).items():
            setattr(self, key, getattr(self, key) + value)

    def snapshot(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_snapshot(cls, data: Dict[str, Any]) -> "CostLedger":
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise InputError(f"unknown ledger fields: {sorted(unknown)}")
        return cls(**data)
