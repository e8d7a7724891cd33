# cli/manifest.py
"""
RunManifest: コマンド実行に必要な入力パス・設定値・スイープ軸をまとめたもの。

CLI フラグ > settings.yaml (+ .env) > 組み込み既定値 の順で値を決め、
最終的な値をレポートに記録する。
"""

import logging
import math
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Any, Dict, List, Optional

from common.errors import QDFError, InputError
from pipeline.config import PipelineConfig

logger = logging.getLogger(__name__)

COMMANDS = ("solve", "sweep", "hcurve", "bench-signs")


class ManifestError(QDFError):
    """Input files missing or not given; mapped to the I/O exit code."""


@dataclass
class RunManifest:
    command: str
    out: Path
    matrix: Optional[Path] = None
    y: Optional[Path] = None
    complex_columns: bool = False
    epsilon: float = 0.1
    kappa: Optional[float] = None
    gamma: Optional[float] = None
    c0: float = 1.0
    backend: str = "ideal"
    postselect: str = "exact"
    seed: int = 0
    bernoulli_trials: int = 10000
    circuit_cap: Optional[int] = None
    workers: int = 1
    db_path: Optional[Path] = None
    db_table: str = "sweep_runs"
    # sweep axes
    Ns: List[int] = field(default_factory=list)
    kappas: List[float] = field(default_factory=list)
    epsilons: List[float] = field(default_factory=list)
    seeds: List[int] = field(default_factory=list)
    profiles: List[str] = field(default_factory=list)
    # hcurve / bench-signs
    gammas: List[float] = field(default_factory=list)
    spectral_norm: float = 1.0
    n_points: int = 200
    delta: Optional[float] = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise InputError(f"unknown command '{self.command}'; expected one of {COMMANDS}")
        self.out = Path(self.out)
        self.matrix = Path(self.matrix) if self.matrix is not None else None
        self.y = Path(self.y) if self.y is not None else None
        self.db_path = Path(self.db_path) if self.db_path is not None else None

    def validate(self) -> "RunManifest":
        """参照ファイルの存在とスイープ軸を検査する。"""
        if self.command == "solve":
            for name in ("matrix", "y"):
                path = getattr(self, name)
                if path is None:
                    raise ManifestError(f"solve needs --{name}")
                if not path.exists():
                    raise ManifestError(f"--{name} file not found: {path}")
        if self.command == "sweep":
            for name in ("Ns", "kappas", "epsilons", "seeds", "profiles"):
                if not getattr(self, name):
                    raise InputError(f"sweep axis '{name}' is empty")
        if self.command == "hcurve":
            if not self.gammas:
                raise InputError("hcurve needs at least one gamma")
            if self.kappa is None:
                raise InputError("hcurve needs --kappa")
            if self.n_points < 2:
                raise InputError(f"n_points must be >= 2, got {self.n_points}")
        if self.command == "bench-signs" and not self.kappas:
            raise InputError("bench-signs needs at least one kappa")
        if self.kappa is not None and not (math.isfinite(self.kappa) and self.kappa >= 1):
            raise InputError(f"kappa must be >= 1, got {self.kappa}")
        if self.workers < 1:
            raise InputError(f"workers must be >= 1, got {self.workers}")
        return self

    def pipeline_config(self, epsilon: Optional[float] = None, seed: Optional[int] = None,
                        allow_null_space: bool = False) -> PipelineConfig:
        return PipelineConfig(
            epsilon=self.epsilon if epsilon is None else epsilon,
            c0=self.c0,
            gamma=self.gamma,
            backend=self.backend,
            postselect_mode=self.postselect,
            seed=self.seed if seed is None else seed,
            bernoulli_trials=self.bernoulli_trials,
            allow_null_space=allow_null_space,
            circuit_cap=self.circuit_cap,
        )

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        for key in ("out", "matrix", "y", "db_path"):
            data[key] = str(data[key]) if data[key] is not None else None
        return data

    @classmethod
    def from_args(cls, args, settings: Dict[str, Any]) -> "RunManifest":
        """argparse.Namespace と settings から manifest を組み立てる。"""
        pipeline = settings.get("pipeline", {})
        sweep = settings.get("sweep", {})
        database = settings.get("database", {})

        def pick(name: str, default: Any) -> Any:
            value = getattr(args, name, None)
            return default if value is None else value

        db_path = pick("db_path", None)
        if db_path is None and getattr(args, "store", False):
            db_path = database.get("path")

        return cls(
            command=args.command,
            out=pick("out", settings.get("output", {}).get("dir", "exports")),
            matrix=pick("matrix", None),
            y=pick("y", None),
            complex_columns=bool(getattr(args, "complex_columns", False)),
            epsilon=pick("epsilon", pipeline.get("epsilon", 0.1)),
            kappa=pick("kappa", None),
            gamma=pick("gamma", None),
            c0=pick("c0", pipeline.get("c0", 1.0)),
            backend=pick("backend", pipeline.get("backend", "ideal")),
            postselect=pick("postselect", pipeline.get("postselect", "exact")),
            seed=pick("seed", pipeline.get("seed", 0)),
            bernoulli_trials=pick("bernoulli_trials", pipeline.get("bernoulli_trials", 10000)),
            circuit_cap=settings.get("circuit", {}).get("cap"),
            workers=pick("workers", sweep.get("workers", 1)),
            db_path=db_path,
            db_table=database.get("table", "sweep_runs"),
            Ns=list(pick("N", [])),
            kappas=list(pick("kappas", [])),
            epsilons=list(pick("epsilons", [])),
            seeds=list(pick("seeds", [])),
            profiles=list(pick("profile", sweep.get("profiles", ["mixed"]))),
            gammas=list(pick("gammas", [])),
            spectral_norm=pick("spectral_norm", 1.0),
            n_points=pick("n_points", 200),
            delta=pick("delta", None),
        )
