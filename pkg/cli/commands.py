# cli/commands.py
"""
サブコマンドの実装 (solve / sweep / hcurve / bench-signs)

各コマンドは RunManifest を受け取り終了コードを返す。例外は
``run_command`` が終了コードへ変換する:
    0 成功, 1 solve の distance > ε, 2 ファイル/パースエラー,
    3 入力検証エラー, 4 その他の内部エラー
"""

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict
from itertools import product
from typing import Any, Callable, Dict, List, Tuple

import numpy as np
import pandas as pd
import yaml

from common.errors import (
    HERMITIAN_RTOL,
    DataFormatError,
    InputError,
    ResourceError,
    StateUndefinedError,
)
from db.sweep_store import SweepRunStore, master_key
from exporter.report_writer import write_csv, write_json
from ingestion.matrix_loader import load_matrix, load_vector
from pipeline.analysis import (
    band_regime,
    cost_model,
    expected_iterations,
    h_curve,
    ratio_bounds,
    scaling_slope,
)
from pipeline.gamma import check_gamma
from pipeline.runner import run
from problem_model.hermitian import hermitian_embed, make_problem
from problem_model.synth import synth_problem
from qsve.ledger import CostLedger
from sign_recovery.baseline import DEFAULT_BENCH_DELTA, sign_benchmark
from sign_recovery.shift import mean_eig_regime
from .manifest import ManifestError, RunManifest

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DISTANCE = 1
EXIT_IO = 2
EXIT_VALIDATION = 3
EXIT_INTERNAL = 4

IO_ERRORS = (
    ManifestError, DataFormatError, OSError, json.JSONDecodeError, pd.errors.ParserError, yaml.YAMLError,
)
VALIDATION_ERRORS = (InputError, ResourceError, StateUndefinedError)

SWEEP_CSV_COLUMNS = [
    "N", "kappa", "epsilon", "seed", "profile", "gamma", "delta", "distance",
    "p_bar", "p_exact", "iterations", "query_units", "instance_query_units",
    "worst_case_query_units", "tree_builds", "expected_iterations", "cost", "ok",
]


def exit_code_for(exc: BaseException) -> int:
    # JSONDecodeError is a ValueError, so the I/O classes are checked first
    if isinstance(exc, IO_ERRORS):
        return EXIT_IO
    if isinstance(exc, VALIDATION_ERRORS):
        return EXIT_VALIDATION
    return EXIT_INTERNAL


def run_command(command: Callable[[RunManifest], int], manifest: RunManifest) -> int:
    try:
        return command(manifest.validate())
    except Exception as e:
        code = exit_code_for(e)
        if code == EXIT_INTERNAL:
            logger.error(f"{manifest.command} failed with an internal error: {e}", exc_info=True)
        else:
            logger.error(f"{manifest.command} failed: {e}")
        print(f"[ERROR] {type(e).__name__}: {e}")
        return code


def _is_hermitian(F: np.ndarray) -> bool:
    if F.ndim != 2 or F.shape[0] != F.shape[1]:
        return False
    return bool(np.linalg.norm(F - F.conj().T) <= HERMITIAN_RTOL * max(np.linalg.norm(F), 1.0))


# ---------------------------------------------------------------------- #
# solve
# ---------------------------------------------------------------------- #
def cmd_solve(manifest: RunManifest) -> int:
    F = load_matrix(manifest.matrix, complex_columns=manifest.complex_columns)
    y = load_vector(manifest.y, complex_columns=manifest.complex_columns)
    notes: List[str] = []

    if _is_hermitian(F):
        problem = make_problem(F, y, kappa=manifest.kappa)
        embedded = False
    else:
        m, n = F.shape
        F_tilde, y_tilde = hermitian_embed(F, y)
        note = (
            f"input matrix {m}x{n} is not Hermitian; embedded into {m + n}x{m + n}. "
            f"The solution is the lower {n}-dim block"
        )
        logger.warning(note)
        print(f"[NOTICE] {note}")
        notes.append(note)
        if manifest.kappa is not None:
            logger.warning("Declared kappa is ignored for embedded input; the nonzero-spectrum condition number is used")
            notes.append("declared kappa ignored for embedded input")
        problem = make_problem(F_tilde, y_tilde, embedded_from=(m, n))
        embedded = True

    config = manifest.pipeline_config(allow_null_space=embedded)
    report = run(problem, config)

    payload = report.to_dict()
    payload["manifest"] = manifest.to_dict()
    payload["config"] = config.to_dict()
    payload["mean_eig_regime"] = mean_eig_regime(problem)
    payload["ratio_check"] = asdict(ratio_bounds(report))
    payload["notes"] = notes
    path = write_json(payload, manifest.out / "report.json", kind="solve_report")

    status = "ok" if report.ok else "DISTANCE ABOVE EPSILON"
    print(
        f"solve: N={report.N} gamma={report.gamma:.6g} distance={report.distance:.3e} "
        f"epsilon={report.epsilon} p_bar={report.p_bar:.4g} [{status}] -> {path}"
    )
    return EXIT_OK if report.ok else EXIT_DISTANCE


# ---------------------------------------------------------------------- #
# sweep
# ---------------------------------------------------------------------- #
def _sweep_tasks(manifest: RunManifest) -> List[Tuple[int, float, float, str, int]]:
    """軸の順序どおりの直積 (N, κ, ε, profile, seed)。"""
    return list(product(manifest.Ns, manifest.kappas, manifest.epsilons, manifest.profiles, manifest.seeds))


def _sweep_row(manifest: RunManifest, task: Tuple[int, float, float, str, int]) -> Dict[str, Any]:
    N, kappa, epsilon, profile, seed = task
    problem = synth_problem(seed, N, kappa, profile)
    ledger = CostLedger()
    report = run(problem, manifest.pipeline_config(epsilon=epsilon, seed=seed), ledger)
    mean_iterations = expected_iterations(kappa)[1] if kappa > 1 else 1.0
    return {
        "N": int(N),
        "kappa": float(kappa),
        "epsilon": float(epsilon),
        "seed": int(seed),
        "profile": profile,
        "gamma": report.gamma,
        "delta": report.delta,
        "distance": report.distance,
        "p_bar": report.p_bar,
        "p_exact": report.p_exact,
        "iterations": report.iterations_estimate,
        "query_units": ledger.qsve_query_units,
        "instance_query_units": report.instance_query_units,
        "worst_case_query_units": report.worst_case_query_units,
        "tree_builds": ledger.tree_builds,
        "expected_iterations": mean_iterations,
        "cost": ledger.qsve_query_units * mean_iterations,
        "ok": report.ok,
        "ledger": ledger.snapshot(),
    }


def _slope(runs: pd.DataFrame, axis: str, column: str):
    means = runs.groupby(axis, sort=True)[column].mean()
    if len(means) < 2:
        return None
    return scaling_slope(means.index.to_numpy(dtype=float), means.to_numpy(dtype=float))


def sweep_summary(runs: pd.DataFrame) -> Dict[str, Any]:
    worst = runs.loc[runs["distance"].idxmax()]
    return {
        "runs": int(len(runs)),
        "all_ok": bool(runs["ok"].all()),
        "failures": int((~runs["ok"]).sum()),
        "max_distance": float(runs["distance"].max()),
        "worst_run": master_key(worst["N"], worst["kappa"], worst["epsilon"], worst["seed"], worst["profile"]),
        "slope_query_units_vs_N": _slope(runs, "N", "query_units"),
        "slope_cost_vs_kappa": _slope(runs, "kappa", "cost"),
        "cost_model": [
            cost_model(int(N), float(kappa), float(eps))
            for N, kappa, eps in runs[["N", "kappa", "epsilon"]].drop_duplicates().itertuples(index=False)
        ],
    }


def cmd_sweep(manifest: RunManifest) -> int:
    tasks = _sweep_tasks(manifest)
    logger.info(f"Sweep: {len(tasks)} runs with {manifest.workers} worker(s)")

    if manifest.workers > 1:
        # map() yields in submission order, so rows follow axis order
        with ThreadPoolExecutor(max_workers=manifest.workers) as executor:
            rows = list(executor.map(lambda t: _sweep_row(manifest, t), tasks))
    else:
        rows = [_sweep_row(manifest, t) for t in tasks]

    runs = pd.DataFrame(rows, columns=SWEEP_CSV_COLUMNS)
    csv_path = write_csv(runs, manifest.out / "sweep.csv")
    summary = sweep_summary(runs)
    total = CostLedger()
    for row in rows:
        total.merge(CostLedger.from_snapshot(row["ledger"]))
    summary["total_ledger"] = total.snapshot()
    summary["manifest"] = manifest.to_dict()
    write_json(summary, manifest.out / "sweep_summary.json", kind="sweep_summary")

    if not summary["all_ok"]:
        logger.warning(f"{summary['failures']} sweep run(s) exceeded epsilon")

    if manifest.db_path is not None:
        with SweepRunStore(manifest.db_path, table_name=manifest.db_table) as store:
            inserted = store.save_runs(runs, command="sweep")
        print(f"sweep: stored {inserted} new row(s) in {manifest.db_path}")

    print(
        f"sweep: {summary['runs']} runs, max distance {summary['max_distance']:.3e}, "
        f"failures {summary['failures']} -> {csv_path}"
    )
    return EXIT_OK


# ---------------------------------------------------------------------- #
# hcurve
# ---------------------------------------------------------------------- #
def _dedupe(values: List[float]) -> List[float]:
    unique: List[float] = []
    for v in values:
        if float(v) not in unique:
            unique.append(float(v))
    if len(unique) < len(values):
        logger.warning(f"Removed {len(values) - len(unique)} duplicate gamma value(s)")
    return unique


def hcurve_frame(gammas: List[float], spectral_norm: float, kappa: float, n_points: int, c0: float = 1.0) -> pd.DataFrame:
    """One |h| column per γ on a shared |λ| grid."""
    frame = None
    for gamma in gammas:
        curve = h_curve(gamma, spectral_norm, kappa, n_points, c0)
        if frame is None:
            frame = curve[["abs_lambda", "in_band"]].copy()
        frame[f"abs_h_gamma_{gamma:.6g}"] = curve["abs_h"].to_numpy()
    return frame


def cmd_hcurve(manifest: RunManifest) -> int:
    gammas = _dedupe(manifest.gammas)
    for gamma in gammas:
        check_gamma(gamma, manifest.spectral_norm, manifest.kappa)

    frame = hcurve_frame(gammas, manifest.spectral_norm, manifest.kappa, manifest.n_points, manifest.c0)
    path = write_csv(frame, manifest.out / "hcurve.csv")
    regimes = {f"{g:.6g}": band_regime(g, manifest.spectral_norm, manifest.kappa) for g in gammas}
    write_json(
        {
            "gammas": gammas,
            "regimes": regimes,
            "spectral_norm": manifest.spectral_norm,
            "kappa": manifest.kappa,
            "c0": manifest.c0,
            "n_points": manifest.n_points,
        },
        manifest.out / "hcurve_summary.json",
        kind="hcurve_summary",
    )
    print(f"hcurve: {len(gammas)} series ({', '.join(regimes.values())}) -> {path}")
    return EXIT_OK


# ---------------------------------------------------------------------- #
# bench-signs
# ---------------------------------------------------------------------- #
def cmd_bench_signs(manifest: RunManifest) -> int:
    N = manifest.Ns[0] if manifest.Ns else 8
    delta = manifest.delta if manifest.delta is not None else DEFAULT_BENCH_DELTA
    profile = manifest.profiles[0] if manifest.profiles else "mixed"
    table = sign_benchmark(manifest.kappas, N=N, delta=delta, seed=manifest.seed,
                           backend=manifest.backend, profile=profile)

    shift_rows = table[table["method"] == "spectral_shift"]
    wzp_rows = table[table["method"] == "wzp"]
    payload = {
        "parameters": {"N": N, "delta": delta, "seed": manifest.seed, "backend": manifest.backend,
                       "profile": profile, "kappas": [float(k) for k in manifest.kappas]},
        "rows": table.to_dict(orient="records"),
        "spectral_shift_sign_errors": int(shift_rows["sign_errors"].sum()),
        "wzp_sign_errors": int(wzp_rows["sign_errors"].sum()),
        "wzp_unreliable_kappas": [float(k) for k in wzp_rows.loc[~wzp_rows["reliable"], "kappa"]],
    }
    path = write_json(payload, manifest.out / "bench_signs.json", kind="sign_benchmark")
    print(
        f"bench-signs: spectral-shift sign errors {payload['spectral_shift_sign_errors']}, "
        f"wzp sign errors {payload['wzp_sign_errors']}, "
        f"wzp unreliable at kappa {payload['wzp_unreliable_kappas']} -> {path}"
    )
    return EXIT_OK


COMMAND_TABLE: Dict[str, Callable[[RunManifest], int]] = {
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "hcurve": cmd_hcurve,
    "bench-signs": cmd_bench_signs,
}
