# pipeline/runner.py
"""
End-to-end pipeline run and its report.

γ is drawn (or given), |y⟩ is prepared, signed eigenvalue estimates come from
one QSVE on the shifted matrix at δ = ‖F‖*·ε/(4κ), the h rotation is applied
and post-selected. The result is compared with the normalized ridge
solution of the same (F, y, γ).
"""

import logging
import math
from dataclasses import dataclass, field, asdict
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from common.errors import InputError
from problem_model.hermitian import extract_solution
from problem_model.ridge import ridge_solve
from problem_model.types import HermitianProblem
from qsve.ledger import CostLedger
from sign_recovery.estimates import eigen_estimates
from sign_recovery.shift import frobenius_identity
from .analysis import iteration_bound
from .config import PipelineConfig
from .gamma import GammaSampler, SeedLike, check_gamma, sample_gamma
from .rotation import h, prepare_y_state, rotate_and_postselect

logger = logging.getLogger(__name__)

BAND_RTOL = 1e-12


def complex_pairs(vector: Optional[np.ndarray]) -> Optional[List[List[float]]]:
    if vector is None:
        return None
    return [[float(v.real), float(v.imag)] for v in np.asarray(vector, dtype=complex)]


@dataclass
class PipelineReport:
    w_state: np.ndarray
    w_star_state: np.ndarray
    distance: float
    p_bar: float
    p_exact: float
    gamma: float
    delta: float
    iterations_estimate: int
    ledger: Dict[str, Any]
    epsilon: float
    kappa: float
    c0: float
    N: int
    spectral_norm: float
    backend: str
    postselect_mode: str
    gamma_mode: str
    seed: int
    iteration_bound: float
    max_ratio_error: float
    instance_query_units: float
    worst_case_query_units: float
    in_band: bool
    components: List[Dict[str, Any]] = field(default_factory=list)
    acceptance_rate: Optional[float] = None
    first_success: Optional[int] = None
    embedded_from: Optional[Tuple[int, int]] = None
    extracted_w_state: Optional[np.ndarray] = None
    upper_block_weight: Optional[float] = None
    contaminated: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return self.distance <= self.epsilon

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["w_state"] = complex_pairs(self.w_state)
        data["w_star_state"] = complex_pairs(self.w_star_state)
        data["extracted_w_state"] = complex_pairs(self.extracted_w_state)
        data["embedded_from"] = list(self.embedded_from) if self.embedded_from else None
        data["ok"] = self.ok
        return data


def _gamma(problem: HermitianProblem, config: PipelineConfig, kappa: float, seed: SeedLike) -> float:
    if config.gamma is not None:
        gamma = check_gamma(config.gamma, problem.spectral_norm, kappa)
        logger.info(f"Using manual gamma={gamma:.6g}")
        return gamma
    return sample_gamma(GammaSampler.for_problem(problem.spectral_norm, kappa, seed))


def run(problem: HermitianProblem, config: PipelineConfig, ledger: Optional[CostLedger] = None) -> PipelineReport:
    ledger = ledger if ledger is not None else CostLedger()
    s = problem.spectral_norm
    if s == 0.0:
        raise InputError("F is the zero matrix")
    kappa = problem.pipeline_kappa(config.allow_null_space)
    null_threshold = s / (2 * kappa) if problem.singular else 0.0

    gamma_seed, trial_seed = config.seed_streams()
    gamma = _gamma(problem, config, kappa, gamma_seed)
    state, _ = prepare_y_state(problem)
    delta = s * config.epsilon / (4 * kappa)
    logger.info(
        f"Running pipeline: N={problem.N} kappa={kappa:.6g} epsilon={config.epsilon} "
        f"gamma={gamma:.6g} delta={delta:.4g} backend={config.backend}"
    )

    annotated = eigen_estimates(
        problem, state, delta,
        backend=config.backend,
        ledger=ledger,
        spectral_bound=config.spectral_bound,
        cap=config.circuit_cap,
    )
    rotation = rotate_and_postselect(
        annotated, gamma, config.c0,
        mode=config.postselect_mode,
        seed=trial_seed,
        trials=config.bernoulli_trials,
        ledger=ledger,
        null_threshold=null_threshold,
    )

    ridge = ridge_solve(problem.F, problem.y, gamma)
    w_star_norm = np.linalg.norm(ridge.w_star)
    if w_star_norm == 0.0:
        raise InputError("ridge solution is zero; |w*> is undefined")
    w_star_state = ridge.w_star / w_star_norm
    w = rotation.w_state.amplitudes
    distance = float(np.linalg.norm(w - w_star_state))

    exact = problem.eigenvalues[annotated.indices]
    weights = np.abs(annotated.betas) ** 2
    null = np.abs(annotated.estimates) < null_threshold
    h_exact = np.where(null, 0.0, h(exact, gamma, config.c0))
    h_bar = np.where(null, 0.0, h(annotated.estimates, gamma, config.c0))
    p_exact = math.fsum(weights * h_exact ** 2)

    ratio_errors = [abs(hb / he - 1) for hb, he in zip(h_bar, h_exact) if he != 0.0]
    live = np.abs(annotated.estimates[~null])
    in_band = bool(np.all((live >= s / kappa * (1 - BAND_RTOL)) & (live <= s * (1 + BAND_RTOL))))
    if not in_band:
        logger.info("Some eigenvalue estimates drifted outside the band [|F|*/kappa, |F|*]")

    identity = frobenius_identity(problem, config.spectral_bound)
    components = [
        {
            "index": int(c.vector_index),
            "weight": float(wt),
            "lambda": float(lam),
            "lambda_bar": float(c.estimate),
            "null_space": bool(is_null),
        }
        for c, wt, lam, is_null in zip(annotated.components, weights, exact, null)
    ]

    report = PipelineReport(
        w_state=w,
        w_star_state=w_star_state,
        distance=distance,
        p_bar=rotation.p_bar,
        p_exact=float(p_exact),
        gamma=gamma,
        delta=delta,
        iterations_estimate=rotation.iterations,
        ledger=ledger.snapshot(),
        epsilon=config.epsilon,
        kappa=float(kappa),
        c0=config.c0,
        N=problem.N,
        spectral_norm=s,
        backend=config.backend,
        postselect_mode=config.postselect_mode,
        gamma_mode=config.gamma_mode,
        seed=config.seed,
        iteration_bound=iteration_bound(gamma, kappa, s, config.c0),
        max_ratio_error=max(ratio_errors) if ratio_errors else 0.0,
        instance_query_units=identity.instance_bound / delta,
        worst_case_query_units=identity.bound / delta,
        in_band=in_band,
        components=components,
        acceptance_rate=rotation.acceptance_rate,
        first_success=rotation.first_success,
        embedded_from=problem.embedded_from,
    )

    if problem.embedded_from is not None:
        m, n = problem.embedded_from
        lower, report.contaminated = extract_solution(w, m, n)
        report.upper_block_weight = float(np.vdot(w[:m], w[:m]).real)
        lower_norm = np.linalg.norm(lower)
        report.extracted_w_state = lower / lower_norm if lower_norm > 0 else lower
        logger.info(
            f"Extracted the {n}-dim solution block of the embedded problem "
            f"(upper-block weight {report.upper_block_weight:.3e})"
        )

    if report.ok:
        logger.info(f"Pipeline finished: distance={distance:.3e} <= epsilon={config.epsilon}")
    else:
        logger.warning(f"Pipeline distance {distance:.3e} exceeds epsilon={config.epsilon}")
    return report
