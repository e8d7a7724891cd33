"""
Problem model package.

Fitting problems, the classical ridge-regression oracle, the Hermitian
embedding and synthetic problem generation.
"""

from .types import FitSample, DesignMatrix, RidgeSolution, SpectralData, HermitianProblem
from .ridge import ridge_solve, objective, polynomial_design, design_from_samples, fit_samples
from .hermitian import hermitian_embed, extract_solution, spectral_decompose, make_problem
from .synth import synth_problem, SIGN_PROFILES

__all__ = [
    'FitSample',
    'DesignMatrix',
    'RidgeSolution',
    'SpectralData',
    'HermitianProblem',
    'ridge_solve',
    'objective',
    'polynomial_design',
    'design_from_samples',
    'fit_samples',
    'hermitian_embed',
    'extract_solution',
    'spectral_decompose',
    'make_problem',
    'synth_problem',
    'SIGN_PROFILES',
]
