"""
OPA Helper 数值核心模块
"""

from .errors import (
    ConditioningError,
    ConvergenceError,
    DomainError,
    InputError,
    NoExtremalError,
    OpaError,
)
from .weights import WeightSequence, bergman, custom, dirichlet, hardy, load_custom_weights, parse_space
from .series import CoeffSeries
from .gram import Approximant, first_order_zero, optimal_approximant
from .jacobi import NormEstimate, extremal_coeffs, norm_estimate, point_spectrum_above_2, truncated_norm
from .roots import RootSet, poly_roots
from .jentzsch import MultiZeroReport, ZeroStats, jentzsch_sweep, multi_zero_example
from .verify import SUITES, SuiteVerdict, run_suite

__all__ = [
    'OpaError',
    'InputError',
    'DomainError',
    'NoExtremalError',
    'ConditioningError',
    'ConvergenceError',
    'WeightSequence',
    'hardy',
    'dirichlet',
    'bergman',
    'custom',
    'load_custom_weights',
    'parse_space',
    'CoeffSeries',
    'Approximant',
    'optimal_approximant',
    'first_order_zero',
    'NormEstimate',
    'norm_estimate',
    'truncated_norm',
    'extremal_coeffs',
    'point_spectrum_above_2',
    'RootSet',
    'poly_roots',
    'ZeroStats',
    'MultiZeroReport',
    'jentzsch_sweep',
    'multi_zero_example',
    'SUITES',
    'SuiteVerdict',
    'run_suite',
]
