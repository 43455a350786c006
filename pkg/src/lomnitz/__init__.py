"""Generalized logarithmic creep and relaxation.

Creep-side material functions in closed form, integro-differential
operators with logarithmic kernels, a product-integration solver for the
relaxation Volterra equation, and Laplace-domain consistency checks,
together with a CSV-emitting command line (``lomnitz``).
"""

from .creep import (
    MaterialParameters,
    compliance,
    creep_asymptotic,
    creep_psi,
    creep_rate,
    creep_strain,
)
from .laplace import HorizonError, LaplaceProbe, check_laplace_identity, laplace_of_sampled
from .operators import (
    AccuracyWarning,
    DerivativeWarning,
    DifferentiableInput,
    OperatorConfig,
    hadamard_derivative,
    hadamard_integral,
    verify_eigenfunction,
    verify_power_law_property,
)
from .relaxation import (
    SampledFunction,
    SolverReport,
    StepSizeError,
    UniformGrid,
    kernel,
    oracle_solve,
    relaxation_asymptotic,
    solve_relaxation,
    weights,
)
from .special_functions import ConvergenceError, PoleError, gamma, log_ml, mittag_leffler

__version__ = "0.1.0"

__all__ = [
    "AccuracyWarning",
    "ConvergenceError",
    "DerivativeWarning",
    "DifferentiableInput",
    "HorizonError",
    "LaplaceProbe",
    "MaterialParameters",
    "OperatorConfig",
    "PoleError",
    "SampledFunction",
    "SolverReport",
    "StepSizeError",
    "UniformGrid",
    "check_laplace_identity",
    "compliance",
    "creep_asymptotic",
    "creep_psi",
    "creep_rate",
    "creep_strain",
    "gamma",
    "hadamard_derivative",
    "hadamard_integral",
    "kernel",
    "laplace_of_sampled",
    "log_ml",
    "mittag_leffler",
    "oracle_solve",
    "relaxation_asymptotic",
    "solve_relaxation",
    "verify_eigenfunction",
    "verify_power_law_property",
    "weights",
]
