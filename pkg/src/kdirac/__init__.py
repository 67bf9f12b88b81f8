"""Exterior-form Dirac equation on Minkowski space, verified by computation."""

from .algebra import (
    MultiVector,
    central_product,
    dagger,
    e,
    hodge_star,
    star_conj,
    trace,
    volume_form,
    wedge,
)
from .dirac import QEDConfig, dirac_residual, equivalence_check, gauge_transform, lagrangian, tensor_residual
from .fields import codifferential, differential, dirac_operator
from .gamma import gamma, gamma_matrices
from .generators import GeneratorSet, default_generators, idempotent, solve_ideal_equation
from .literal import format_multivector, parse_multivector
from .scalars import EXACT, FLOAT, QComplex
from .spin import covariance_check, exp_bivector, spin_from_lorentz, vector_rep
from .suites import RunConfig, run_suite

__version__ = "0.1.0"

__all__ = [
    "EXACT",
    "FLOAT",
    "GeneratorSet",
    "MultiVector",
    "QComplex",
    "QEDConfig",
    "RunConfig",
    "central_product",
    "codifferential",
    "covariance_check",
    "dagger",
    "default_generators",
    "differential",
    "dirac_operator",
    "dirac_residual",
    "e",
    "equivalence_check",
    "exp_bivector",
    "format_multivector",
    "gamma",
    "gamma_matrices",
    "gauge_transform",
    "hodge_star",
    "idempotent",
    "lagrangian",
    "parse_multivector",
    "run_suite",
    "solve_ideal_equation",
    "spin_from_lorentz",
    "star_conj",
    "tensor_residual",
    "trace",
    "vector_rep",
    "volume_form",
    "wedge",
]
