"""Exact F-pure thresholds of quasi-homogeneous polynomials over prime fields."""

from .basep import digit, lpr, mult_order, scaled_truncation, tail, truncation
from .candidates import (
    LAMBDA,
    Candidate,
    Pair,
    acc_superset,
    almost_cy_candidates,
    digit_minimality_filter,
    lambda_of,
    main_candidates,
    two_variable_candidates,
    uniform_L_bound,
)
from .errors import (
    DimensionError,
    FpureError,
    HomogeneityError,
    InvariantViolation,
    ParseError,
    PreconditionError,
)
from .fptengine import (
    FptResult,
    NuRecord,
    fpt_exact,
    membership_test,
    nu_first,
    nu_next,
    nu_sequence,
    perturbation_report,
    verify_truncation_identity,
)
from .gradedpoly import GradedPolynomial, Grading, Polynomial, check_homogeneous, has_isolated_singularity
from .polytext import format_polynomial, parse_polynomial

__all__ = [
    "Candidate",
    "DimensionError",
    "FptResult",
    "FpureError",
    "GradedPolynomial",
    "Grading",
    "HomogeneityError",
    "InvariantViolation",
    "LAMBDA",
    "NuRecord",
    "Pair",
    "ParseError",
    "Polynomial",
    "PreconditionError",
    "acc_superset",
    "almost_cy_candidates",
    "check_homogeneous",
    "digit",
    "digit_minimality_filter",
    "format_polynomial",
    "fpt_exact",
    "has_isolated_singularity",
    "lambda_of",
    "lpr",
    "main_candidates",
    "membership_test",
    "mult_order",
    "nu_first",
    "nu_next",
    "nu_sequence",
    "parse_polynomial",
    "perturbation_report",
    "scaled_truncation",
    "tail",
    "truncation",
    "two_variable_candidates",
    "uniform_L_bound",
    "verify_truncation_identity",
]
