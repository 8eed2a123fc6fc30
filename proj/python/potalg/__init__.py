"""Python bindings for the potalg library."""

from ._potalg import (
    ConvergenceError,
    DomainError,
    Error,
    Family,
    NumericalFailure,
    ParameterError,
    PotentialParams,
    RangeError,
    UsageError,
    ValidationReport,
    casimir_potential,
    converge_spectrum,
    default_samples,
    eigen_complex_tridiagonal,
    eigen_real_tridiagonal,
    energy_closed_form,
    energy_from_remainders,
    evaluate_potential,
    jacobi_poly,
    potential_conventional,
    potential_rational,
    residual_report,
    shape_invariance,
    superpotential,
    validate_params,
)

__version__ = "0.1.0"
