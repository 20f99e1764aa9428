"""Exact self-similar growth patterns in the half plane.

Conformal-map families for one- and two-petal patterns, the residual checks
that certify them (oscillator equation, boundary dynamics, Darcy kinematics,
integral identities), conserved quantities, and a parameter-sweep classifier.
"""

from .maps import (
    BoundaryTrace,
    CornerPreimageError,
    InversionError,
    LaurentCoefficients,
    MapDomainError,
    MapFamily,
    TimeState,
    boundary_trace,
    evaluate_map,
    invert_map,
    laurent_coefficients,
    map_derivative,
    one_petal_map,
    potential_V,
    pressure,
    scaled_map,
    two_petal_map,
    z_of_p,
)
from .numerics import (
    Contour,
    NonFiniteIntegrandError,
    PowerLawFit,
    circle_contour,
    contour_quadrature,
    fit_power_law,
    polyline_area,
    segment_contour,
    singular_endpoint_quadrature,
    winding_number,
)
from .special_functions import (
    Hyp2F1ConvergenceError,
    Hyp2F1DomainError,
    Hyp2F1Params,
    branch_power,
    gauss_2f1,
    log_gamma,
)
from .verify import (
    CheckResult,
    DegenerateTraceError,
    MFunctionSample,
    RatioEstimate,
    SweepResult,
    SweepRow,
    VerificationError,
    VerificationReport,
    conformality_check,
    corner_exponent,
    darcy_check,
    dynamical_residual,
    estimate_A,
    harmonic_moment,
    harmonic_moment_area,
    integral_equation_residual,
    m_plus_cauchy,
    m_plus_samples,
    m_plus_time_derivative,
    ode_residual,
    petal_width,
    run_standard_checks,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryTrace",
    "CheckResult",
    "Contour",
    "CornerPreimageError",
    "DegenerateTraceError",
    "Hyp2F1ConvergenceError",
    "Hyp2F1DomainError",
    "Hyp2F1Params",
    "InversionError",
    "LaurentCoefficients",
    "MFunctionSample",
    "MapDomainError",
    "MapFamily",
    "NonFiniteIntegrandError",
    "PowerLawFit",
    "RatioEstimate",
    "SweepResult",
    "SweepRow",
    "TimeState",
    "VerificationError",
    "VerificationReport",
    "boundary_trace",
    "branch_power",
    "circle_contour",
    "conformality_check",
    "contour_quadrature",
    "corner_exponent",
    "darcy_check",
    "dynamical_residual",
    "estimate_A",
    "evaluate_map",
    "fit_power_law",
    "gauss_2f1",
    "harmonic_moment",
    "harmonic_moment_area",
    "integral_equation_residual",
    "invert_map",
    "laurent_coefficients",
    "log_gamma",
    "m_plus_cauchy",
    "m_plus_samples",
    "m_plus_time_derivative",
    "map_derivative",
    "ode_residual",
    "one_petal_map",
    "petal_width",
    "polyline_area",
    "potential_V",
    "pressure",
    "run_standard_checks",
    "scaled_map",
    "segment_contour",
    "singular_endpoint_quadrature",
    "sweep",
    "two_petal_map",
    "winding_number",
    "z_of_p",
]
