"""Python face of the skewlab core: coupled Anosov / circle-map laboratories."""

from ._core import (
    AssumptionError,
    ConfigError,
    Error,
    NonConvergence,
    SystemSpec,
    apply,
    cc_sufficient,
    central_exponent,
    check_assumptions,
    cone_check,
    eigen_data,
    fiber_deriv,
    fiber_eval,
    inverse_apply,
    jacobian,
    lyapunov_spectrum,
    min_jacobian_det,
    rotation_eval,
)

__all__ = [
    "AssumptionError",
    "ConfigError",
    "Error",
    "NonConvergence",
    "SystemSpec",
    "apply",
    "cc_sufficient",
    "central_exponent",
    "check_assumptions",
    "cone_check",
    "eigen_data",
    "fiber_deriv",
    "fiber_eval",
    "inverse_apply",
    "jacobian",
    "lyapunov_spectrum",
    "min_jacobian_det",
    "rotation_eval",
]
