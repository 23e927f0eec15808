"""Plasmon dispersion, amplitude and limits for a charged sheet bound by a delta well.

Scaled units throughout: beta = 1, qt = q/beta, wt = omega/beta^2, hbar = 1 = 2m*.
"""
from .amplitude import amplitude_eval, build_profile, far_field, integral_residual
from .dispersion import find_root, lambda_det, matrix_elements
from .errors import DomainError, NotFound, NumericError
from .params import PhysicalParams, ScaledPoint, alpha_sigma, validate_regime
from .semiclassical import classical_dispersion, corrected_dispersion

__version__ = "0.1.0"

__all__ = [
    "PhysicalParams", "ScaledPoint", "alpha_sigma", "validate_regime",
    "find_root", "lambda_det", "matrix_elements",
    "build_profile", "amplitude_eval", "far_field", "integral_residual",
    "classical_dispersion", "corrected_dispersion",
    "DomainError", "NotFound", "NumericError",
]
