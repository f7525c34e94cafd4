"""Period map and theta inversion for triple covers of the plane branched along six lines
with two triple points, and the action of the Eisenstein modular group."""

from __future__ import annotations

from .curvequad import ChainId, ConfigPoint, CurvePeriods, QuadratureSpec, curve_periods
from .errors import (
    DomainError,
    InvalidPeriodError,
    InvariantViolation,
    NonConvergenceError,
    SingularDenominatorError,
    SixLinesError,
)
from .inverse import InverseResult, iota_star, t_inverse, u_from_point, vanishing_residual, x_of_period
from .modgroup import GammaElement, GroupElement, SymplecticAffine, act_on_D, act_on_siegel, embed_jG
from .periodmap import PeriodPoint, SiegelPoint, embed_jD, forward
from .theta import ThetaChar, theta_value

__version__ = "0.1.0"

__all__ = [
    "ChainId",
    "ConfigPoint",
    "CurvePeriods",
    "DomainError",
    "GammaElement",
    "GroupElement",
    "InvalidPeriodError",
    "InvariantViolation",
    "InverseResult",
    "NonConvergenceError",
    "PeriodPoint",
    "QuadratureSpec",
    "SiegelPoint",
    "SingularDenominatorError",
    "SixLinesError",
    "SymplecticAffine",
    "ThetaChar",
    "act_on_D",
    "act_on_siegel",
    "curve_periods",
    "embed_jD",
    "embed_jG",
    "forward",
    "iota_star",
    "t_inverse",
    "theta_value",
    "u_from_point",
    "vanishing_residual",
    "x_of_period",
]
