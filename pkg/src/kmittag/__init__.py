"""Generalized k-Mittag-Leffler function, its generalized fractional derivatives in
Fox-Wright form, and quadrature oracles that check them."""

from .fracops import DerivResult, DerivSpec, Side, frac_deriv_closed, frac_deriv_monomial
from .gammakit import DomainError, k_gamma, k_pochhammer, log_gamma
from .oracles import QuadConfig, QuadratureError, frac_deriv_oracle
from .series import (
    ContractError,
    ConvergenceConditionError,
    EvalResult,
    FoxWrightSpec,
    MLParams,
    foxwright_eval,
    ml_eval,
)
from .transforms import BetaImageSpec, LaplaceImageSpec, beta_image_closed, laplace_image_closed

__version__ = "0.1.0"

__all__ = [
    "BetaImageSpec",
    "ContractError",
    "ConvergenceConditionError",
    "DerivResult",
    "DerivSpec",
    "DomainError",
    "EvalResult",
    "FoxWrightSpec",
    "LaplaceImageSpec",
    "MLParams",
    "QuadConfig",
    "QuadratureError",
    "Side",
    "beta_image_closed",
    "foxwright_eval",
    "frac_deriv_closed",
    "frac_deriv_monomial",
    "frac_deriv_oracle",
    "k_gamma",
    "k_pochhammer",
    "laplace_image_closed",
    "log_gamma",
    "ml_eval",
]
