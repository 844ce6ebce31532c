"""scikit-learn transformers wrapping the closed-form evaluators.

Both transformers are stateless: ``fit`` only validates the parameters and
records the input width, and ``transform`` maps every entry of ``X``
elementwise. That lets them sit in a ``Pipeline`` as fixed feature maps.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted, validate_data

from .fracops import DerivSpec, Side, frac_deriv_closed
from .series import DEFAULT_TOL, MLParams, ml_eval

__all__ = ["MittagLefflerTransformer", "FractionalDerivativeTransformer"]


def _non_negative(X: np.ndarray) -> np.ndarray:
    if np.any(X < 0):
        raise ValueError("Negative values in data passed to the fractional derivative (x must be >= 0)")
    return X


class MittagLefflerTransformer(TransformerMixin, BaseEstimator):
    """Map each entry ``z`` of ``X`` to ``E^{vartheta,q}_{k,xi,zeta}(z)``."""

    def __init__(self, k=0.5, xi=0.5, zeta=0.2, vartheta=0.5, q=0.4, tol=DEFAULT_TOL):
        self.k = k
        self.xi = xi
        self.zeta = zeta
        self.vartheta = vartheta
        self.q = q
        self.tol = tol

    def _ml_params(self) -> MLParams:
        return MLParams(self.k, self.xi, self.zeta, self.vartheta, self.q)

    def fit(self, X, y=None):
        validate_data(self, X, dtype=np.float64)
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        self.params_ = self._ml_params()
        return self

    def transform(self, X):
        check_is_fitted(self, "params_")
        X = validate_data(self, X, dtype=np.float64, reset=False)
        out = np.empty_like(X)
        for idx, z in np.ndenumerate(X):
            r = ml_eval(self.params_, z, self.tol)
            out[idx] = r.value if r.converged else np.nan
        return out


class FractionalDerivativeTransformer(TransformerMixin, BaseEstimator):
    """Map each entry ``x >= 0`` of ``X`` to the fractional derivative of ``t^mu E(t^nu)`` at ``x``.

    ``projection`` picks the magnitude, real part or imaginary part of the
    right-sided result; for ``side='left'`` the value is real.
    Entries whose series fails to converge come out as NaN.
    """

    def __init__(
        self,
        sigma=0.1,
        eta=0.3,
        mu=0.5,
        nu=0.8,
        side="left",
        k=0.5,
        xi=0.5,
        zeta=0.2,
        vartheta=0.5,
        q=0.4,
        projection="magnitude",
        tol=DEFAULT_TOL,
    ):
        self.sigma = sigma
        self.eta = eta
        self.mu = mu
        self.nu = nu
        self.side = side
        self.k = k
        self.xi = xi
        self.zeta = zeta
        self.vartheta = vartheta
        self.q = q
        self.projection = projection
        self.tol = tol

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.positive_only = True
        return tags

    def fit(self, X, y=None):
        _non_negative(validate_data(self, X, dtype=np.float64))
        if self.projection not in ("magnitude", "real_part", "imag_part"):
            raise ValueError(f"unknown projection {self.projection!r}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        self.spec_ = DerivSpec(self.sigma, self.eta, self.mu, self.nu, Side.parse(self.side))
        self.params_ = MLParams(self.k, self.xi, self.zeta, self.vartheta, self.q)
        return self

    def transform(self, X):
        check_is_fitted(self, ("spec_", "params_"))
        X = _non_negative(validate_data(self, X, dtype=np.float64, reset=False))
        out = np.empty_like(X)
        for idx, x in np.ndenumerate(X):
            r = frac_deriv_closed(self.spec_, self.params_, x, self.tol)
            out[idx] = r.project(self.projection) if r.converged else np.nan
        return out

