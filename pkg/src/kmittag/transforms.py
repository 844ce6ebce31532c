"""Beta- and Laplace-transform images of the generalized fractional derivatives.

Both transforms act on the variable ``z`` that scales the Mittag-Leffler
argument, ``t^mu E((t z)^nu)``, with the evaluation point ``x`` fixed. Term
by term the r-th power picks up ``B(l + nu r, m)`` (Beta) or
``Gamma(l + nu r) / s^(l + nu r)`` (Laplace), which adds one Fox-Wright pair
to the derivative's 2Psi2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fracops import (
    DerivResult,
    DerivSpec,
    derivative_foxwright_spec,
    derivative_prefactor,
    phase_factor,
)
from .gammakit import DomainError, log_gamma
from .oracles import QuadConfig, beta_transform_oracle, laplace_transform_oracle
from .series import (
    DEFAULT_TOL,
    FoxWrightSpec,
    MLParams,
    foxwright_eval,
)

__all__ = [
    "BetaImageSpec",
    "LaplaceImageSpec",
    "scaled_derivative",
    "beta_foxwright_spec",
    "laplace_foxwright_spec",
    "beta_image_closed",
    "laplace_image_closed",
    "beta_image_oracle",
    "laplace_image_oracle",
]


@dataclass(frozen=True)
class BetaImageSpec:
    deriv: DerivSpec
    params: MLParams
    l: float
    m: float

    def __post_init__(self) -> None:
        if not (self.l > 0 and self.m > 0):
            raise DomainError(f"Beta image needs l > 0 and m > 0, got l={self.l}, m={self.m}")


@dataclass(frozen=True)
class LaplaceImageSpec:
    """Laplace-image parameters.

    ``compat_qk`` switches the first Fox-Wright pair to ``(vartheta/k, q/k)``
    as some printed statements of the Laplace image have it, instead of ``(vartheta/k, q)`` which
    the term-by-term series actually produces.
    """

    deriv: DerivSpec
    params: MLParams
    l: float
    s: float
    compat_qk: bool = False

    def __post_init__(self) -> None:
        if not (self.l > 0 and self.s > 0):
            raise DomainError(f"Laplace image needs l > 0 and s > 0, got l={self.l}, s={self.s}")


def _arg_scale(params: MLParams) -> float:
    return params.k ** (params.q - params.xi / params.k)


def scaled_derivative(
    deriv: DerivSpec, params: MLParams, x: float, z: np.ndarray | float, tol: float = DEFAULT_TOL
) -> np.ndarray:
    """Left-sided closed-form derivative of ``t^mu E((t z)^nu)`` at ``x``, vectorized over ``z``.

    Only the Fox-Wright argument changes: ``k^(q - xi/k) (x z)^nu``.
    """
    fw = derivative_foxwright_spec(deriv, params)
    pre = derivative_prefactor(deriv, params, x)
    c = _arg_scale(params)
    zz = np.atleast_1d(np.asarray(z, dtype=float))
    out = np.empty_like(zz)
    for i, zi in enumerate(zz.ravel()):
        res = foxwright_eval(fw, c * (x * zi) ** deriv.nu, tol)
        out.flat[i] = pre * res.value if res.converged else np.nan
    return out.reshape(np.shape(z)) if np.ndim(z) else out[0]


def beta_foxwright_spec(spec: BetaImageSpec) -> FoxWrightSpec:
    base = derivative_foxwright_spec(spec.deriv, spec.params)
    nu = spec.deriv.nu
    return FoxWrightSpec(
        upper=[*base.upper, (spec.l, nu)],
        lower=[*base.lower, (spec.l + spec.m, nu)],
        label="3Psi3 Beta image",
    )


def laplace_foxwright_spec(spec: LaplaceImageSpec) -> FoxWrightSpec:
    """3Psi2 parameter set; construction fails with the offending sums if it diverges."""
    base = derivative_foxwright_spec(spec.deriv, spec.params)
    upper = list(base.upper)
    if spec.compat_qk:
        p = spec.params
        upper[0] = (p.vartheta / p.k, p.q / p.k)
    return FoxWrightSpec(
        upper=[*upper, (spec.l, spec.deriv.nu)],
        lower=list(base.lower),
        label="3Psi2 Laplace image",
    )


def _zero_or_raise(deriv: DerivSpec) -> None:
    if not deriv.x_power > 0:
        raise DomainError(
            f"x = 0 is only defined as a limit when mu - sigma*eta > 0, got {deriv.x_power}"
        )


def beta_image_closed(spec: BetaImageSpec, x: float, tol: float = DEFAULT_TOL) -> DerivResult:
    """Gamma(m) * prefactor * 3Psi3[... | k^(q - xi/k) x^nu]."""
    fw = beta_foxwright_spec(spec)
    d = spec.deriv
    phase = phase_factor(d.sigma, d.side)
    if x == 0:
        _zero_or_raise(d)
        return DerivResult(0.0, phase, foxwright_eval(fw, 0.0, tol))
    if not x > 0:
        raise DomainError(f"x must be non-negative, got {x}")
    series = foxwright_eval(fw, _arg_scale(spec.params) * x**d.nu, tol)
    magnitude = math.exp(log_gamma(spec.m)) * derivative_prefactor(d, spec.params, x) * series.value
    return DerivResult(magnitude, phase, series)


def laplace_image_closed(spec: LaplaceImageSpec, x: float, tol: float = DEFAULT_TOL) -> DerivResult:
    """prefactor / s^l * 3Psi2[... | k^(q - xi/k) (x/s)^nu]."""
    fw = laplace_foxwright_spec(spec)
    d = spec.deriv
    phase = phase_factor(d.sigma, d.side)
    if x == 0:
        _zero_or_raise(d)
        return DerivResult(0.0, phase, foxwright_eval(fw, 0.0, tol))
    if not x > 0:
        raise DomainError(f"x must be non-negative, got {x}")
    series = foxwright_eval(fw, _arg_scale(spec.params) * (x / spec.s) ** d.nu, tol)
    magnitude = derivative_prefactor(d, spec.params, x) / spec.s**spec.l * series.value
    return DerivResult(magnitude, phase, series)


def beta_image_oracle(spec: BetaImageSpec, x: float, cfg: QuadConfig = QuadConfig()) -> float:
    """Numeric Beta transform of :func:`scaled_derivative`; compares with the magnitude."""
    return beta_transform_oracle(
        lambda z: scaled_derivative(spec.deriv, spec.params, x, z), spec.l, spec.m, cfg
    )


def laplace_image_oracle(spec: LaplaceImageSpec, x: float, cfg: QuadConfig = QuadConfig()) -> float:
    """Numeric Laplace transform of ``z^(l-1)`` times :func:`scaled_derivative`."""
    return laplace_transform_oracle(
        lambda z: scaled_derivative(spec.deriv, spec.params, x, z), spec.l, spec.s, cfg
    )
