"""Brute-force numerical evaluators used to check the closed forms.

Nothing in here touches the Fox-Wright machinery: the fractional integral is
done by quadrature straight from its definition, the outer derivative by
finite differences, and the Beta and Laplace transforms by weighted
Gaussian rules.

Integrands met here carry fractional powers ``z^(a + b r)`` at the left
endpoint, which ruin the spectral convergence of a plain Gauss rule. Every
rule on ``[0, 1]`` is therefore applied after the grading ``z = w^p``, which
turns those powers into high-order smooth ones while the ``(1 - z)^b``
singularity at the right endpoint stays in the Jacobi weight.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi, roots_laguerre

from .fracops import DerivSpec
from .gammakit import DomainError
from .series import MLParams, ml_eval_array

__all__ = [
    "QuadratureError",
    "QuadConfig",
    "graded_jacobi_rule",
    "fd_derivative",
    "frac_integral_oracle",
    "frac_deriv_oracle_fn",
    "frac_deriv_oracle",
    "beta_transform_oracle",
    "laplace_transform_oracle",
]

ArrayFunction = Callable[[np.ndarray], np.ndarray]


class QuadratureError(ArithmeticError):
    """Quadrature produced non-finite samples or failed to settle under refinement."""


@dataclass(frozen=True)
class QuadConfig:
    jacobi_nodes: int = 64
    adaptive_tol: float = 1e-10
    fd_step: float = 1e-5
    laguerre_nodes: int = 64
    grading: int = 5
    max_doublings: int = 4

    def __post_init__(self) -> None:
        if self.jacobi_nodes < 16:
            raise ValueError(f"jacobi_nodes must be >= 16, got {self.jacobi_nodes}")
        if self.laguerre_nodes < 32:
            raise ValueError(f"laguerre_nodes must be >= 32, got {self.laguerre_nodes}")
        if not self.adaptive_tol >= 1e-12:
            raise ValueError(f"adaptive_tol must be >= 1e-12, got {self.adaptive_tol}")
        if not 1e-7 <= self.fd_step <= 1e-3:
            raise ValueError(f"fd_step must lie in [1e-7, 1e-3], got {self.fd_step}")
        if self.grading < 1:
            raise ValueError(f"grading must be a positive integer, got {self.grading}")


# ---------------------------------------------------------------------------
# rules


def graded_jacobi_rule(
    n: int, left: float, right: float, grading: int = 1
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes ``z`` and weights ``w`` on (0, 1) with sum w h(z) ~ int z^left (1-z)^right h(z) dz.

    With ``grading = p > 1`` the rule is built in ``w`` where ``z = w^p``::

        int_0^1 w^(p(left+1)-1) (1-w)^right * p ((1-w^p)/(1-w))^right h(w^p) dw

    The factor ``(1-w^p)/(1-w) = 1 + w + ... + w^(p-1)`` is smooth and positive.
    """
    if left <= -1 or right <= -1:
        raise ValueError(f"Jacobi exponents must exceed -1, got left={left}, right={right}")
    p = int(grading)
    beta = p * (left + 1.0) - 1.0
    # scipy's weight on [-1, 1] is (1-t)^alpha (1+t)^beta; map w = (1+t)/2
    t, wt = roots_jacobi(n, right, beta)
    w = 0.5 * (1.0 + t)
    wt = wt * 0.5 ** (right + beta + 1.0)
    if p == 1:
        return w, wt
    geom = np.polynomial.polynomial.polyval(w, np.ones(p))
    return w**p, wt * p * geom**right


def _check_finite(values: np.ndarray, what: str) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise QuadratureError(f"non-finite integrand sample in {what}")
    return values


def _refine(rule: Callable[[int], float], n0: int, cfg: QuadConfig, what: str) -> float:
    """Evaluate ``rule`` at n0, 2 n0, ... until successive values agree to adaptive_tol."""
    n = n0
    prev = rule(n)
    change = math.inf
    for _ in range(cfg.max_doublings):
        n *= 2
        cur = rule(n)
        change = abs(cur - prev)
        if change <= cfg.adaptive_tol * max(abs(cur), 1e-300):
            return cur
        prev = cur
    raise QuadratureError(
        f"{what} did not settle to {cfg.adaptive_tol:g} within {cfg.max_doublings} doublings "
        f"(last change {change:.3g})"
    )


# ---------------------------------------------------------------------------
# finite differences


_FD5 = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0


def fd_derivative(g: Callable[[float], float], x: float, rel_step: float = 1e-5) -> float:
    """Five-point central difference of ``g`` at ``x > 0`` with step ``rel_step * x``.

    The step is halved until the stencil stays inside (0, inf).
    """
    if not x > 0:
        raise DomainError(f"fd_derivative needs x > 0, got {x}")
    h = rel_step * x
    while x - 2.0 * h <= 0.0:
        h *= 0.5
    samples = np.array([g(x - 2.0 * h), g(x - h), g(x + h), g(x + 2.0 * h)])
    return float(_FD5 @ samples) / h


# ---------------------------------------------------------------------------
# generalized fractional integral and derivative


def frac_integral_oracle(
    sigma_i: float,
    eta: float,
    f: ArrayFunction,
    x: float,
    cfg: QuadConfig = QuadConfig(),
) -> float:
    """eta-deformed fractional integral of order ``sigma_i`` of ``f`` at ``x``, by quadrature.

    With ``t^eta = x^eta z`` the definition becomes
    ``eta^(-sigma_i) / Gamma(sigma_i) x^(eta sigma_i) int_0^1 f(x z^(1/eta)) (1-z)^(sigma_i-1) dz``.
    ``f`` is called with arrays of nodes.
    """
    if not sigma_i > 0:
        raise DomainError(f"integral order must be positive, got {sigma_i}")
    if not (eta > 0 and x > 0):
        raise DomainError(f"eta and x must be positive, got eta={eta}, x={x}")

    def rule(n: int) -> float:
        z, w = graded_jacobi_rule(n, 0.0, sigma_i - 1.0, cfg.grading)
        vals = _check_finite(f(x * z ** (1.0 / eta)), "frac_integral_oracle")
        return float(w @ vals)

    integral = _refine(rule, cfg.jacobi_nodes, cfg, "frac_integral_oracle")
    return math.exp(-sigma_i * math.log(eta) - math.lgamma(sigma_i) + eta * sigma_i * math.log(x)) * integral


def frac_deriv_oracle_fn(
    sigma: float,
    eta: float,
    f: ArrayFunction,
    x: float,
    cfg: QuadConfig = QuadConfig(),
) -> float:
    """eta-deformed derivative of order ``0 <= sigma < 1``: ``x^(1-eta) d/dx I^(1-sigma) f``."""
    if not 0 <= sigma < 1:
        raise DomainError(f"the quadrature oracle covers 0 <= sigma < 1, got {sigma}")

    def g(y: float) -> float:
        return frac_integral_oracle(1.0 - sigma, eta, f, y, cfg)

    return x ** (1.0 - eta) * fd_derivative(g, x, cfg.fd_step)


def frac_deriv_oracle(
    spec: DerivSpec,
    params: MLParams,
    x: float,
    cfg: QuadConfig = QuadConfig(),
) -> float:
    """Quadrature + finite-difference value of the operator on ``t^mu E(t^nu)`` at ``x``.

    This is the left-sided operator; its value is the magnitude of either
    side's closed form.
    """
    mu, nu = spec.mu, spec.nu

    def f(t: np.ndarray) -> np.ndarray:
        return t**mu * ml_eval_array(params, t**nu)

    return frac_deriv_oracle_fn(spec.sigma, spec.eta, f, x, cfg)


# ---------------------------------------------------------------------------
# integral transforms


def beta_transform_oracle(
    g: ArrayFunction, l: float, m: float, cfg: QuadConfig = QuadConfig()
) -> float:
    """``int_0^1 z^(l-1) (1-z)^(m-1) g(z) dz`` by graded Gauss-Jacobi."""
    if not (l > 0 and m > 0):
        raise DomainError(f"Beta transform needs l, m > 0, got l={l}, m={m}")

    def rule(n: int) -> float:
        z, w = graded_jacobi_rule(n, l - 1.0, m - 1.0, cfg.grading)
        return float(w @ _check_finite(g(z), "beta_transform_oracle"))

    return _refine(rule, cfg.jacobi_nodes, cfg, "beta_transform_oracle")


_LAGUERRE_MAX = 256


def laplace_transform_oracle(
    g: ArrayFunction,
    l: float,
    s: float,
    cfg: QuadConfig = QuadConfig(),
    split: float = 1.0,
) -> float:
    """``int_0^inf e^(-s z) z^(l-1) g(z) dz``.

    After ``u = s z`` the head ``u in (0, split)`` uses graded Gauss-Jacobi
    with weight ``u^(l-1)``; the tail ``u = split + t`` uses Gauss-Laguerre
    in ``t``. Both node counts double together until two rounds agree.
    """
    if not (l > 0 and s > 0):
        raise DomainError(f"Laplace transform needs l, s > 0, got l={l}, s={s}")
    a = float(split)

    def rule(n: int) -> float:
        z, w = graded_jacobi_rule(n, l - 1.0, 0.0, cfg.grading)
        u = a * z
        head = a**l * float(w @ _check_finite(np.exp(-u) * g(u / s), "laplace head"))
        n_tail = min(_LAGUERRE_MAX, cfg.laguerre_nodes * n // cfg.jacobi_nodes)
        t, wt = roots_laguerre(n_tail)
        u = a + t
        tail_vals = _check_finite(u ** (l - 1.0) * g(u / s), "laplace tail")
        tail = math.exp(-a) * float(wt @ tail_vals)
        return (head + tail) / s**l

    return _refine(rule, cfg.jacobi_nodes, cfg, "laplace_transform_oracle")
