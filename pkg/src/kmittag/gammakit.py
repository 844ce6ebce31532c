"""Real-argument gamma kernel and the k-deformed gamma and Pochhammer functions.

Everything here works in log space on the positive real axis. The
k-gamma function is

.. math::

    \\Gamma_k(\\vartheta) = k^{\\vartheta/k - 1}\\,\\Gamma(\\vartheta / k),

and the k-Pochhammer symbol is the rising product
:math:`(\\vartheta)_{n,k} = \\vartheta(\\vartheta + k)\\cdots(\\vartheta + (n-1)k)`,
extended to non-integer counts by the ratio
:math:`\\Gamma_k(\\vartheta + nk) / \\Gamma_k(\\vartheta)`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import zeta as _zeta

__all__ = [
    "DomainError",
    "KGammaArg",
    "PochhammerArg",
    "log_gamma",
    "k_gamma",
    "log_k_gamma",
    "recip_gamma_log",
    "k_pochhammer",
    "log_k_pochhammer",
    "check_k_gamma_rescaling",
    "check_pochhammer_rescaling",
    "check_pochhammer_to_classical",
]


class DomainError(ValueError):
    """Argument outside the real positive domain of a gamma-type function."""


_EULER_GAMMA = 0.57721566490153286061
# (-1)^j zeta(j) / j for j = 2..29, the Taylor coefficients of lnGamma(1 + e)
_LNGAMMA1_COEFFS = tuple((-1) ** j * float(_zeta(j)) / j for j in range(2, 30))
_ROOT_RADIUS = 0.2


def _lngamma_one_plus(eps: float) -> float:
    # Horner on sum_j c_j eps^j, j >= 2, then the linear term
    acc = 0.0
    for c in reversed(_LNGAMMA1_COEFFS):
        acc = acc * eps + c
    return eps * (acc * eps - _EULER_GAMMA)


def log_gamma(x: float) -> float:
    """Return ln Gamma(x) for real ``x > 0``.

    Away from the zeros of ln Gamma at 1 and 2 this is :func:`math.lgamma`.
    Within 0.2 of either zero a zeta-series expansion is used so the result
    keeps full relative accuracy where the value itself goes to zero.
    """
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"log_gamma requires a finite x > 0, got {x!r}")
    e1 = x - 1.0
    if abs(e1) < _ROOT_RADIUS:
        return _lngamma_one_plus(e1)
    e2 = x - 2.0
    if abs(e2) < _ROOT_RADIUS:
        return math.log1p(e2) + _lngamma_one_plus(e2)
    return math.lgamma(x)


def recip_gamma_log(x: float) -> tuple[float, int]:
    """Return ``(ln|1/Gamma(x)|, sign)``; sign 0 at the poles x = 0, -1, -2, ..."""
    if x > 0:
        return -log_gamma(x), 1
    if x == math.floor(x):
        return -math.inf, 0
    sign = -1 if math.ceil(-x) % 2 else 1
    return -math.lgamma(x), sign



@dataclass(frozen=True)
class KGammaArg:
    """Argument of the k-gamma function."""

    vartheta: float
    k: float

    def __post_init__(self) -> None:
        if not (self.vartheta > 0 and self.k > 0):
            raise DomainError(
                f"k-gamma needs vartheta > 0 and k > 0, got vartheta={self.vartheta}, k={self.k}"
            )


@dataclass(frozen=True)
class PochhammerArg:
    """Argument of the k-Pochhammer symbol ``(vartheta)_{n q, k}``."""

    vartheta: float
    n: int
    q: float = 1.0
    k: float = 1.0

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n!r}")
        if not (self.q > 0 and self.k > 0):
            raise DomainError(f"q and k must be positive, got q={self.q}, k={self.k}")

    @property
    def count(self) -> float:
        return self.n * self.q


def log_k_gamma(vartheta: float, k: float) -> float:
    """ln Gamma_k(vartheta) = (vartheta/k - 1) ln k + ln Gamma(vartheta/k)."""
    if not k > 0:
        raise DomainError(f"k must be positive, got {k!r}")
    return (vartheta / k - 1.0) * math.log(k) + log_gamma(vartheta / k)


def k_gamma(arg: KGammaArg | float, k: float | None = None) -> float:
    """Evaluate Gamma_k.

    Accepts either a :class:`KGammaArg` or the pair ``(vartheta, k)``.
    """
    if not isinstance(arg, KGammaArg):
        arg = KGammaArg(float(arg), 1.0 if k is None else float(k))
    return math.exp(log_k_gamma(arg.vartheta, arg.k))


def _is_integral(v: float) -> bool:
    return float(v).is_integer()


def log_k_pochhammer(vartheta: float, count: float, k: float) -> float:
    """ln (vartheta)_{count,k} via the k-gamma ratio; requires positive arguments."""
    if count == 0:
        return 0.0
    return log_k_gamma(vartheta + count * k, k) - log_k_gamma(vartheta, k)


def k_pochhammer(arg: PochhammerArg) -> float:
    """Evaluate ``(vartheta)_{n q, k}``.

    An integral count ``n q`` uses the finite product, which is valid for any
    real ``vartheta``; a fractional count goes through the k-gamma ratio and
    therefore needs ``vartheta > 0``.
    """
    count = arg.count
    if count == 0:
        return 1.0
    if _is_integral(count):
        out = 1.0
        for j in range(int(count)):
            out *= arg.vartheta + j * arg.k
        return out
    if not arg.vartheta > 0:
        raise DomainError(
            f"fractional count {count} needs vartheta > 0, got {arg.vartheta}"
        )
    return math.exp(log_k_pochhammer(arg.vartheta, count, arg.k))


def _rel(lhs: float, rhs: float) -> float:
    if lhs == rhs:
        return 0.0
    return abs(lhs - rhs) / abs(lhs)


def check_k_gamma_rescaling(vartheta: float, s: float, k: float) -> float:
    """Relative residual of Gamma_s(t) = (s/k)^(t/s - 1) Gamma_k(k t / s)."""
    lhs = log_k_gamma(vartheta, s)
    rhs = (vartheta / s - 1.0) * math.log(s / k) + log_k_gamma(k * vartheta / s, k)
    return _rel(math.exp(lhs), math.exp(rhs))


def check_pochhammer_rescaling(vartheta: float, n: int, q: float, s: float, k: float) -> float:
    """Relative residual of (t)_{nq,s} = (s/k)^{nq} (k t / s)_{nq,k}."""
    count = n * q
    lhs = k_pochhammer(PochhammerArg(vartheta, n, q, s))
    rhs = (s / k) ** count * k_pochhammer(PochhammerArg(k * vartheta / s, n, q, k))
    return _rel(lhs, rhs)


def check_pochhammer_to_classical(vartheta: float, n: int, q: float, k: float) -> float:
    """Relative residual of (t)_{nq,k} = k^{nq} (t/k)_{nq}."""
    lhs = k_pochhammer(PochhammerArg(vartheta, n, q, k))
    rhs = k ** (n * q) * k_pochhammer(PochhammerArg(vartheta / k, n, q, 1.0))
    return _rel(lhs, rhs)
