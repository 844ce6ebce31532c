"""Convergence-controlled summation of the k-Mittag-Leffler and Fox-Wright series.

Both series are summed term by term in log space. A run stops when two
consecutive terms fall below ``tol * |partial sum|`` while the term ratio is
below one, and the first omitted term is turned into a geometric tail bound.
Series that do not settle within ``max_terms`` come back flagged as
non-converged instead of raising, so grids can carry on and report them.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .gammakit import DomainError, log_gamma, log_k_gamma, recip_gamma_log

__all__ = [
    "ContractError",
    "ConvergenceConditionError",
    "MLParams",
    "FoxWrightSpec",
    "EvalResult",
    "Reduction",
    "DEFAULT_TOL",
    "DEFAULT_MAX_TERMS",
    "ml_terms",
    "ml_eval",
    "ml_eval_array",
    "ml_as_foxwright",
    "foxwright_terms",
    "foxwright_term_ratio",
    "foxwright_eval",
    "ml_reduction_check",
]

DEFAULT_TOL = 1e-15
DEFAULT_MAX_TERMS = 10_000


class ContractError(ValueError):
    """Arguments are individually valid but inconsistent with the requested operation."""


class ConvergenceConditionError(ValueError):
    """A Fox-Wright parameter set violates ``1 + sum(B) - sum(A) >= 0``."""


@dataclass(frozen=True)
class MLParams:
    """Parameters ``(k, xi, zeta, vartheta, q)`` of the generalized k-Mittag-Leffler function."""

    k: float
    xi: float
    zeta: float
    vartheta: float
    q: float

    def __post_init__(self) -> None:
        bad = [
            name
            for name in ("k", "xi", "zeta", "vartheta", "q")
            if not getattr(self, name) > 0 or math.isinf(getattr(self, name))
        ]
        if bad:
            raise DomainError(f"MLParams fields must be finite and positive: {', '.join(bad)}")


@dataclass(frozen=True)
class EvalResult:
    value: float
    terms_used: int
    tail_estimate: float
    converged: bool


def _pairs(items: Iterable[Sequence[float]]) -> tuple[tuple[float, float], ...]:
    return tuple((float(a), float(b)) for a, b in items)


@dataclass(frozen=True)
class FoxWrightSpec:
    """Upper pairs ``(a_i, A_i)`` and lower pairs ``(b_j, B_j)`` of pPsi_q.

    Construction enforces ``A_i > 0``, ``B_j > 0``, ``a_i > 0`` (every upper
    gamma argument stays positive along the series) and the convergence
    condition ``1 + sum(B) - sum(A) >= 0``. Lower arguments may cross the
    gamma poles; those terms vanish by the reciprocal-gamma convention.
    """

    upper: tuple[tuple[float, float], ...]
    lower: tuple[tuple[float, float], ...]
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper", _pairs(self.upper))
        object.__setattr__(self, "lower", _pairs(self.lower))
        for a, big_a in self.upper:
            if not big_a > 0:
                raise ValueError(f"upper multiplier must be positive, got {big_a}")
            if not a > 0:
                raise DomainError(f"upper parameter must be positive, got {a}")
        for _, big_b in self.lower:
            if not big_b > 0:
                raise ValueError(f"lower multiplier must be positive, got {big_b}")
        if self.margin < -1e-14:
            raise ConvergenceConditionError(
                f"Fox-Wright convergence condition violated{' for ' + self.label if self.label else ''}: "
                f"1 + sum(B) - sum(A) = 1 + {self.sum_lower:.6g} - {self.sum_upper:.6g} "
                f"= {self.margin:.6g} < 0"
            )

    @property
    def sum_upper(self) -> float:
        return math.fsum(big_a for _, big_a in self.upper)

    @property
    def sum_lower(self) -> float:
        return math.fsum(big_b for _, big_b in self.lower)

    @property
    def margin(self) -> float:
        """``1 + sum(B) - sum(A)``; zero means a finite radius of convergence."""
        return 1.0 + self.sum_lower - self.sum_upper

    @property
    def radius(self) -> float:
        if self.margin > 1e-14:
            return math.inf
        log_r = sum(-big_a * math.log(big_a) for _, big_a in self.upper)
        log_r += sum(big_b * math.log(big_b) for _, big_b in self.lower)
        return math.exp(log_r)

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)


# ---------------------------------------------------------------------------
# summation engine


def _summation(terms: Iterator[float], tol: float, max_terms: int, compensated: bool) -> EvalResult:
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    total = 0.0
    comp = 0.0
    small_run = 0
    rho: float | None = None
    prev_abs = 0.0
    n = 0
    nxt = next(terms)
    while True:
        if n >= max_terms or not math.isfinite(nxt):
            tail = abs(nxt) / (1.0 - rho) if rho is not None and rho < 1 else abs(nxt)
            return EvalResult(total + comp, n, tail if math.isfinite(tail) else math.inf, False)
        t = nxt
        if compensated:
            s = total + t
            if abs(total) >= abs(t):
                comp += (total - s) + t
            else:
                comp += (t - s) + total
            total = s
        else:
            total += t
        n += 1
        a = abs(t)
        if a > 0 and prev_abs > 0:
            rho = a / prev_abs
        if a > 0:
            prev_abs = a
        value = total + comp
        small_run = small_run + 1 if a <= tol * abs(value) else 0
        nxt = next(terms)
        if small_run >= 2 and rho is not None and rho < 1:
            a1 = abs(nxt)
            rho1 = a1 / prev_abs if a1 > 0 else rho
            tail = a1 / (1.0 - rho1) if rho1 < 1 else a1
            if tail <= tol * max(1.0, abs(value)):
                return EvalResult(value, n, tail, True)


def _exp(x: float) -> float:
    # overflow becomes inf so the summation engine can flag it
    return math.exp(x) if x < 709.78 else math.inf


def _single(value: float) -> EvalResult:
    return EvalResult(value, 1, 0.0, True)


# ---------------------------------------------------------------------------
# generalized k-Mittag-Leffler function


def ml_terms(params: MLParams, z: float) -> Iterator[float]:
    """Yield the terms ``(vartheta)_{nq,k} z^n / (Gamma_k(n xi + zeta) n!)``.

    The log magnitude advances by the log term ratio; each step costs one new
    log-gamma for the numerator and one for the denominator.
    """
    k, xi, zeta, th, q = params.k, params.xi, params.zeta, params.vartheta, params.q
    lnk = math.log(k)
    lnz = math.log(abs(z)) if z != 0 else -math.inf
    neg = z < 0
    num_prev = log_gamma(th / k)
    den_prev = log_gamma(zeta / k)
    log_t = -log_k_gamma(zeta, k)
    n = 0
    while True:
        if n == 0:
            yield math.exp(log_t)
        elif lnz == -math.inf:
            yield 0.0
        else:
            num = log_gamma(th / k + n * q)
            den = log_gamma((n * xi + zeta) / k)
            log_t += (q - xi / k) * lnk + (num - num_prev) - (den - den_prev) - math.log(n) + lnz
            num_prev, den_prev = num, den
            mag = _exp(log_t)
            yield -mag if (neg and n % 2) else mag
        n += 1


def ml_eval(
    params: MLParams,
    z: float,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> EvalResult:
    """Evaluate E^{vartheta,q}_{k,xi,zeta}(z) by direct summation."""
    z = float(z)
    if z == 0.0:
        return _single(math.exp(-log_k_gamma(params.zeta, params.k)))
    return _summation(ml_terms(params, z), tol, max_terms, compensated=z < 0)


def _ml_log_coeffs(params: MLParams, n_terms: int) -> np.ndarray:
    k, xi, zeta, th, q = params.k, params.xi, params.zeta, params.vartheta, params.q
    n = np.arange(n_terms, dtype=float)
    lnk = math.log(k)
    log_poch = n * q * lnk + gammaln(th / k + n * q) - gammaln(th / k)
    x = (n * xi + zeta) / k
    log_kgam = (x - 1.0) * lnk + gammaln(x)
    return log_poch - log_kgam - gammaln(n + 1.0)


def ml_eval_array(
    params: MLParams,
    z: np.ndarray | float,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> np.ndarray:
    """Vectorized E^{vartheta,q}_{k,xi,zeta} over an array of real arguments.

    One coefficient table serves every entry; its length is grown until the
    largest ``|z|`` satisfies the same two-term stopping rule as :func:`ml_eval`.
    Entries whose series does not settle within ``max_terms`` are NaN.
    """
    z = np.asarray(z, dtype=float)
    flat = z.ravel()
    zmax = float(np.max(np.abs(flat))) if flat.size else 0.0
    n_terms = 32
    while True:
        logc = _ml_log_coeffs(params, n_terms)
        if zmax == 0.0:
            break
        lt = logc + np.arange(n_terms) * math.log(zmax)
        t = np.exp(lt)
        s = t.sum()
        if t[-1] <= tol * s and t[-2] <= tol * s and t[-1] < t[-2]:
            break
        if n_terms >= max_terms:
            return np.full(z.shape, np.nan)
        n_terms = min(2 * n_terms, max_terms)
    c = np.exp(logc)
    powers = np.power.outer(flat, np.arange(n_terms, dtype=float))
    out = (powers * c).sum(axis=1)
    return out.reshape(z.shape)


def ml_as_foxwright(params: MLParams) -> tuple[float, FoxWrightSpec, float]:
    """Return ``(scale, spec, arg_scale)`` with E(z) = scale * 1Psi1[spec | arg_scale * z]."""
    k = params.k
    scale = math.exp((1.0 - params.zeta / k) * math.log(k) - log_gamma(params.vartheta / k))
    spec = FoxWrightSpec(
        upper=[(params.vartheta / k, params.q)],
        lower=[(params.zeta / k, params.xi / k)],
        label="k-Mittag-Leffler",
    )
    arg_scale = k ** (params.q - params.xi / k)
    return scale, spec, arg_scale


# ---------------------------------------------------------------------------
# Fox-Wright function


def _foxwright_log_term(spec: FoxWrightSpec, n: int) -> tuple[float, int]:
    """Log magnitude and sign of the gamma part prod Gamma(a+An) / prod Gamma(b+Bn)."""
    log_mag = 0.0
    sign = 1
    for a, big_a in spec.upper:
        log_mag += log_gamma(a + big_a * n)
    for b, big_b in spec.lower:
        lr, s = recip_gamma_log(b + big_b * n)
        if s == 0:
            return -math.inf, 0
        log_mag += lr
        sign *= s
    return log_mag, sign


def foxwright_terms(spec: FoxWrightSpec, z: float) -> Iterator[float]:
    """Yield ``prod Gamma(a_i + A_i n) / prod Gamma(b_j + B_j n) * z^n / n!``."""
    lnz = math.log(abs(z)) if z != 0 else -math.inf
    neg = z < 0
    log_fact = 0.0
    n = 0
    while True:
        if n > 0:
            log_fact += math.log(n)
        log_g, sign = _foxwright_log_term(spec, n)
        if sign == 0 or (n > 0 and lnz == -math.inf):
            yield 0.0
        else:
            mag = _exp(log_g - log_fact + (n * lnz if n else 0.0))
            if neg and n % 2:
                sign = -sign
            yield sign * mag
        n += 1


def foxwright_term_ratio(spec: FoxWrightSpec, z: float, n: int) -> float:
    """Ratio term(n+1) / term(n) from log-gamma differences (positive gamma arguments only)."""
    log_r = math.log(abs(z)) - math.log(n + 1)
    for a, big_a in spec.upper:
        log_r += log_gamma(a + big_a * (n + 1)) - log_gamma(a + big_a * n)
    for b, big_b in spec.lower:
        log_r -= log_gamma(b + big_b * (n + 1)) - log_gamma(b + big_b * n)
    return math.copysign(math.exp(log_r), z)


def foxwright_eval(
    spec: FoxWrightSpec,
    z: float,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> EvalResult:
    """Evaluate pPsi_q[spec | z] by direct summation."""
    z = float(z)
    if z == 0.0:
        return _single(next(foxwright_terms(spec, 0.0)))
    return _summation(foxwright_terms(spec, z), tol, max_terms, compensated=z < 0)


# ---------------------------------------------------------------------------
# reductions of the k-Mittag-Leffler family


class Reduction(str, enum.Enum):
    Q1 = "q1"
    K1 = "k1"
    Q1K1 = "q1k1"
    WIMAN = "wiman"
    CLASSICAL = "classical"


_REQUIRED = {
    Reduction.Q1: ("q",),
    Reduction.K1: ("k",),
    Reduction.Q1K1: ("q", "k"),
    Reduction.WIMAN: ("q", "k", "vartheta"),
    Reduction.CLASSICAL: ("q", "k", "vartheta", "zeta"),
}


def _plain_sum(term, limit: int = 4000) -> float:
    # reference summation: fixed rule, independent of _summation
    acc: list[float] = []
    small = 0
    for n in range(limit):
        t = term(n)
        acc.append(t)
        s = math.fsum(acc)
        small = small + 1 if abs(t) <= 1e-18 * abs(s) else 0
        if small >= 3:
            break
    return math.fsum(acc)


def _log_term(log_w: float, z: float, n: int, x: float) -> float:
    # w * z^n / Gamma(x) with w = exp(log_w), assembled in log space
    if n == 0:
        return math.exp(log_w - math.lgamma(x))
    if z == 0:
        return 0.0
    mag = math.exp(log_w + n * math.log(abs(z)) - math.lgamma(x))
    return -mag if (z < 0 and n % 2) else mag


def _reduced_series(which: Reduction, p: MLParams, z: float) -> float:
    xi, zeta, th, k, q = p.xi, p.zeta, p.vartheta, p.k, p.q
    if which is Reduction.CLASSICAL:
        return _plain_sum(lambda n: _log_term(0.0, z, n, n * xi + 1.0))
    if which is Reduction.WIMAN:
        return _plain_sum(lambda n: _log_term(0.0, z, n, n * xi + zeta))
    if which is Reduction.Q1K1:
        # (th)_n / n! = Gamma(th + n) / (Gamma(th) n!)
        return _plain_sum(
            lambda n: _log_term(
                math.lgamma(th + n) - math.lgamma(th) - math.lgamma(n + 1.0), z, n, n * xi + zeta
            )
        )
    if which is Reduction.K1:
        return _plain_sum(
            lambda n: _log_term(
                math.lgamma(th + n * q) - math.lgamma(th) - math.lgamma(n + 1.0), z, n, n * xi + zeta
            )
        )

    # q = 1: (th)_{n,k} = k^n Gamma(th/k + n) / Gamma(th/k), Gamma_k(y) = k^{y/k-1} Gamma(y/k)
    def term(n: int) -> float:
        y = n * xi + zeta
        log_w = (
            n * math.log(k)
            + math.lgamma(th / k + n)
            - math.lgamma(th / k)
            - (y / k - 1.0) * math.log(k)
            - math.lgamma(n + 1.0)
        )
        return _log_term(log_w, z, n, y / k)

    return _plain_sum(term)


def ml_reduction_check(params: MLParams, z: float, which: Reduction | str) -> float:
    """Relative difference between :func:`ml_eval` and a reduced-form series.

    ``which`` selects the special case: ``q1`` (q = 1), ``k1`` (k = 1),
    ``q1k1``, ``wiman`` (q = k = vartheta = 1) or ``classical`` (additionally
    zeta = 1). The parameters must already satisfy the selected constraints.
    """
    which = Reduction(which)
    wrong = [name for name in _REQUIRED[which] if getattr(params, name) != 1.0]
    if wrong:
        raise ContractError(
            f"reduction {which.value!r} requires {', '.join(n + '=1' for n in _REQUIRED[which])}; "
            f"got {', '.join(f'{n}={getattr(params, n)}' for n in wrong)}"
        )
    general = ml_eval(params, z).value
    reduced = _reduced_series(which, params, z)
    if general == reduced:
        return 0.0
    return abs(general - reduced) / abs(general)
