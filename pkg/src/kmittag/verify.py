"""Invariant suites behind ``kmittag verify``.

Each suite runs a fixed grid of checks and reports the number passed and
failed together with the worst residual seen. The tolerances are the
contractual ones of the individual modules.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Callable
from dataclasses import dataclass, field, replace

import numpy as np

from .fracops import frac_deriv_closed, rl_reduction_check
from .gammakit import (
    PochhammerArg,
    check_k_gamma_rescaling,
    check_pochhammer_rescaling,
    check_pochhammer_to_classical,
    k_gamma,
    k_pochhammer,
)
from .oracles import QuadConfig, fd_derivative, frac_deriv_oracle
from .reproduce import DEFAULT_DERIV, DEFAULT_PARAMS
from .series import MLParams, foxwright_eval, ml_as_foxwright, ml_eval, ml_reduction_check
from .transforms import (
    BetaImageSpec,
    LaplaceImageSpec,
    beta_image_closed,
    beta_image_oracle,
    laplace_foxwright_spec,
    laplace_image_closed,
    laplace_image_oracle,
)

__all__ = ["SuiteReport", "SUITES", "run_suite", "run_all"]

THETA_GRID = (0.2, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0)
K_GRID = (0.25, 0.5, 0.75, 1.0, 1.5, 2.0)
S_GRID = (0.25, 0.5, 1.0, 2.0)
TABLE_X = tuple(0.5 * i for i in range(1, 11))
TABLE_SIGMA = (0.1, 0.2, 0.3, 0.4)


@dataclass
class SuiteReport:
    name: str
    passed: int = 0
    failed: int = 0
    worst: float = 0.0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, label: str, residual: float, limit: float) -> None:
        if math.isnan(residual):
            residual = math.inf
        self.worst = max(self.worst, residual)
        if residual <= limit:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(f"{label}: residual {residual:.3e} > {limit:g}")

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (
            f"{self.name:<12} {status}  passed={self.passed} failed={self.failed} "
            f"worst_residual={self.worst:.3e}"
        )


def _rel(a: float, b: float) -> float:
    return 0.0 if a == b else abs(a - b) / abs(b)


def _identities() -> SuiteReport:
    rep = SuiteReport("identities")
    for th in THETA_GRID:
        for k in K_GRID:
            rep.record(
                f"recurrence th={th} k={k}",
                _rel(k_gamma(th + k, k), th * k_gamma(th, k)),
                1e-12,
            )
            for s in S_GRID:
                rep.record(f"gamma rescaling th={th} s={s} k={k}", check_k_gamma_rescaling(th, s, k), 1e-12)
            for q in (1.0, 2.0):
                for n in range(0, 9):
                    rep.record(f"pochhammer classical th={th} n={n} q={q} k={k}", check_pochhammer_to_classical(th, n, q, k), 1e-12)
            for q in (0.4, 1.0, 2.5):
                for n in (0, 1, 3, 7):
                    for s in S_GRID:
                        rep.record(
                            f"pochhammer rescaling th={th} n={n} q={q} s={s} k={k}",
                            check_pochhammer_rescaling(th, n, q, s, k),
                            1e-12,
                        )
        rep.record(f"k=1 gamma th={th}", _rel(k_gamma(th, 1.0), math.gamma(th)), 1e-13)
        for n in range(0, 8):
            classical = math.prod(th + j for j in range(n))
            rep.record(
                f"k=1 pochhammer th={th} n={n}",
                _rel(k_pochhammer(PochhammerArg(th, n, 1, 1.0)), classical),
                1e-13,
            )
    return rep


def _reductions() -> SuiteReport:
    rep = SuiteReport("reductions")
    zs = np.linspace(0.0, 2.0, 21)
    for z in zs:
        rep.record(
            f"E11 z={z:g}", _rel(ml_eval(MLParams(1, 1, 1, 1, 1), z).value, math.exp(z)), 1e-12
        )
    cases = {
        "classical": [MLParams(1, xi, 1, 1, 1) for xi in (0.5, 1.5, 2.0)],
        "wiman": [MLParams(1, xi, zeta, 1, 1) for xi in (0.5, 1.5) for zeta in (0.3, 1.7)],
        "q1k1": [MLParams(1, 0.8, 1.2, th, 1) for th in (0.5, 2.0)],
        "k1": [MLParams(1, 0.8, 1.2, 0.7, q) for q in (0.4, 1.5)],
        "q1": [MLParams(k, 0.8, 1.2, 0.7, 1) for k in (0.5, 2.0)],
    }
    for which, plist in cases.items():
        for p in plist:
            for z in (-1.0, 0.5, 2.0):
                rep.record(f"{which} {p} z={z}", ml_reduction_check(p, z, which), 1e-12)
    scale, spec, c = ml_as_foxwright(DEFAULT_PARAMS)
    for z in np.linspace(0.0, 5.0, 26):
        rep.record(
            f"ml vs 1Psi1 z={z:g}",
            _rel(scale * foxwright_eval(spec, c * z).value, ml_eval(DEFAULT_PARAMS, z).value),
            1e-11,
        )
    return rep


def _oracle(cfg: QuadConfig = QuadConfig()) -> SuiteReport:
    rep = SuiteReport("oracle")
    for sigma in TABLE_SIGMA:
        spec = replace(DEFAULT_DERIV, sigma=sigma)
        for x in TABLE_X:
            closed = frac_deriv_closed(spec, DEFAULT_PARAMS, x).magnitude
            rep.record(
                f"oracle sigma={sigma} x={x}", _rel(frac_deriv_oracle(spec, DEFAULT_PARAMS, x, cfg), closed), 1e-4
            )
    spec0 = replace(DEFAULT_DERIV, sigma=0.0)
    for x in TABLE_X:
        ref = x**spec0.mu * ml_eval(DEFAULT_PARAMS, x**spec0.nu).value
        rep.record(f"sigma=0 x={x}", _rel(frac_deriv_closed(spec0, DEFAULT_PARAMS, x).magnitude, ref), 1e-11)
    for sigma in (0.1, 0.5, 0.9):
        for p in (0.5, 1.0, 2.3):
            for x in (0.5, 1.0, 5.0):
                rep.record(f"RL sigma={sigma} p={p} x={x}", rl_reduction_check(sigma, p, x), 1e-13)
    for s in (0.5, 1.7, 3.2):
        for x in (0.5, 1.0, 5.0):
            ref = s * x ** (s - 1.0)
            rep.record(f"FD s={s} x={x}", _rel(fd_derivative(lambda y: y**s, x), ref), 1e-8)
    for sigma in TABLE_SIGMA:
        zero = frac_deriv_closed(replace(DEFAULT_DERIV, sigma=sigma), DEFAULT_PARAMS, 0.0).magnitude
        rep.record(f"x=0 limit sigma={sigma}", abs(zero), 0.0)
    return rep


def _transforms(cfg: QuadConfig = QuadConfig()) -> SuiteReport:
    rep = SuiteReport("transforms")
    p = DEFAULT_PARAMS
    for sigma, l, x in itertools.product((0.1, 0.3), (0.8, 1.0, 1.5), (0.25, 0.5, 1.0)):
        d = replace(DEFAULT_DERIV, sigma=sigma)
        for m in (0.8, 1.0, 1.5):
            spec = BetaImageSpec(d, p, l, m)
            rep.record(
                f"beta sigma={sigma} l={l} m={m} x={x}",
                _rel(beta_image_oracle(spec, x, cfg), beta_image_closed(spec, x).magnitude),
                1e-5,
            )
        for s in (2.0, 4.0, 8.0):
            spec = LaplaceImageSpec(d, p, l, s)
            rep.record(
                f"laplace sigma={sigma} l={l} s={s} x={x}",
                _rel(laplace_image_oracle(spec, x, cfg), laplace_image_closed(spec, x).magnitude),
                1e-5,
            )
    # argument depends on x/s only
    d = DEFAULT_DERIV
    for c in (0.5, 3.0):
        spec1 = LaplaceImageSpec(d, p, 1.2, 2.0)
        spec2 = LaplaceImageSpec(d, p, 1.2, 2.0 * c)
        a = spec1.s**spec1.l * laplace_image_closed(spec1, 0.7).magnitude / 0.7**d.x_power
        b = spec2.s**spec2.l * laplace_image_closed(spec2, 0.7 * c).magnitude / (0.7 * c) ** d.x_power
        rep.record(f"laplace scaling c={c}", _rel(b, a), 1e-12)
    margin = laplace_foxwright_spec(LaplaceImageSpec(d, p, 1.0, 1.0)).margin
    rep.record("laplace margin 0.8", abs(margin - 0.8), 1e-12)
    return rep


SUITES: dict[str, Callable[[], SuiteReport]] = {
    "identities": _identities,
    "reductions": _reductions,
    "oracle": _oracle,
    "transforms": _transforms,
}


def run_suite(name: str) -> list[SuiteReport]:
    if name == "all":
        return [fn() for fn in SUITES.values()]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join([*SUITES, 'all'])}")
    return [SUITES[name]()]


def run_all() -> list[SuiteReport]:
    return run_suite("all")
