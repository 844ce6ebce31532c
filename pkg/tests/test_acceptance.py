"""Acceptance criteria 1-7.

Each test records a one-line PASS/FAIL verdict; ``conftest.py`` prints the
lines at the end of the pytest run, and running this file directly prints
them as it goes.
"""

from __future__ import annotations

import math
import time
from dataclasses import replace

import pytest

from kmittag.fracops import Side, frac_deriv_closed, frac_deriv_monomial, rl_reduction_check
from kmittag.gammakit import check_k_gamma_rescaling, check_pochhammer_rescaling, check_pochhammer_to_classical
from kmittag.oracles import fd_derivative, frac_deriv_oracle
from kmittag.reproduce import (
    DEFAULT_DERIV,
    DEFAULT_PARAMS,
    PUBLISHED_TABLE_1,
    compute_table,
    table1_fidelity,
    table2_note,
    table_config,
)
from kmittag.series import (
    ConvergenceConditionError,
    FoxWrightSpec,
    MLParams,
    ml_eval,
    ml_reduction_check,
)
from kmittag.transforms import (
    BetaImageSpec,
    LaplaceImageSpec,
    beta_image_closed,
    beta_image_oracle,
    laplace_foxwright_spec,
    laplace_image_closed,
    laplace_image_oracle,
)

RESULTS: dict[int, str] = {}

SIGMAS = (0.1, 0.2, 0.3, 0.4)
XS = tuple(0.5 * i for i in range(1, 11))


def _rel(a: float, b: float) -> float:
    return 0.0 if a == b else abs(a - b) / abs(b)


def _verdict(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_criterion_1_table1_reproduction():
    t0 = time.perf_counter()
    result = compute_table(table_config(1))
    fid = table1_fidelity(result)
    elapsed = time.perf_counter() - t0

    x1 = result.xs.index(1.0)
    anchor = [round(c.magnitude, 2) for c in result.cells[x1]]
    oracle_gap = max((m.closed_vs_oracle for m in fid.mismatches if m.x > 0), default=0.0)
    # every mismatch is reported with both values, and those two must agree
    reported = all(not math.isnan(m.closed_form) and not math.isnan(m.oracle) for m in fid.mismatches)
    ok = (
        fid.matched >= 80
        and elapsed <= 5.0
        and reported
        and oracle_gap <= 1e-4
    )
    _verdict(
        1,
        ok,
        f"{fid.matched}/{fid.total} cells within 0.02 (need 80); x=1 row {anchor} vs "
        f"{list(PUBLISHED_TABLE_1[2])}; closed vs oracle on mismatches {oracle_gap:.1e}; {elapsed:.2f}s",
    )


def test_criterion_2_table2_magnitude_property():
    t1 = compute_table(table_config(1))
    t2 = compute_table(table_config(2))
    same = all(
        a.magnitude == b.magnitude for r1, r2 in zip(t1.cells, t2.cells) for a, b in zip(r1, r2)
    )
    note = table2_note(t2)
    has_note = "real part" in note and "cos(pi sigma)" in note
    _verdict(2, same and has_note, f"right magnitude bit-equal to left: {same}; note written: {has_note}")


def test_criterion_3_oracle_equivalence():
    t0 = time.perf_counter()
    worst = 0.0
    for s in SIGMAS:
        spec = replace(DEFAULT_DERIV, sigma=s)
        for x in XS:
            closed = frac_deriv_closed(spec, DEFAULT_PARAMS, x).magnitude
            worst = max(worst, _rel(frac_deriv_oracle(spec, DEFAULT_PARAMS, x), closed))
    elapsed = time.perf_counter() - t0
    _verdict(3, worst <= 1e-4 and elapsed <= 60, f"40 cells, worst rel {worst:.2e}; {elapsed:.2f}s")


def test_criterion_4_transform_images():
    t0 = time.perf_counter()
    worst_b = worst_l = 0.0
    for sigma in (0.1, 0.3):
        d = replace(DEFAULT_DERIV, sigma=sigma)
        for l in (0.8, 1.0, 1.5):
            for x in (0.25, 0.5, 1.0):
                for m in (0.8, 1.0, 1.5):
                    b = BetaImageSpec(d, DEFAULT_PARAMS, l, m)
                    worst_b = max(worst_b, _rel(beta_image_oracle(b, x), beta_image_closed(b, x).magnitude))
                for s in (2.0, 4.0, 8.0):
                    lp = LaplaceImageSpec(d, DEFAULT_PARAMS, l, s)
                    worst_l = max(
                        worst_l, _rel(laplace_image_oracle(lp, x), laplace_image_closed(lp, x).magnitude)
                    )
    elapsed = time.perf_counter() - t0
    ok = worst_b <= 1e-5 and worst_l <= 1e-5 and elapsed <= 120
    _verdict(4, ok, f"beta worst {worst_b:.2e}, laplace worst {worst_l:.2e}; {elapsed:.2f}s")


def test_criterion_5_identities_and_reductions():
    worst = 0.0
    thetas = (0.2, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0)
    ks = (0.25, 0.5, 0.75, 1.0, 1.5, 2.0)
    for th in thetas:
        for k in ks:
            for s in (0.25, 0.5, 1.0, 2.0):
                worst = max(worst, check_k_gamma_rescaling(th, s, k))
                for n in (0, 1, 3, 7):
                    for q in (0.4, 1.0, 2.5):
                        worst = max(worst, check_pochhammer_rescaling(th, n, q, s, k))
            for n in range(9):
                for q in (1.0, 2.0):
                    worst = max(worst, check_pochhammer_to_classical(th, n, q, k))
    worst_red = 0.0
    for i in range(21):
        z = 0.1 * i
        worst_red = max(worst_red, _rel(ml_eval(MLParams(1, 1, 1, 1, 1), z).value, math.exp(z)))
    chain = [
        ("classical", MLParams(1, 0.7, 1, 1, 1)),
        ("wiman", MLParams(1, 0.7, 1.3, 1, 1)),
        ("q1k1", MLParams(1, 0.7, 1.3, 0.6, 1)),
        ("k1", MLParams(1, 0.7, 1.3, 0.6, 0.4)),
        ("q1", MLParams(0.5, 0.7, 1.3, 0.6, 1)),
    ]
    for which, p in chain:
        for z in (0.3, 1.0, 2.0):
            worst_red = max(worst_red, ml_reduction_check(p, z, which))
    ok = worst <= 1e-12 and worst_red <= 1e-12
    _verdict(5, ok, f"gamma and Pochhammer identities worst {worst:.2e}; reduction chain worst {worst_red:.2e}")


def test_criterion_6_analytic_limits():
    spec0 = replace(DEFAULT_DERIV, sigma=0.0)
    w_sigma0 = max(
        _rel(
            frac_deriv_closed(spec0, DEFAULT_PARAMS, x).magnitude,
            x**spec0.mu * ml_eval(DEFAULT_PARAMS, x**spec0.nu).value,
        )
        for x in XS
    )
    w_rl = max(
        rl_reduction_check(s, p, x) for s in (0.1, 0.5, 0.9) for p in (0.5, 1.0, 2.3) for x in (0.5, 1.0, 5.0)
    )
    zero = all(
        frac_deriv_closed(replace(DEFAULT_DERIV, sigma=s, side=side), DEFAULT_PARAMS, 0.0).magnitude == 0.0
        for s in SIGMAS
        for side in Side
    )
    w_fd = max(
        _rel(fd_derivative(lambda y: y**s, x), s * x ** (s - 1.0))
        for s in (0.5, 1.7, 3.2)
        for x in (0.5, 1.0, 5.0)
    )
    # the eta=1 kernel is the monomial rule the closed form is built from
    assert frac_deriv_monomial(0.5, 1.0, 1.0, 4.0) == pytest.approx(2.0 * math.sqrt(4.0 / math.pi), rel=1e-14)
    ok = w_sigma0 <= 1e-11 and w_rl <= 1e-13 and zero and w_fd <= 1e-8
    _verdict(
        6,
        ok,
        f"sigma=0 {w_sigma0:.1e}, eta=1 RL {w_rl:.1e}, x->0 exact zero {zero}, FD kernel {w_fd:.1e}",
    )


def test_criterion_7_convergence_gate():
    try:
        FoxWrightSpec(upper=[(1.0, 1.5), (1.0, 1.0)], lower=[(1.0, 0.5)])
    except ConvergenceConditionError as exc:
        rejected, msg = True, str(exc)
    else:
        rejected, msg = False, ""
    diagnostic = "1 + sum(B) - sum(A)" in msg and "-1" in msg
    margin = laplace_foxwright_spec(LaplaceImageSpec(DEFAULT_DERIV, DEFAULT_PARAMS, 1.0, 1.0)).margin
    ok = rejected and diagnostic and abs(margin - 0.8) <= 1e-12
    _verdict(7, ok, f"violating spec rejected: {rejected} ({msg[-40:]!r}); Laplace margin {margin:.12g}")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
