import math
from itertools import islice

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kmittag.series import (
    ContractError,
    ConvergenceConditionError,
    FoxWrightSpec,
    MLParams,
    foxwright_eval,
    foxwright_term_ratio,
    foxwright_terms,
    ml_as_foxwright,
    ml_eval,
    ml_eval_array,
    ml_reduction_check,
    ml_terms,
)

mp.mp.dps = 40

P21 = MLParams(k=0.5, xi=0.5, zeta=0.2, vartheta=0.5, q=0.4)


def _rel(a, b):
    return 0.0 if a == b else abs(a - b) / abs(b)


def mp_ml(p: MLParams, z: float, n_terms: int = 400) -> float:
    """Direct high-precision sum of the k-Mittag-Leffler series."""
    k = mp.mpf(p.k)
    th, xi, zeta, q = (mp.mpf(v) for v in (p.vartheta, p.xi, p.zeta, p.q))

    def kgamma(y):
        return k ** (y / k - 1) * mp.gamma(y / k)

    total = mp.mpf(0)
    for n in range(n_terms):
        poch = kgamma(th + n * q * k) / kgamma(th)
        total += poch * mp.mpf(z) ** n / (kgamma(n * xi + zeta) * mp.factorial(n))
    return float(total)


def test_exponential_reduction():
    r = ml_eval(MLParams(1, 1, 1, 1, 1), 1.0)
    assert r.converged
    assert f"{r.value:.10g}" == "2.718281828"
    assert _rel(ml_eval(MLParams(1, 1, 1, 1, 1), 2.0).value, math.exp(2.0)) <= 1e-15


@pytest.mark.parametrize("z", [0.0, 0.3, 1.0, 2.5, 5.0, 12.0])
def test_ml_matches_mpmath(z):
    assert _rel(ml_eval(P21, z).value, mp_ml(P21, z)) <= 1e-13


@pytest.mark.parametrize("z", [-0.5, -3.0, -8.0])
def test_alternating_argument(z):
    p = MLParams(k=1.0, xi=1.5, zeta=1.0, vartheta=1.0, q=1.0)
    assert _rel(ml_eval(p, z).value, mp_ml(p, z)) <= 1e-11


def test_ml_equals_foxwright_route_on_grid():
    scale, spec, c = ml_as_foxwright(P21)
    for z in np.linspace(0.0, 5.0, 51):
        direct = ml_eval(P21, z).value
        assert _rel(scale * foxwright_eval(spec, c * z).value, direct) <= 1e-11


def test_term_ratio_incremental_vs_direct():
    # the generator advances by log ratios; compare with ratios of directly computed terms
    z = 2.7
    k = mp.mpf(P21.k)

    def kgamma(y):
        return k ** (y / k - 1) * mp.gamma(y / k)

    def direct(n):
        poch = kgamma(mp.mpf(P21.vartheta) + n * mp.mpf(P21.q) * k) / kgamma(mp.mpf(P21.vartheta))
        return poch * mp.mpf(z) ** n / (kgamma(n * mp.mpf(P21.xi) + mp.mpf(P21.zeta)) * mp.factorial(n))

    terms = list(islice(ml_terms(P21, z), 52))
    for n in range(51):
        assert _rel(terms[n + 1] / terms[n], float(direct(n + 1) / direct(n))) <= 1e-12


def test_foxwright_term_ratio_function():
    spec = FoxWrightSpec([(1.0, 0.4), (2.0, 0.5)], [(0.4, 1.0), (1.5, 0.5)])
    terms = list(islice(foxwright_terms(spec, 1.3), 52))
    for n in range(51):
        assert _rel(foxwright_term_ratio(spec, 1.3, n), terms[n + 1] / terms[n]) <= 1e-12


@settings(max_examples=60)
@given(
    st.floats(0.3, 2.0),
    st.floats(0.3, 2.0),
    st.floats(0.1, 2.0),
    st.floats(0.1, 3.0),
    st.floats(0.1, 1.0),
    st.floats(0.0, 8.0),
)
def test_partial_sums_increase(k, xi, zeta, th, q, z):
    p = MLParams(k, xi, zeta, th, q)
    partial = np.cumsum(list(islice(ml_terms(p, z), 60)))
    assert np.all(np.diff(partial) >= 0)


@pytest.mark.parametrize("z", [0.1, 1.0, 4.0, 9.0])
def test_converged_value_matches_long_sum(z):
    tol = 1e-15
    r = ml_eval(P21, z, tol)
    assert r.converged
    long_sum = math.fsum(islice(ml_terms(P21, z), 2000))
    assert abs(r.value - long_sum) <= 10 * tol * abs(r.value)


def test_metadata():
    r = ml_eval(P21, 2.0)
    assert r.converged and r.terms_used > 2 and 0 <= r.tail_estimate <= 1e-15 * r.value
    zero = ml_eval(P21, 0.0)
    assert zero.terms_used == 1 and zero.value == pytest.approx(1 / float(mp.power(0.5, 0.4 - 1) * mp.gamma(0.4)))


def test_term_cap_flags_non_convergence():
    # margin 0, radius 1: the geometric series 1/(1-z) diverges at z = 1.5
    spec = FoxWrightSpec([(1.0, 1.0)], [])
    r = foxwright_eval(spec, 1.5, max_terms=500)
    assert not r.converged and r.terms_used <= 500
    ok = foxwright_eval(spec, 0.5)
    assert ok.converged and ok.value == pytest.approx(2.0, rel=1e-14)


def test_foxwright_matches_mpmath():
    spec = FoxWrightSpec([(0.7, 0.4), (1.3, 0.5)], [(0.4, 1.0), (0.9, 0.5)])
    z = 2.2
    ref = mp.nsum(
        lambda n: mp.gamma(0.7 + 0.4 * n) * mp.gamma(1.3 + 0.5 * n)
        / (mp.gamma(0.4 + n) * mp.gamma(0.9 + 0.5 * n))
        * mp.mpf(z) ** n
        / mp.factorial(n),
        [0, mp.inf],
    )
    assert _rel(foxwright_eval(spec, z).value, float(ref)) <= 1e-13


def test_lower_poles_zero_terms():
    # 1/Gamma(-1 + n) vanishes for n = 0, 1
    spec = FoxWrightSpec([(1.0, 1.0)], [(-1.0, 1.0)])
    terms = list(islice(foxwright_terms(spec, 0.5), 3))
    assert terms[0] == 0.0 and terms[1] == 0.0 and terms[2] > 0


def test_convergence_condition_rejected_with_sums():
    with pytest.raises(ConvergenceConditionError, match=r"1 \+ 0.5 - 2 = -0.5"):
        FoxWrightSpec([(1.0, 2.0)], [(1.0, 0.5)], label="demo")


def test_spec_validation_and_properties():
    with pytest.raises(ValueError):
        FoxWrightSpec([(1.0, 0.0)], [])
    with pytest.raises(ValueError):
        FoxWrightSpec([(-1.0, 1.0)], [])
    spec = FoxWrightSpec([[1, 0.5]], [(1, 0.5)])
    assert spec.p == 1 and spec.q == 1 and spec.margin == 1.0 and spec.radius == math.inf
    assert FoxWrightSpec([(1.0, 1.0)], []).radius == pytest.approx(1.0)


def test_params_validation():
    with pytest.raises(ValueError, match="xi"):
        MLParams(1.0, -1.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        MLParams(1.0, 1.0, 1.0, 1.0, math.inf)


def test_array_evaluation_matches_scalar():
    zs = np.linspace(0.0, 6.0, 13).reshape(13, 1)
    arr = ml_eval_array(P21, zs)
    assert arr.shape == zs.shape
    for z, v in zip(zs.ravel(), arr.ravel()):
        assert _rel(v, ml_eval(P21, z).value) <= 1e-12


@pytest.mark.parametrize(
    "which,params",
    [
        ("classical", MLParams(1, 0.7, 1, 1, 1)),
        ("wiman", MLParams(1, 0.7, 1.3, 1, 1)),
        ("q1k1", MLParams(1, 0.7, 1.3, 0.6, 1)),
        ("k1", MLParams(1, 0.7, 1.3, 0.6, 0.4)),
        ("k1", MLParams(1, 0.8, 1.2, 0.7, 1.5)),
        ("q1", MLParams(0.5, 0.7, 1.3, 0.6, 1)),
    ],
)
@pytest.mark.parametrize("z", [-1.0, 0.0, 0.7, 2.0])
def test_reductions(which, params, z):
    assert ml_reduction_check(params, z, which) <= 1e-12


def test_reduction_contract():
    with pytest.raises(ContractError, match="q=1"):
        ml_reduction_check(P21, 1.0, "q1")
    with pytest.raises(ValueError):
        ml_reduction_check(P21, 1.0, "nonsense")
