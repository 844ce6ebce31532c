import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer
from sklearn.utils.estimator_checks import check_estimator

from kmittag.estimators import FractionalDerivativeTransformer, MittagLefflerTransformer
from kmittag.fracops import DerivSpec, frac_deriv_closed
from kmittag.series import MLParams


@pytest.mark.parametrize("est", [MittagLefflerTransformer(), FractionalDerivativeTransformer()])
def test_sklearn_compatibility(est):
    check_estimator(est)


def test_derivative_transformer_values():
    X = np.array([[0.0, 0.5], [1.0, 5.0]])
    out = FractionalDerivativeTransformer(sigma=0.2).fit_transform(X)
    spec = DerivSpec(0.2, 0.3, 0.5, 0.8)
    p = MLParams(0.5, 0.5, 0.2, 0.5, 0.4)
    expected = np.vectorize(lambda x: frac_deriv_closed(spec, p, x).magnitude)(X)
    np.testing.assert_array_equal(out, expected)


def test_projection_and_params():
    t = FractionalDerivativeTransformer(side="right", projection="imag_part")
    assert clone(t).get_params()["projection"] == "imag_part"
    out = t.fit_transform(np.array([[1.0]]))
    assert out[0, 0] < 0
    with pytest.raises(ValueError):
        FractionalDerivativeTransformer(projection="phase").fit(np.ones((1, 1)))
    with pytest.raises(ValueError):
        FractionalDerivativeTransformer().fit(-np.ones((1, 1)))


def test_pipeline():
    pipe = make_pipeline(FunctionTransformer(np.abs), MittagLefflerTransformer(k=1, xi=1, zeta=1, vartheta=1, q=1))
    out = pipe.fit_transform(np.array([[-1.0], [0.0], [2.0]]))
    np.testing.assert_allclose(out.ravel(), np.exp([1.0, 0.0, 2.0]), rtol=1e-15)
