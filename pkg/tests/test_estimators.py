import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import FunctionTransformer

from mstgauss.estimators import EntanglementBoundTransformer, SeparabilityClassifier, check_lambda_v

X = np.array([[0.5, 0.2], [0.21, 0.2], [0.2, 0.5]])
LABELS = ["FullyInseparable", "Biseparable", "FullySeparable"]


def test_check_lambda_v():
    assert check_lambda_v([[0.1, 0.2]]).dtype == np.float64
    with pytest.raises(ValueError):
        check_lambda_v([[0.1, 0.2, 0.3]])
    with pytest.raises(ValueError):
        check_lambda_v([[1.0, 0.2]])


@pytest.mark.parametrize("method", ["closed", "generic"])
def test_classifier_predict(method):
    clf = SeparabilityClassifier(method=method).fit(X)
    assert list(clf.predict(X)) == LABELS
    assert list(clf.predict_rank(X)) == [2, 1, 0]
    assert clf.score(X, LABELS) == 1.0
    assert clf.n_features_in_ == 2


def test_classifier_params_and_clone():
    clf = SeparabilityClassifier(method="generic", tol=1e-8)
    assert clf.get_params() == {"method": "generic", "tol": 1e-8}
    twin = clone(clf).set_params(method="closed")
    assert twin.method == "closed" and clf.method == "generic"


def test_classifier_unfitted():
    with pytest.raises(NotFittedError):
        SeparabilityClassifier().predict(X)


def test_classifier_bad_method():
    with pytest.raises(ValueError):
        SeparabilityClassifier(method="nope").fit(X)


def test_transformer_shapes():
    tr = EntanglementBoundTransformer()
    out = tr.fit_transform(X)
    assert out.shape == (3, 2)
    assert out[0, 0] > 0
    assert list(tr.get_feature_names_out()) == ["bound", "argmin_r"]


def test_transformer_bits():
    nats = EntanglementBoundTransformer().fit_transform(X)[:, 0]
    bits = EntanglementBoundTransformer(log_base="bits").fit_transform(X)[:, 0]
    np.testing.assert_allclose(bits, nats / np.log(2))


def test_transformer_pure():
    out = EntanglementBoundTransformer(pure_teleport=True).fit_transform([[0.95, 0.7]])
    bound, _, tele, combined = out[0]
    assert combined == min(bound, tele) == bound


def test_transformer_pure_needs_three_modes():
    with pytest.raises(ValueError):
        EntanglementBoundTransformer(m=4, pure_teleport=True).fit(X)


def test_in_pipeline():
    # feed (r, N) through a conversion step
    to_lambda_v = FunctionTransformer(lambda a: np.column_stack([np.tanh(a[:, 0]), a[:, 1] / (1 + a[:, 1])]))
    pipe = make_pipeline(to_lambda_v, SeparabilityClassifier())
    rn = np.array([[np.arctanh(0.5), 0.25]])
    assert pipe.fit(rn).predict(rn)[0] == "FullyInseparable"
