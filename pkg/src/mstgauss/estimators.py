"""
scikit-learn style wrappers.

Samples are rows ``(lambda, v)`` of three-mode squeezed thermal states, so the
classifiers and transformers below drop into pipelines, ``GridSearchCV`` style
parameter handling and ``clone``.  Nothing is learned: ``fit`` validates the
input and records its width, as stateless sklearn transformers do.
"""

from __future__ import annotations

import warnings

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .bounds import SeparableStateWarning, teleport_bound, to_base, upper_bound
from .gaussian import MstState
from .separability import Classification, classify
from .structmat import PSD_TOL

__all__ = ["check_lambda_v", "SeparabilityClassifier", "EntanglementBoundTransformer"]

CLASSES = np.array([c.value for c in Classification])


def check_lambda_v(X) -> np.ndarray:
    """Validate a ``(n_samples, 2)`` array of ``(lambda, v)`` rows in ``[0, 1)``."""
    X = check_array(X, dtype=np.float64, ensure_2d=True)
    if X.shape[1] != 2:
        raise ValueError(f"expected 2 columns (lambda, v), got {X.shape[1]}")
    if np.any(X < 0) or np.any(X >= 1):
        raise ValueError("lambda and v must lie in [0, 1)")
    return X


class _LambdaVMixin:
    def _validate(self, X, reset: bool) -> np.ndarray:
        X = check_lambda_v(X)
        if reset:
            self.n_features_in_ = X.shape[1]
        else:
            check_is_fitted(self, "n_features_in_")
        return X


class SeparabilityClassifier(_LambdaVMixin, ClassifierMixin, BaseEstimator):
    """Predict the separability class of three-mode squeezed thermal states.

    Parameters
    ----------
    method : {"closed", "generic"}, default="closed"
        ``"closed"`` uses scalar thresholds, ``"generic"`` runs the PPT and
        full-separability matrix tests.
    tol : float, default=1e-9
        Tolerance of the generic tests.
    """

    def __init__(self, method: str = "closed", tol: float = PSD_TOL):
        self.method = method
        self.tol = tol

    def fit(self, X, y=None):
        if self.method not in ("closed", "generic"):
            raise ValueError(f"unknown method {self.method!r}")
        self._validate(X, reset=True)
        self.classes_ = CLASSES.copy()
        return self

    def predict(self, X) -> np.ndarray:
        X = self._validate(X, reset=False)
        out = [
            classify(MstState.from_lambda_v(lam, v, 3), self.method, self.tol).value
            for lam, v in X
        ]
        return np.array(out, dtype=CLASSES.dtype)

    def predict_rank(self, X) -> np.ndarray:
        """0 = fully separable, 1 = biseparable, 2 = fully inseparable."""
        return np.array([Classification(c).rank for c in self.predict(X)])


class EntanglementBoundTransformer(_LambdaVMixin, TransformerMixin, BaseEstimator):
    """Map ``(lambda, v)`` rows to relative-entropy upper bounds.

    Output columns are ``(bound, argmin_r)``; with ``pure_teleport=True`` and
    ``m == 3`` two more are appended, ``2 S(sigma_A)`` and their minimum,
    evaluated at ``v = 0`` whatever the input ``v``.
    """

    def __init__(self, m: int = 3, log_base: str = "nats", pure_teleport: bool = False):
        self.m = m
        self.log_base = log_base
        self.pure_teleport = pure_teleport

    def fit(self, X, y=None):
        if self.log_base not in ("nats", "bits"):
            raise ValueError(f"unknown log base {self.log_base!r}")
        if self.pure_teleport and self.m != 3:
            raise ValueError("the teleportation bound is defined for m=3")
        self._validate(X, reset=True)
        return self

    def transform(self, X) -> np.ndarray:
        X = self._validate(X, reset=False)
        rows = []
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SeparableStateWarning)
            for lam, v in X:
                if self.pure_teleport:
                    v = 0.0
                res = upper_bound(MstState.from_lambda_v(lam, v, self.m))
                row = [to_base(res.value, self.log_base), res.argmin_r]
                if self.pure_teleport:
                    tele = to_base(teleport_bound(MstState.from_lambda_v(lam, 0.0, 3)), self.log_base)
                    row += [tele, min(row[0], tele)]
                rows.append(row)
        return np.array(rows, dtype=float).reshape(len(X), 4 if self.pure_teleport else 2)

    def get_feature_names_out(self, input_features=None):
        names = ["bound", "argmin_r"]
        if self.pure_teleport:
            names += ["teleport", "combined"]
        return np.array(names, dtype=object)
