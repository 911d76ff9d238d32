"""scikit-learn compatible wrappers around the model and fitting routines.

These compose with pipelines, ``clone`` and ``get_params``/``set_params``:

* ``IsingEntanglementTransformer`` maps couplings to (S_vN, C, E_corr).
* ``ProportionalScaler`` fits E_corr ~ alpha * M through the origin, with
  optional quadrature weights, and predicts the residual profile.
* ``LogLinearRegressor`` fits S ~ a E + b E ln E.
"""
import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_consistent_length, check_is_fitted

from . import deviation
from .ci_bridge import Denominator, _lstsq_log_linear
from .errors import NonPositive, SingularBasis
from .measures import ground_state_concurrence, ground_state_entropy


def _column(X, name="X"):
    X = check_array(X, ensure_2d=False, dtype=float)
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise ValueError(f"{name} must have a single feature, got {X.shape[1]}")
        X = X[:, 0]
    return X


class IsingEntanglementTransformer(TransformerMixin, BaseEstimator):
    """Ground-state entanglement and correlation energy of the two-qubit model.

    Parameters
    ----------
    g : float, default=1.0
        Anisotropy in [0, 1].
    """

    def __init__(self, g=1.0):
        self.g = g

    def fit(self, X, y=None):
        if not 0.0 <= self.g <= 1.0:
            raise ValueError(f"g must lie in [0, 1], got {self.g}")
        lam = _column(X)
        if np.any(lam < 0.0):
            raise ValueError("couplings must be >= 0")
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        lam = _column(X)
        return np.column_stack([
            ground_state_entropy(self.g, lam),
            ground_state_concurrence(self.g, lam),
            deviation.correlation_energy(lam, self.g) * np.ones_like(lam),
        ])

    def get_feature_names_out(self, input_features=None):
        return np.array(["S_vN", "C", "E_corr"], dtype=object)


class ProportionalScaler(RegressorMixin, BaseEstimator):
    """Least-squares scale ``alpha`` with ``y ~ alpha * X``.

    With ``sample_weight`` set to quadrature weights of an abscissa, ``alpha_``
    is the ratio of the discretized integrals int y M / int M^2
    (``denominator="squared"``) or int y M / int M (``"plain"``).
    """

    def __init__(self, denominator="squared"):
        self.denominator = denominator

    def fit(self, X, y, sample_weight=None):
        m = _column(X)
        y = check_array(y, ensure_2d=False, dtype=float)
        check_consistent_length(m, y)
        w = np.ones_like(m) if sample_weight is None else np.asarray(sample_weight, dtype=float)
        check_consistent_length(m, w)
        if Denominator(self.denominator) is Denominator.SQUARED:
            den = np.sum(w * m * m)
        else:
            den = np.sum(w * m)
        if den == 0.0:
            raise SingularBasis("measure vanishes on every sample")
        self.alpha_ = float(np.sum(w * y * m) / den)
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "alpha_")
        return self.alpha_ * _column(X)

    def residual(self, X, y):
        """y - alpha * X."""
        return np.asarray(y, dtype=float) - self.predict(X)


class LogLinearRegressor(RegressorMixin, BaseEstimator):
    """Least squares in the basis {E, E ln E}; ``X`` holds E_corr > 0."""

    def fit(self, X, y):
        e = _column(X)
        y = check_array(y, ensure_2d=False, dtype=float)
        check_consistent_length(e, y)
        if np.any(e <= 0.0):
            raise NonPositive("E_corr must be > 0")
        fit = _lstsq_log_linear(e, y)
        self.a_coef_, self.b_coef_, self.rss_ = fit.a_coef, fit.b_coef, fit.rss
        self.coef_ = np.array([fit.a_coef, fit.b_coef])
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        e = _column(X)
        return self.a_coef_ * e + self.b_coef_ * e * np.log(e)
