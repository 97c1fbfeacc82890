"""Estimator-style wrappers over the functional core.

``Differencer`` is a stateless transformer applying a difference spec to a
one-dimensional series; ``StudentTFitter`` fits the location-scale t
family and exposes the fitted parameters as trailing-underscore
attributes. Both follow the scikit-learn parameter protocol, so
``get_params``, ``set_params``, and ``clone`` work as usual.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .differencing import DiffSpec, Series, diff_n
from .stats import fit_t_mle, t_cdf, t_pdf
from .validation import as_float_array, check_finite

__all__ = ["Differencer", "StudentTFitter"]


def _as_values(X) -> np.ndarray:
    if isinstance(X, Series):
        return X.values
    return check_finite(as_float_array(X, "X"), "X")


class Differencer(TransformerMixin, BaseEstimator):
    """Applies an n-th order difference operator to a 1-D series.

    Parameters
    ----------
    method : {"plain", "ratio", "log"}
        First-order definition applied on the first pass.
    order : int
        Total number of differencing passes.
    k_window : int
        Trailing window length for the ratio method.
    """

    def __init__(self, method: str = "plain", order: int = 1, k_window: int = 5):
        self.method = method
        self.order = order
        self.k_window = k_window

    def _spec(self) -> DiffSpec:
        return DiffSpec(method=self.method, order=self.order, k_window=self.k_window)

    def fit(self, X, y=None) -> "Differencer":
        self._spec()
        _as_values(X)
        return self

    def transform(self, X) -> np.ndarray:
        return diff_n(Series(_as_values(X)), self._spec()).values


class StudentTFitter(BaseEstimator):
    """Maximum-likelihood location-scale Student t fit of a 1-D sample.

    After ``fit``, the attributes ``nu_``, ``location_``, ``scale_``,
    ``log_likelihood_``, ``correlation_``, ``mean_over_std_``, ``n_``, and
    ``normal_limit_`` hold the fit results.
    """

    def __init__(self, diff_spec: Optional[DiffSpec] = None):
        self.diff_spec = diff_spec

    def fit(self, X, y=None) -> "StudentTFitter":
        x = _as_values(X)
        if self.diff_spec is not None:
            x = diff_n(Series(x), self.diff_spec).values
        result = fit_t_mle(x, diff_spec=self.diff_spec)
        self.nu_ = result.nu
        self.location_ = result.location
        self.scale_ = result.scale
        self.log_likelihood_ = result.log_likelihood
        self.correlation_ = result.correlation
        self.mean_over_std_ = result.mean_over_std
        self.n_ = result.n
        self.normal_limit_ = result.normal_limit
        self.result_ = result
        return self

    def _check_fitted(self) -> None:
        if not hasattr(self, "nu_"):
            raise RuntimeError("this StudentTFitter instance is not fitted yet")

    def pdf(self, x):
        self._check_fitted()
        return t_pdf(x, self.nu_, self.location_, self.scale_)

    def cdf(self, x):
        self._check_fitted()
        return t_cdf(x, self.nu_, self.location_, self.scale_)

    def score(self, X, y=None) -> float:
        """Mean log-density of ``X`` under the fitted distribution."""
        self._check_fitted()
        x = _as_values(X)
        return float(np.mean(np.log(t_pdf(x, self.nu_, self.location_, self.scale_))))
