"""scikit-learn style wrapper: one row of order counts in, one scorecard out."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from numbers import Real

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._errors import InvalidArgumentError, Undefined
from .distribution import OrderDistribution, from_count_vector, from_probs
from .optimality import DEFAULT_ENUM_CAP, SwapReport, analyze
from .permutohedron import build_permutohedron

FEATURES = ("avg_d", "avg_d_random", "avg_d_min", "omega")


def check_order_matrix(X, n: int) -> np.ndarray:
    """Validate a 2-D array with one column per order (``n!`` columns).

    Entries must be finite and non-negative and each row must have a
    positive total. Returns an object array so exact values survive.
    """
    X = np.asarray(X, dtype=object)
    if X.ndim == 1:
        raise InvalidArgumentError("expected a 2-D array; reshape a single row with X.reshape(1, -1)")
    if X.ndim != 2:
        raise InvalidArgumentError(f"expected a 2-D array, got {X.ndim} dimensions")
    N = factorial(n)
    if X.shape[1] != N:
        raise InvalidArgumentError(f"expected {N} columns for n={n}, got {X.shape[1]}")
    if X.shape[0] == 0:
        raise InvalidArgumentError("X has no rows")
    for row in X:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (Real, Fraction)) or not np.isfinite(float(x)):
                raise InvalidArgumentError(f"entries must be finite numbers, got {x!r}")
            if x < 0:
                raise InvalidArgumentError("entries must be non-negative")
        if sum(row) <= 0:
            raise InvalidArgumentError("every row needs a positive total")
    return X


def row_distribution(row, n: int, limit_denominator: int | None = None) -> OrderDistribution:
    """Integer rows are counts; anything else is normalised exactly."""
    if all(isinstance(x, (int, np.integer)) or float(x).is_integer() for x in row):
        return from_count_vector(n, [int(x) for x in row])
    values = [Fraction(x) for x in row]
    if limit_denominator is not None:
        values = [v.limit_denominator(limit_denominator) for v in values]
    total = sum(values)
    return from_probs(n, [v / total for v in values])


class SwapOptimality(TransformerMixin, BaseEstimator):
    """Average swap distance, its baselines and the optimality score per row.

    ``transform`` returns a float array with columns ``avg_d``,
    ``avg_d_random``, ``avg_d_min`` and ``omega`` (NaN where undefined).
    The exact reports of the fitted rows are kept in ``reports_``.
    """

    def __init__(self, n=3, enum_cap=DEFAULT_ENUM_CAP, verify_bruteforce=None, limit_denominator=None):
        self.n = n
        self.enum_cap = enum_cap
        self.verify_bruteforce = verify_bruteforce
        self.limit_denominator = limit_denominator

    def _reports(self, X) -> list[SwapReport]:
        X = check_order_matrix(X, self.n)
        graph = build_permutohedron(self.n)
        return [
            analyze(
                graph,
                row_distribution(row, self.n, self.limit_denominator),
                verify_bruteforce=self.verify_bruteforce,
                enum_cap=self.enum_cap,
            )
            for row in X
        ]

    def fit(self, X, y=None):
        self.reports_ = self._reports(X)
        self.n_features_in_ = factorial(self.n)
        return self

    def transform(self, X):
        check_is_fitted(self, "reports_")
        return self._as_array(self._reports(X))

    def fit_transform(self, X, y=None, **fit_params):
        self.fit(X)
        return self._as_array(self.reports_)

    @staticmethod
    def _as_array(reports) -> np.ndarray:
        return np.array(
            [
                [
                    float(r.avg_d),
                    float(r.avg_d_random),
                    float(r.avg_d_min),
                    np.nan if isinstance(r.omega, Undefined) else float(r.omega),
                ]
                for r in reports
            ],
            dtype=float,
        )

    def get_feature_names_out(self, input_features=None):
        return np.array(FEATURES, dtype=object)
