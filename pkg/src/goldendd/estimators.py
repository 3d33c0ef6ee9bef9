"""scikit-learn style wrappers around the greedy map and the density routines."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .greedy import GOLDEN, ClassicalMap, DeletedDigitMap, DigitSet, support_index, validate
from .measure import birkhoff, fiber_oracle, golden_density, tower_density
from .qbeta import QBeta, as_qbeta

__all__ = ["GreedyDigitTransformer", "InvariantDensity", "BirkhoffDensityEstimator"]


def _column(X, exact: bool):
    """Flatten ``X`` of shape (n,) or (n, 1) into a list of points."""
    if exact:
        arr = np.asarray(X, dtype=object)
        if arr.ndim == 2:
            if arr.shape[1] != 1:
                raise ValueError(f"expected a single feature, got shape {arr.shape}")
            arr = arr[:, 0]
        elif arr.ndim != 1:
            raise ValueError(f"expected 1-D or (n, 1) input, got shape {arr.shape}")
        return [as_qbeta(v) for v in arr]
    arr = check_array(X, ensure_2d=False, dtype=np.float64)
    if arr.ndim == 2:
        if arr.shape[1] != 1:
            raise ValueError(f"expected a single feature, got shape {arr.shape}")
        arr = arr[:, 0]
    return arr.tolist()


class GreedyDigitTransformer(TransformerMixin, BaseEstimator):
    """Map points to their first ``n_digits`` greedy digits.

    ``system`` is "golden" (exact, digits {0,2,3} on [0,2)), "classical" or
    "deleted" (floats, using ``beta`` and ``digits``).
    """

    def __init__(self, n_digits=16, system="golden", beta=None, digits=(0, 2, 3)):
        self.n_digits = n_digits
        self.system = system
        self.beta = beta
        self.digits = digits

    def fit(self, X=None, y=None):
        if not isinstance(self.n_digits, (int, np.integer)) or self.n_digits < 0:
            raise ValueError("n_digits must be a non-negative integer")
        if self.system == "golden":
            self.map_ = GOLDEN
            self.digit_set_ = DigitSet((0, 2, 3))
        elif self.system == "classical":
            if self.beta is None:
                raise ValueError("classical system needs beta")
            self.map_ = ClassicalMap(float(self.beta))
            self.digit_set_ = self.map_.digit_set
        elif self.system == "deleted":
            if self.beta is None:
                raise ValueError("deleted-digit system needs beta")
            self.digit_set_ = DigitSet(tuple(float(a) for a in self.digits), float(self.beta))
            report = validate(self.digit_set_)
            if not report:
                raise ValueError("; ".join(report.violations))
            self.map_ = DeletedDigitMap(self.digit_set_)
        else:
            raise ValueError(f"unknown system {self.system!r}")
        self.support_index_, self.support_ = support_index(self.digit_set_)
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "map_")
        pts = _column(X, exact=self.system == "golden")
        out = np.zeros((len(pts), self.n_digits), dtype=float if self.system == "deleted" else int)
        for i, x in enumerate(pts):
            for k in range(self.n_digits):
                d, x = self.map_.step(x)
                out[i, k] = d
        return out


class InvariantDensity(BaseEstimator):
    """Exact invariant density of the golden map, built by one of three routes."""

    def __init__(self, method="closed"):
        self.method = method

    def fit(self, X=None, y=None):
        builders = {"closed": golden_density, "fiber": fiber_oracle, "tower": tower_density}
        if self.method not in builders:
            raise ValueError(f"unknown method {self.method!r}")
        self.density_ = builders[self.method]()
        self.breakpoints_ = self.density_.breakpoints
        self.n_features_in_ = 1
        return self

    def predict(self, X, exact=False):
        check_is_fitted(self, "density_")
        pts = _column(X, exact=exact or not _is_numeric(X))
        vals = [self.density_(as_qbeta(x)) for x in pts]
        if exact:
            return np.array(vals, dtype=object)
        return np.array([float(v) for v in vals])


def _is_numeric(X) -> bool:
    arr = np.asarray(X, dtype=object).ravel()
    return not any(isinstance(v, QBeta) for v in arr)


class BirkhoffDensityEstimator(BaseEstimator):
    """Histogram estimate of the invariant density from float orbits.

    ``fit`` optionally takes starting points (first shard uses ``X[0]``).
    ``score`` is minus the largest gap between observed bin frequencies and
    the exact bin masses, so larger is better.
    """

    def __init__(self, n_iter=10 ** 6, bins="pieces", refine=1, n_shards=1, random_state=0):
        self.n_iter = n_iter
        self.bins = bins
        self.refine = refine
        self.n_shards = n_shards
        self.random_state = random_state

    def fit(self, X=None, y=None):
        start = None
        if X is not None:
            pts = _column(X, exact=False)
            if pts:
                start = pts[0]
        seed = 0 if self.random_state is None else int(self.random_state)
        res = birkhoff(start, self.n_iter, self.bins, seed, self.n_shards, self.refine)
        self.result_ = res
        self.bin_edges_ = np.array([float(e) for e in res.edges])
        self.frequencies_ = res.observed
        self.expected_ = np.asarray(res.expected)
        self.density_ = self.frequencies_ / np.diff(self.bin_edges_)
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "density_")
        pts = np.asarray(_column(X, exact=False))
        idx = np.searchsorted(self.bin_edges_, pts, side="right") - 1
        inside = (idx >= 0) & (idx < len(self.density_))
        out = np.zeros(len(pts))
        out[inside] = self.density_[idx[inside]]
        return out

    def score(self, X=None, y=None):
        check_is_fitted(self, "density_")
        return -self.result_.max_abs_error
