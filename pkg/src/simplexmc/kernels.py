"""Kernel evaluation, Gram matrices, and the RBF bandwidth heuristic."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist, pdist

from .errors import ConfigError, DataError

# above this many points the sigma heuristic works on a fixed-seed subsample
_HEURISTIC_CAP = 5000


@dataclass(frozen=True)
class KernelSpec:
    """Kernel configuration: kind is 'linear' or 'rbf'.

    The rbf kernel is exp(-||x - x'||^2 / (2 sigma^2)).
    """

    kind: str
    sigma: float | None = None

    def __post_init__(self):
        if self.kind not in ("linear", "rbf"):
            raise ConfigError(f"unknown kernel kind {self.kind!r}")
        if self.kind == "rbf":
            if self.sigma is None or not np.isfinite(self.sigma) or self.sigma <= 0:
                raise ConfigError(f"rbf kernel needs sigma > 0, got {self.sigma!r}")


@dataclass(frozen=True)
class GramMatrix:
    """An evaluated n x n kernel matrix together with its spec."""

    K: np.ndarray
    spec: KernelSpec

    def __post_init__(self):
        self.K.setflags(write=False)

    @property
    def n(self) -> int:
        return self.K.shape[0]


def _check_features(X, name="features"):
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DataError(f"{name} must be a 2-d matrix, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise DataError(f"{name} contain non-finite values")
    return X


def gram(spec: KernelSpec, X) -> GramMatrix:
    """Evaluate the n x n Gram matrix K_ij = k(x_i, x_j).

    Output is exactly symmetric; the rbf diagonal is exactly 1.
    """
    X = _check_features(X)
    if X.shape[0] < 1 or X.shape[1] < 1:
        raise DataError(f"need at least one point and one feature, got shape {X.shape}")
    if spec.kind == "linear":
        K = X @ X.T
        K = (K + K.T) / 2.0
    else:
        sq = cdist(X, X, "sqeuclidean")
        sq = (sq + sq.T) / 2.0
        K = np.exp(-sq / (2.0 * spec.sigma**2))
        np.fill_diagonal(K, 1.0)
    return GramMatrix(K=K, spec=spec)


def cross_gram(spec: KernelSpec, X_train, X_test) -> np.ndarray:
    """m x n matrix of k(x_test_i, x_train_j)."""
    X_train = _check_features(X_train, "training features")
    X_test = _check_features(X_test, "test features")
    if X_train.shape[1] != X_test.shape[1]:
        raise DataError(
            f"feature dimension mismatch: train has {X_train.shape[1]}, "
            f"test has {X_test.shape[1]}"
        )
    if spec.kind == "linear":
        return X_test @ X_train.T
    sq = cdist(X_test, X_train, "sqeuclidean")
    return np.exp(-sq / (2.0 * spec.sigma**2))


def rbf_sigma_heuristic(X) -> float:
    """Bandwidth heuristic: 25th percentile of pairwise distances.

    The multiset is {||x_i - x_j|| : i < j, x_i != x_j}; coincident pairs
    are excluded. The percentile uses the lower-interpolation convention:
    sort ascending and take the element at 1-based index ceil(0.25 m),
    the smallest value with at least 25% of the mass at or below it.
    Above 5000 points a fixed-seed uniform subsample of 5000 is used.
    """
    X = _check_features(X)
    n = X.shape[0]
    if n < 2:
        raise DataError("sigma heuristic needs at least two points")
    if n > _HEURISTIC_CAP:
        idx = np.random.default_rng(0).choice(n, size=_HEURISTIC_CAP, replace=False)
        X = X[np.sort(idx)]
    d = pdist(X)
    d = d[d > 0.0]
    if d.size == 0:
        raise DataError("all points are identical; sigma heuristic is degenerate")
    d.sort()
    k = int(np.ceil(0.25 * d.size)) - 1
    return float(d[max(k, 0)])
