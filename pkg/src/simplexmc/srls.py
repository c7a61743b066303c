"""Batch simplex regularized least squares.

Kernel form: the coefficient matrix A (n x (T-1)) solves

    (K + lambda n I) A = Yhat,

where row i of Yhat is the code vector of label y_i. Linear form: the
weight matrix W ((T-1) x p) solves (X^T X + lambda n I) W^T = X^T Yhat.

The leave-one-out predictions of the kernel solver have a closed form,

    f_loo = Yhat - C ./ diag(Kinv),   Kinv = (K + lambda n I)^{-1},
    C = Kinv Yhat,

so the whole 100-value regularization path needs one eigendecomposition
of K and O(n^2 T) extra work per lambda value, with no retraining.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .coding import CodeBook, decode_batch
from .errors import ConfigError, DataError, NumericalError
from .kernels import GramMatrix, KernelSpec, cross_gram

PATH_GRID_SIZE = 100
# floor for lambda_min relative to lambda_max; PSD round-off commonly
# leaves tiny negative eigenvalues on rank-deficient Grams
PATH_MIN_RATIO = 1e-10


def check_labels(codebook: CodeBook, labels) -> np.ndarray:
    y = np.asarray(labels)
    if y.ndim != 1 or y.size == 0:
        raise DataError(f"labels must be a non-empty 1-d array, got shape {y.shape}")
    if not np.issubdtype(y.dtype, np.integer):
        yf = np.asarray(labels, dtype=float)
        if not np.all(yf == np.round(yf)):
            raise DataError("labels must be integers")
        y = yf.astype(int)
    if y.min() < 1 or y.max() > codebook.T:
        raise DataError(f"labels must lie in 1..{codebook.T}")
    return y.astype(int)


def label_matrix(codebook: CodeBook, labels) -> np.ndarray:
    """The n x (T-1) matrix whose i-th row is the code vector of y_i."""
    y = check_labels(codebook, labels)
    return codebook.codes[y - 1]


def _check_lambda(lam) -> float:
    lam = float(lam)
    if not np.isfinite(lam) or lam <= 0:
        raise ConfigError(f"lambda must be a positive finite number, got {lam!r}")
    return lam


@dataclass(frozen=True)
class KernelModel:
    """Representer coefficients A with everything needed to predict."""

    A: np.ndarray
    codebook: CodeBook
    lam: float
    spec: KernelSpec
    X_train: np.ndarray | None = None


@dataclass(frozen=True)
class LinearModel:
    W: np.ndarray
    codebook: CodeBook
    lam: float


def fit_kernel(K: GramMatrix, labels, codebook: CodeBook, lam,
               X_train=None) -> KernelModel:
    """Solve (K + lambda n I) A = Yhat by Cholesky factorization."""
    lam = _check_lambda(lam)
    Yhat = label_matrix(codebook, labels)
    n = K.n
    if Yhat.shape[0] != n:
        raise DataError(f"Gram is {n} x {n} but there are {Yhat.shape[0]} labels")
    M = K.K + lam * n * np.eye(n)
    try:
        cho = scipy.linalg.cho_factor(M, lower=True, check_finite=False)
        A = scipy.linalg.cho_solve(cho, Yhat, check_finite=False)
    except scipy.linalg.LinAlgError as exc:
        raise NumericalError(f"kernel system factorization failed: {exc}") from exc
    if not np.all(np.isfinite(A)):
        raise NumericalError("kernel solve produced non-finite coefficients")
    with np.errstate(invalid="ignore", over="ignore"):
        resid = np.linalg.norm(M @ A - Yhat)
    if not resid <= 1e-8 * max(np.linalg.norm(Yhat), 1e-30):
        # the negated form also trips on a NaN residual (non-finite K)
        raise NumericalError(f"kernel solve residual too large: {resid:e}")
    if X_train is not None:
        X_train = np.asarray(X_train, dtype=float)
    return KernelModel(A=A, codebook=codebook, lam=lam, spec=K.spec, X_train=X_train)


def fit_linear(X, labels, codebook: CodeBook, lam) -> LinearModel:
    """Solve (X^T X + lambda n I) W^T = X^T Yhat by Cholesky factorization."""
    lam = _check_lambda(lam)
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DataError(f"X must be 2-d, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise DataError("features contain non-finite values")
    Yhat = label_matrix(codebook, labels)
    n, p = X.shape
    if Yhat.shape[0] != n:
        raise DataError(f"X has {n} rows but there are {Yhat.shape[0]} labels")
    M = X.T @ X + lam * n * np.eye(p)
    rhs = X.T @ Yhat
    try:
        cho = scipy.linalg.cho_factor(M, lower=True, check_finite=False)
        Wt = scipy.linalg.cho_solve(cho, rhs, check_finite=False)
    except scipy.linalg.LinAlgError as exc:
        raise NumericalError(f"linear system factorization failed: {exc}") from exc
    if not np.all(np.isfinite(Wt)):
        raise NumericalError("linear solve produced non-finite weights")
    resid = np.linalg.norm(M @ Wt - rhs)
    if not resid <= 1e-8 * max(np.linalg.norm(rhs), 1e-30):
        raise NumericalError(f"linear solve residual too large: {resid:e}")
    return LinearModel(W=Wt.T, codebook=codebook, lam=lam)


def predict(model, X_new) -> np.ndarray:
    """Score matrix f(x) for new points, one row per point."""
    X_new = np.asarray(X_new, dtype=float)
    if isinstance(model, LinearModel):
        if X_new.ndim != 2 or X_new.shape[1] != model.W.shape[1]:
            raise DataError(
                f"expected m x {model.W.shape[1]} features, got shape {X_new.shape}"
            )
        return X_new @ model.W.T
    if model.X_train is None:
        raise DataError("kernel model has no stored training inputs; "
                        "use predict_gram with a precomputed cross Gram")
    return cross_gram(model.spec, model.X_train, X_new) @ model.A


def predict_gram(model: KernelModel, K_cross) -> np.ndarray:
    """Scores from a precomputed m x n cross Gram against the training set."""
    K_cross = np.asarray(K_cross, dtype=float)
    if K_cross.ndim != 2 or K_cross.shape[1] != model.A.shape[0]:
        raise DataError(
            f"cross Gram must be m x {model.A.shape[0]}, got shape {K_cross.shape}"
        )
    return K_cross @ model.A


def classify(model, X_new) -> np.ndarray:
    return decode_batch(model.codebook, predict(model, X_new))


def loo_errors(K: GramMatrix, labels, codebook: CodeBook, lam):
    """Closed-form leave-one-out predictions and misclassification rate.

    Returns (f_loo, rate) with f_loo the n x (T-1) matrix of held-out
    predictions. Row i equals what a model trained on the other n-1
    points (with the same absolute regularizer lambda*n) predicts at x_i.
    """
    lam = _check_lambda(lam)
    y = check_labels(codebook, labels)
    Yhat = codebook.codes[y - 1]
    n = K.n
    if y.shape[0] != n:
        raise DataError(f"Gram is {n} x {n} but there are {y.shape[0]} labels")
    M = K.K + lam * n * np.eye(n)
    try:
        cho = scipy.linalg.cho_factor(M, lower=True, check_finite=False)
        Kinv = scipy.linalg.cho_solve(cho, np.eye(n), check_finite=False)
    except scipy.linalg.LinAlgError as exc:
        raise NumericalError(f"LOO inverse failed: {exc}") from exc
    d = np.diag(Kinv)
    if np.any(d <= 0) or not np.all(np.isfinite(d)):
        raise NumericalError("inverse has non-positive diagonal; Gram is not PSD")
    f_loo = Yhat - (Kinv @ Yhat) / d[:, None]
    rate = float(np.mean(decode_batch(codebook, f_loo) != y))
    return f_loo, rate


def kernel_objective(K: GramMatrix, labels, codebook: CodeBook, A, lam) -> float:
    """Tikhonov objective of a kernel coefficient matrix with the
    least-squares loss: (1/n) sum ||c_{y_i} - (K A)_i||^2 + lam tr(A^T K A)."""
    lam = _check_lambda(lam)
    Yhat = label_matrix(codebook, labels)
    A = np.asarray(A, dtype=float)
    KA = K.K @ A
    resid = Yhat - KA
    return float(np.sum(resid * resid) / K.n + lam * np.sum(A * KA))


def lambda_grid(K: GramMatrix, num: int = PATH_GRID_SIZE) -> np.ndarray:
    """Descending log grid between the extreme eigenvalues of K.

    lambda_max is the largest eigenvalue, lambda_min the smallest one
    clamped below by 1e-10 * lambda_max. Shared by the regularization
    path and the hold-out selection grids so all solvers search the
    same range.
    """
    if num < 1:
        raise ConfigError(f"need at least one lambda value, got {num}")
    evals = np.linalg.eigvalsh(K.K)
    return _grid_from_evals(evals, num)


def _grid_from_evals(evals, num) -> np.ndarray:
    lmax = float(evals[-1])
    if not np.isfinite(lmax) or lmax <= 0:
        raise NumericalError("Gram has no positive eigenvalue")
    lmin = max(float(evals[0]), PATH_MIN_RATIO * lmax)
    if num == 1:
        return np.array([lmax])
    return np.logspace(np.log10(lmax), np.log10(lmin), num)


@dataclass(frozen=True)
class RegPath:
    """LOO error rates over a descending log grid of lambda values.

    Keeps the eigendecomposition of K so per-lambda coefficient matrices
    can be recovered without refactoring.
    """

    lambdas: np.ndarray
    loo_rates: np.ndarray
    evals: np.ndarray
    Q: np.ndarray
    Yhat: np.ndarray

    @property
    def n(self) -> int:
        return self.Q.shape[0]

    def coefficients_at(self, lam) -> np.ndarray:
        """A(lambda) = Q (Lambda + n lambda I)^{-1} Q^T Yhat from the cache."""
        lam = _check_lambda(lam)
        w = 1.0 / (self.evals + self.n * lam)
        return self.Q @ (w[:, None] * (self.Q.T @ self.Yhat))


def reg_path(K: GramMatrix, labels, codebook: CodeBook,
             num_lambdas: int = PATH_GRID_SIZE) -> RegPath:
    """LOO rates for a log grid of lambda values from one eigendecomposition.

    The grid spans [lambda_min, lambda_max] = the extreme eigenvalues of K,
    with lambda_min clamped below by 1e-10 * lambda_max. Cost is one O(n^3)
    eigendecomposition plus O(num_lambdas n^2 T); no per-lambda refits.
    """
    y = check_labels(codebook, labels)
    n = K.n
    if y.shape[0] != n:
        raise DataError(f"Gram is {n} x {n} but there are {y.shape[0]} labels")
    if num_lambdas < 1:
        raise ConfigError(f"need at least one lambda value, got {num_lambdas}")
    Yhat = codebook.codes[y - 1]
    try:
        evals, Q = np.linalg.eigh(K.K)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed: {exc}") from exc
    lambdas = _grid_from_evals(evals, num_lambdas)

    # Decode scores for all lambdas at once. With Kinv = (K + n lam I)^{-1},
    # the LOO scores are S0 - (Kinv S0) / diag(Kinv) where S0 = Yhat codes^T;
    # dividing by the (positive) diagonal does not change the argmax row-wise,
    # but keeping it makes these the literal scores of f_loo.
    w_all = 1.0 / (evals[None, :] + n * lambdas[:, None])       # L x n
    diag_all = (Q * Q) @ w_all.T                                # n x L
    if np.any(diag_all <= 0):
        raise NumericalError("inverse has non-positive diagonal; Gram is not PSD")
    S0 = Yhat @ codebook.codes.T                                # n x T
    Mt = Q.T @ S0
    L = lambdas.size
    B = (w_all.T[:, :, None] * Mt[:, None, :]).reshape(n, L * codebook.T)
    scores = (Q @ B).reshape(n, L, codebook.T)
    scores /= diag_all[:, :, None]
    np.subtract(S0[:, None, :], scores, out=scores)
    pred = np.argmax(scores, axis=2) + 1
    rates = np.mean(pred != y[:, None], axis=0)
    return RegPath(lambdas=lambdas, loo_rates=rates, evals=evals, Q=Q, Yhat=Yhat)


def select_lambda_loo(path: RegPath):
    """The lambda with the smallest LOO rate; ties go to the larger lambda."""
    if path.lambdas.size == 0:
        raise ConfigError("empty regularization path")
    i = int(np.argmin(path.loo_rates))  # first minimum = largest lambda
    return float(path.lambdas[i]), float(path.loo_rates[i])
