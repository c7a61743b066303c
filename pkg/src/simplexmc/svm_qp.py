"""Dual quadratic programs for the two simplex SVM variants.

Both duals are box-constrained concave QPs solved by cyclic coordinate
ascent with exact one-dimensional updates. Convergence is certified by
the maximum KKT violation: at an interior coordinate the gradient must
vanish, at the lower bound it must be <= 0, at the upper bound >= 0
(all up to tol).

Cone variant (one dual variable per wrong class and point):

    max  -1/2 sum alpha_i^y K_ij G_{yy'} alpha_j^{y'}
         + 1/(T-1) sum alpha_i^y
    s.t. alpha_i^{y_i} = 0,  0 <= alpha_i^y <= C0 for y != y_i,

with C0 = 1/(2 n lambda) and representer coefficients
c_i = -sum_{y != y_i} alpha_i^y c_y.

Half-space variant (one variable per point, no hull constraint):

    max  -1/2 sum alpha_i K_ij G_{y_i y_j} alpha_j + sum alpha_i
    s.t. 0 <= alpha_i <= C0,

with c_i = alpha_i c_{y_i}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coding import CodeBook
from .errors import ConfigError, DataError, NumericalError
from .kernels import GramMatrix
from .srls import KernelModel, check_labels, _check_lambda

DEFAULT_TOL = 1e-6
# quadratic coefficients at or below this are treated as flat directions
DEGENERATE_DIAG = 1e-14


@dataclass(frozen=True)
class ScSvmDual:
    alpha: np.ndarray          # n x T, alpha[i, y_i - 1] == 0
    C0: float
    objective: float
    converged: bool
    sweeps: int
    kkt_violation: float


@dataclass(frozen=True)
class ShSvmDual:
    alpha: np.ndarray          # length n
    C0: float
    objective: float
    converged: bool
    sweeps: int
    kkt_violation: float


def _box_violation(alpha, grad, C0):
    """Max KKT violation over a box-constrained maximization iterate."""
    at_lo = alpha <= 0.0
    at_hi = alpha >= C0
    v = np.abs(grad)
    v = np.where(at_lo, np.maximum(grad, 0.0), v)
    v = np.where(at_hi, np.maximum(-grad, 0.0), v)
    return float(np.max(v)) if v.size else 0.0


def _coordinate_step(a, g, diag, C0):
    """Exact 1-d maximizer of the coordinate quadratic, clipped to [0, C0]."""
    if diag > DEGENERATE_DIAG:
        target = a + g / diag
    elif g > 0:
        target = C0
    elif g < 0:
        target = 0.0
    else:
        return a
    return min(max(target, 0.0), C0)


def fit_sc_svm(K: GramMatrix, labels, codebook: CodeBook, lam,
               tol: float = DEFAULT_TOL, max_sweeps: int | None = None,
               X_train=None):
    """Train the cone variant; returns (ScSvmDual, KernelModel)."""
    lam = _check_lambda(lam)
    if tol <= 0:
        raise ConfigError(f"tol must be positive, got {tol}")
    y = check_labels(codebook, labels)
    n, T = K.n, codebook.T
    if y.shape[0] != n:
        raise DataError(f"Gram is {n} x {n} but there are {y.shape[0]} labels")
    if max_sweeps is None:
        max_sweeps = 10 * n * T
    Km = K.K
    G = codebook.gram
    Kdiag = np.diag(Km).copy()
    C0 = 1.0 / (2.0 * n * lam)
    lin = 1.0 / (T - 1)
    yi = y - 1

    alpha = np.zeros((n, T))
    U = np.zeros((n, T))           # U = K @ alpha, refreshed every sweep
    free = np.ones((n, T), dtype=bool)
    free[np.arange(n), yi] = False

    violation = np.inf
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        for i in range(n):
            Ui = U[i]
            for t in range(T):
                if t == yi[i]:
                    continue
                g = lin - Ui @ G[:, t]
                new = _coordinate_step(alpha[i, t], g, Kdiag[i], C0)
                delta = new - alpha[i, t]
                if delta != 0.0:
                    alpha[i, t] = new
                    U[:, t] += delta * Km[:, i]
        U = Km @ alpha             # reset incremental drift
        grad = lin - U @ G
        violation = _box_violation(alpha[free], grad[free], C0)
        if violation <= tol:
            break
    converged = violation <= tol

    if not np.all(np.isfinite(alpha)):
        raise NumericalError("coordinate ascent produced non-finite duals")
    obj = float(lin * alpha.sum() - 0.5 * np.sum(alpha * (U @ G)))
    dual = ScSvmDual(alpha=alpha, C0=C0, objective=obj, converged=converged,
                     sweeps=sweeps, kkt_violation=violation)
    A = -(alpha @ codebook.codes)
    model = KernelModel(A=A, codebook=codebook, lam=lam, spec=K.spec,
                        X_train=None if X_train is None
                        else np.asarray(X_train, dtype=float))
    return dual, model


def fit_sh_svm(K: GramMatrix, labels, codebook: CodeBook, lam,
               tol: float = DEFAULT_TOL, max_sweeps: int | None = None,
               X_train=None):
    """Train the half-space variant; returns (ShSvmDual, KernelModel)."""
    lam = _check_lambda(lam)
    if tol <= 0:
        raise ConfigError(f"tol must be positive, got {tol}")
    y = check_labels(codebook, labels)
    n, T = K.n, codebook.T
    if y.shape[0] != n:
        raise DataError(f"Gram is {n} x {n} but there are {y.shape[0]} labels")
    if max_sweeps is None:
        max_sweeps = 10 * n * T
    Yhat = codebook.codes[y - 1]
    Qm = K.K * (Yhat @ Yhat.T)     # Q_ij = K_ij G_{y_i y_j}, PSD
    Qdiag = np.diag(Qm).copy()
    C0 = 1.0 / (2.0 * n * lam)

    alpha = np.zeros(n)
    u = np.zeros(n)                # u = Qm @ alpha
    violation = np.inf
    sweeps = 0
    while sweeps < max_sweeps:
        sweeps += 1
        for i in range(n):
            g = 1.0 - u[i]
            new = _coordinate_step(alpha[i], g, Qdiag[i], C0)
            delta = new - alpha[i]
            if delta != 0.0:
                alpha[i] = new
                u += delta * Qm[:, i]
        u = Qm @ alpha
        violation = _box_violation(alpha, 1.0 - u, C0)
        if violation <= tol:
            break
    converged = violation <= tol

    if not np.all(np.isfinite(alpha)):
        raise NumericalError("coordinate ascent produced non-finite duals")
    obj = float(alpha.sum() - 0.5 * alpha @ u)
    dual = ShSvmDual(alpha=alpha, C0=C0, objective=obj, converged=converged,
                     sweeps=sweeps, kkt_violation=violation)
    A = alpha[:, None] * Yhat
    model = KernelModel(A=A, codebook=codebook, lam=lam, spec=K.spec,
                        X_train=None if X_train is None
                        else np.asarray(X_train, dtype=float))
    return dual, model


def kkt_report(dual, K: GramMatrix, labels, codebook: CodeBook) -> float:
    """Recompute the maximum KKT violation of a dual iterate from scratch."""
    y = check_labels(codebook, labels)
    if isinstance(dual, ScSvmDual):
        if dual.alpha.shape != (K.n, codebook.T):
            raise DataError(f"dual has shape {dual.alpha.shape}, "
                            f"expected ({K.n}, {codebook.T})")
        grad = 1.0 / (codebook.T - 1) - (K.K @ dual.alpha) @ codebook.gram
        free = np.ones_like(dual.alpha, dtype=bool)
        free[np.arange(K.n), y - 1] = False
        return _box_violation(dual.alpha[free], grad[free], dual.C0)
    if isinstance(dual, ShSvmDual):
        if dual.alpha.shape != (K.n,):
            raise DataError(f"dual has shape {dual.alpha.shape}, expected ({K.n},)")
        Yhat = codebook.codes[y - 1]
        grad = 1.0 - (K.K * (Yhat @ Yhat.T)) @ dual.alpha
        return _box_violation(dual.alpha, grad, dual.C0)
    raise ConfigError(f"unknown dual type {type(dual).__name__}")
