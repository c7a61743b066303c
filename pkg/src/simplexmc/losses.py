"""The three simplex loss functions and their pointwise subgradients.

All losses compare a score vector v in R^(T-1) against the code vector
of the true label y:

    s-ls:    ||c_y - v||^2
    sc-svm:  sum over y' != y of max(1/(T-1) + <c_y', v>, 0)
    sh-svm:  max(1 - <c_y, v>, 0)

For T = 2 all three reduce to their binary counterparts under the
+1/-1 coding: sc-svm and sh-svm become the hinge max(1 - y f, 0) and
s-ls becomes (1 - y f)^2.
"""

from __future__ import annotations

import numpy as np

from .coding import CodeBook
from .errors import ConfigError, DataError

S_LS = "s-ls"
SC_SVM = "sc-svm"
SH_SVM = "sh-svm"
LOSS_KINDS = (S_LS, SC_SVM, SH_SVM)


def check_kind(kind: str) -> str:
    if kind not in LOSS_KINDS:
        raise ConfigError(f"unknown loss kind {kind!r}; expected one of {LOSS_KINDS}")
    return kind


def _check_label(codebook: CodeBook, y: int):
    if not 1 <= y <= codebook.T:
        raise DataError(f"label {y} out of range 1..{codebook.T}")


def loss_value(kind: str, codebook: CodeBook, y: int, v) -> float:
    check_kind(kind)
    _check_label(codebook, y)
    v = np.asarray(v, dtype=float)
    if v.shape != (codebook.dim,):
        raise DataError(f"score vector has shape {v.shape}, expected ({codebook.dim},)")
    if kind == S_LS:
        r = codebook.codes[y - 1] - v
        return float(r @ r)
    if kind == SC_SVM:
        margins = 1.0 / (codebook.T - 1) + codebook.codes @ v
        margins[y - 1] = 0.0  # only wrong-class terms enter the sum
        return float(np.sum(np.maximum(margins, 0.0)))
    return float(max(1.0 - codebook.codes[y - 1] @ v, 0.0))


def subgradient_score(kind: str, codebook: CodeBook, y: int, v) -> np.ndarray:
    """A subgradient of the loss with respect to the score vector v.

    At hinge kinks (where the max terms sit exactly at zero) any element
    of the subdifferential is valid; the strict-inequality activation
    rules below pick the zero extension. For sc-svm the active set is
    I = {y' != y : <c_y', v> > -1/(T-1)} and the subgradient is
    sum of c_k over k in I; for sh-svm it is -c_y when <c_y, v> < 1,
    else zero.
    """
    check_kind(kind)
    _check_label(codebook, y)
    v = np.asarray(v, dtype=float)
    if v.shape != (codebook.dim,):
        raise DataError(f"score vector has shape {v.shape}, expected ({codebook.dim},)")
    if kind == S_LS:
        return -2.0 * (codebook.codes[y - 1] - v)
    if kind == SC_SVM:
        active = codebook.codes @ v > -1.0 / (codebook.T - 1)
        active[y - 1] = False
        return codebook.codes[active].sum(axis=0)
    if codebook.codes[y - 1] @ v < 1.0:
        return -codebook.codes[y - 1]
    return np.zeros(codebook.dim)


def subgradient_linear(kind: str, codebook: CodeBook, y: int, W, x) -> np.ndarray:
    """A subgradient of V(y, W x) with respect to the weight matrix W.

    Equals subgradient_score at v = W x, outer-multiplied by x. Returned
    as a (T-1) x p matrix matching the shape of W.
    """
    W = np.asarray(W, dtype=float)
    x = np.asarray(x, dtype=float)
    if W.ndim != 2 or W.shape[0] != codebook.dim:
        raise DataError(f"W has shape {W.shape}, expected ({codebook.dim}, p)")
    if x.shape != (W.shape[1],):
        raise DataError(f"x has shape {x.shape}, expected ({W.shape[1]},)")
    g = subgradient_score(kind, codebook, y, W @ x)
    return np.outer(g, x)
