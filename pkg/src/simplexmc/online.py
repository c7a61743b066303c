"""Online training of linear models by projected stochastic subgradient.

Each step shrinks, takes a subgradient step on one example, and projects
back onto the Frobenius ball of radius 1/sqrt(lambda):

    W_tmp = (1 - eta_i lambda) W - eta_i dV(y, W x)
    W_new = min(1, (1/sqrt(lambda)) / ||W_tmp||_F) W_tmp

with the default learning rate eta_i = 1/(lambda i). The ball invariant
||W||_F <= 1/sqrt(lambda) therefore holds after every step. Training
shuffles the example order once per epoch with a seeded generator, so
runs are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .coding import CodeBook
from .errors import ConfigError, DataError, NumericalError
from .losses import check_kind, loss_value, subgradient_score
from .srls import LinearModel, check_labels, _check_lambda


def pegasos_rate(i: int, lam: float) -> float:
    return 1.0 / (lam * i)


@dataclass(frozen=True)
class OnlineState:
    W: np.ndarray              # (T-1) x p
    i: int                     # completed step count
    lam: float
    kind: str
    rate: Callable[[int, float], float] = pegasos_rate

    @property
    def radius(self) -> float:
        return 1.0 / np.sqrt(self.lam)


def init_state(codebook: CodeBook, p: int, lam, kind: str,
               rate: Callable[[int, float], float] = pegasos_rate) -> OnlineState:
    """Fresh state with W = 0, which lies inside every Frobenius ball."""
    lam = _check_lambda(lam)
    check_kind(kind)
    if p < 1:
        raise ConfigError(f"feature dimension must be positive, got {p}")
    return OnlineState(W=np.zeros((codebook.dim, p)), i=0, lam=lam,
                       kind=kind, rate=rate)


def sgd_step(state: OnlineState, x, y: int, codebook: CodeBook) -> OnlineState:
    """One shrink-step-project update on a single example."""
    x = np.asarray(x, dtype=float)
    if x.shape != (state.W.shape[1],):
        raise DataError(f"x has shape {x.shape}, expected ({state.W.shape[1]},)")
    i = state.i + 1
    eta = state.rate(i, state.lam)
    g = subgradient_score(state.kind, codebook, y, state.W @ x)
    W_tmp = (1.0 - eta * state.lam) * state.W - eta * np.outer(g, x)
    norm = float(np.linalg.norm(W_tmp))
    if not np.isfinite(norm):
        raise NumericalError(
            f"non-finite weights after step {i} (eta={eta:g}, lambda={state.lam:g})"
        )
    r = state.radius
    W_new = W_tmp if norm <= r else (r / norm) * W_tmp
    return replace(state, W=W_new, i=i)


def train_online(dataset, codebook: CodeBook, lam, epochs: int, kind: str,
                 seed: int) -> LinearModel:
    """Run epochs of shuffled SGD passes and return the final linear model.

    dataset is any object with X (n x p) and y (labels 1..T) attributes.
    Deterministic given (dataset, lam, epochs, kind, seed).
    """
    if epochs < 1:
        raise ConfigError(f"epochs must be >= 1, got {epochs}")
    X = np.asarray(dataset.X, dtype=float)
    y = check_labels(codebook, dataset.y)
    if X.ndim != 2 or X.shape[0] == 0:
        raise DataError("empty dataset")
    if X.shape[0] != y.shape[0]:
        raise DataError(f"{X.shape[0]} rows but {y.shape[0]} labels")
    state = init_state(codebook, X.shape[1], lam, kind)
    rng = np.random.default_rng(seed)
    for _ in range(epochs):
        for j in rng.permutation(X.shape[0]):
            state = sgd_step(state, X[j], int(y[j]), codebook)
    return LinearModel(W=state.W, codebook=codebook, lam=state.lam)


def empirical_objective(X, y, codebook: CodeBook, kind: str, W, lam) -> float:
    """Regularized empirical risk (1/n) sum V(y_i, W x_i) + lambda ||W||_F^2."""
    X = np.asarray(X, dtype=float)
    W = np.asarray(W, dtype=float)
    y = check_labels(codebook, y)
    scores = X @ W.T
    total = sum(loss_value(kind, codebook, int(yi), s)
                for yi, s in zip(y, scores))
    return float(total / X.shape[0] + lam * np.sum(W * W))
