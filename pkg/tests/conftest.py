import numpy as np
import pytest

from simplexmc.coding import build_codebook
from simplexmc.kernels import KernelSpec, gram


def random_problem(rng, n, T, p=4, kernel="linear", sigma=1.5):
    """Random dataset plus its Gram matrix, for solver tests."""
    X = rng.normal(size=(n, p))
    y = rng.integers(1, T + 1, size=n)
    # make sure every label occurs at least once
    y[:T] = np.arange(1, T + 1)
    spec = KernelSpec(kind=kernel, sigma=sigma if kernel == "rbf" else None)
    return X, y, gram(spec, X)


def loo_retrain_oracle(K, y, codebook, lam):
    """Brute-force leave-one-out predictions by actually retraining.

    Keeps the absolute ridge term lam*n from the full problem when
    refitting on n-1 points, and solves each reduced system directly
    with numpy so the oracle shares no code with the closed form.
    """
    Km = np.asarray(K, dtype=float)
    n = Km.shape[0]
    Yhat = codebook.codes[np.asarray(y) - 1]
    out = np.empty((n, codebook.T - 1))
    for i in range(n):
        keep = np.arange(n) != i
        sub = Km[np.ix_(keep, keep)] + lam * n * np.eye(n - 1)
        A = np.linalg.solve(sub, Yhat[keep])
        out[i] = Km[i, keep] @ A
    return out


def blob_dataset(seed, n, T, radius=10.0, noise=1.0, p_extra=0):
    """Gaussian blobs centered on a circle; separable by a linear map
    through the origin when radius/noise is large."""
    rng = np.random.default_rng(seed)
    per = n // T
    X, y = [], []
    for label in range(1, T + 1):
        ang = 2.0 * np.pi * (label - 1) / T
        c = np.array([radius * np.cos(ang), radius * np.sin(ang)])
        pts = c + noise * rng.standard_normal((per, 2))
        if p_extra:
            pts = np.hstack([pts, rng.standard_normal((per, p_extra))])
        X.append(pts)
        y.extend([label] * per)
    X = np.vstack(X)
    y = np.array(y)
    order = rng.permutation(len(y))
    return X[order], y[order]


@pytest.fixture
def codebook3():
    return build_codebook(3)


@pytest.fixture
def codebook5():
    return build_codebook(5)
