import math

import numpy as np
import pytest

from simplexmc.errors import ConfigError, DataError
from simplexmc.kernels import (KernelSpec, cross_gram, gram,
                               rbf_sigma_heuristic)


def test_spec_validation():
    KernelSpec(kind="linear")
    KernelSpec(kind="rbf", sigma=2.0)
    with pytest.raises(ConfigError):
        KernelSpec(kind="poly")
    with pytest.raises(ConfigError):
        KernelSpec(kind="rbf", sigma=0.0)
    with pytest.raises(ConfigError):
        KernelSpec(kind="rbf", sigma=-1.0)


def test_linear_gram_identity_rows():
    G = gram(KernelSpec(kind="linear"), np.eye(4))
    assert np.allclose(G.K, np.eye(4), atol=1e-15)


def test_rbf_diagonal_is_one():
    rng = np.random.default_rng(0)
    G = gram(KernelSpec(kind="rbf", sigma=0.7), rng.normal(size=(12, 3)))
    assert np.array_equal(np.diag(G.K), np.ones(12))


def test_rbf_hand_value():
    X = np.array([[0.0, 0.0], [1.0, 0.0]])
    G = gram(KernelSpec(kind="rbf", sigma=1.0), X)
    assert G.K[0, 1] == pytest.approx(math.exp(-0.5), abs=1e-15)


def test_gram_symmetric_and_psd():
    rng = np.random.default_rng(1)
    X = rng.normal(size=(25, 6))
    for spec in (KernelSpec(kind="linear"), KernelSpec(kind="rbf", sigma=1.3)):
        G = gram(spec, X)
        assert np.max(np.abs(G.K - G.K.T)) <= 1e-10
        evals = np.linalg.eigvalsh(G.K)
        assert evals.min() >= -1e-8 * evals.max()


def test_rbf_entries_in_unit_interval():
    rng = np.random.default_rng(2)
    G = gram(KernelSpec(kind="rbf", sigma=0.4), rng.normal(size=(15, 2)))
    assert np.all(G.K > 0.0) and np.all(G.K <= 1.0)


def test_gram_rejects_non_finite():
    X = np.array([[1.0, np.nan], [0.0, 1.0]])
    with pytest.raises(DataError):
        gram(KernelSpec(kind="linear"), X)


def test_cross_gram_matches_gram():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(10, 4))
    for spec in (KernelSpec(kind="linear"), KernelSpec(kind="rbf", sigma=2.0)):
        C = cross_gram(spec, X, X)
        assert np.allclose(C, gram(spec, X).K, atol=1e-12)


def test_cross_gram_rbf_repeated_point():
    rng = np.random.default_rng(4)
    X = rng.normal(size=(6, 3))
    C = cross_gram(KernelSpec(kind="rbf", sigma=1.0), X, X[4:5])
    assert C.shape == (1, 6)
    assert C[0, 4] == pytest.approx(1.0, abs=1e-12)
    assert np.all(C[0, np.arange(6) != 4] < 1.0)


def test_cross_gram_linear_is_matrix_product():
    rng = np.random.default_rng(5)
    Xtr, Xte = rng.normal(size=(8, 3)), rng.normal(size=(5, 3))
    C = cross_gram(KernelSpec(kind="linear"), Xtr, Xte)
    assert np.allclose(C, Xte @ Xtr.T, atol=1e-13)


def test_cross_gram_dimension_check():
    with pytest.raises(DataError):
        cross_gram(KernelSpec(kind="linear"), np.zeros((3, 2)), np.zeros((3, 4)))


def test_sigma_two_points():
    X = np.array([[0.0], [2.5]])
    assert rbf_sigma_heuristic(X) == pytest.approx(2.5, abs=1e-12)


def test_sigma_collinear_quartet():
    # distances {1,1,1,2,2,3}; the lower 25th percentile is 1
    X = np.array([[0.0], [1.0], [2.0], [3.0]])
    assert rbf_sigma_heuristic(X) == pytest.approx(1.0, abs=1e-12)


def test_sigma_ignores_duplicates():
    X = np.array([[0.0], [0.0], [0.0], [4.0], [4.0]])
    assert rbf_sigma_heuristic(X) == pytest.approx(4.0, abs=1e-12)


def test_sigma_all_identical_rejected():
    with pytest.raises(DataError):
        rbf_sigma_heuristic(np.ones((5, 2)))


def test_sigma_matches_percentile_convention():
    rng = np.random.default_rng(6)
    X = rng.normal(size=(30, 2))
    diff = X[:, None, :] - X[None, :, :]
    d = np.sqrt((diff ** 2).sum(-1))
    vals = np.sort(d[np.triu_indices(30, k=1)])
    vals = vals[vals > 0]
    expected = vals[int(np.ceil(0.25 * len(vals))) - 1]
    assert rbf_sigma_heuristic(X) == pytest.approx(expected, rel=1e-12)
