import warnings

import numpy as np
import pytest

from simplexmc.data import (Dataset, SplitSpec, SplitWarning, load_csv,
                            load_sparse, save_csv, split, standardize)
from simplexmc.errors import DataError


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def test_label_mapping_first_appearance(tmp_path):
    p = write(tmp_path, "d.csv", "a,1.0,2.0\nb,3.0,4.0\na,5.0,6.0\n")
    ds = load_csv(p)
    assert np.array_equal(ds.y, [1, 2, 1])
    assert ds.T == 2
    assert ds.label_names == ("a", "b")
    assert np.allclose(ds.X, [[1, 2], [3, 4], [5, 6]])


def test_header_skipped(tmp_path):
    p = write(tmp_path, "d.csv", "label,f1\nx,1.5\ny,2.5\n")
    ds = load_csv(p, has_header=True)
    assert ds.label_names == ("x", "y")
    assert np.allclose(ds.X, [[1.5], [2.5]])


def test_whitespace_delimiter_autodetected(tmp_path):
    p = write(tmp_path, "d.txt", "1 0.5 0.25\n2 1.5 1.25\n")
    ds = load_csv(p)
    assert np.array_equal(ds.y, [1, 2])
    assert np.allclose(ds.X, [[0.5, 0.25], [1.5, 1.25]])


def test_negative_label_column(tmp_path):
    p = write(tmp_path, "d.csv", "1.0,2.0,a\n3.0,4.0,b\n")
    ds = load_csv(p, label_column=-1)
    assert ds.label_names == ("a", "b")
    assert np.allclose(ds.X, [[1, 2], [3, 4]])


def test_csv_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    X = rng.normal(size=(12, 3))
    y = rng.integers(1, 4, size=12)
    y[:3] = [1, 2, 3]
    ds = Dataset(X=X, y=y, T=3, label_names=("1", "2", "3"))
    p = str(tmp_path / "rt.csv")
    save_csv(ds, p)
    back = load_csv(p)
    assert np.array_equal(back.X, ds.X)
    assert np.array_equal(back.y, ds.y)


def test_csv_error_reporting(tmp_path):
    ragged = write(tmp_path, "r.csv", "a,1.0\nb,1.0,2.0\n")
    with pytest.raises(DataError, match=r"r\.csv:2"):
        load_csv(ragged)
    bad = write(tmp_path, "b.csv", "a,1.0\nb,oops\n")
    with pytest.raises(DataError, match=r"b\.csv:2"):
        load_csv(bad)
    with pytest.raises(DataError):
        load_csv(str(tmp_path / "missing.csv"))
    single = write(tmp_path, "s.csv", "a,1.0\na,2.0\n")
    with pytest.raises(DataError):
        load_csv(single)    # fewer than two distinct labels


def test_sparse_basic_rows(tmp_path):
    p = write(tmp_path, "d.sp", "2 1:0.5 3:1.0\n1 2:2.0\n")
    ds = load_sparse(p)
    assert np.allclose(ds.X, [[0.5, 0.0, 1.0], [0.0, 2.0, 0.0]])
    assert np.array_equal(ds.y, [1, 2])
    assert ds.label_names == ("2", "1")


def test_sparse_empty_feature_line(tmp_path):
    p = write(tmp_path, "d.sp", "pos 1:1.0\nneg\n")
    ds = load_sparse(p)
    assert np.allclose(ds.X, [[1.0], [0.0]])


def test_sparse_zero_based_autodetect(tmp_path):
    p = write(tmp_path, "d.sp", "a 0:1.0 2:3.0\nb 1:2.0\n")
    ds = load_sparse(p)
    assert np.allclose(ds.X, [[1.0, 0.0, 3.0], [0.0, 2.0, 0.0]])


def test_sparse_malformed_pair(tmp_path):
    p = write(tmp_path, "d.sp", "a 1:1.0\nb 2=3.0\n")
    with pytest.raises(DataError, match=r"d\.sp:2"):
        load_sparse(p)


def test_cross_format_equivalence(tmp_path):
    dense = write(tmp_path, "d.csv", "u,1.0,0.0,2.0\nv,0.0,3.0,0.0\n")
    sparse = write(tmp_path, "d.sp", "u 1:1.0 3:2.0\nv 2:3.0\n")
    a, b = load_csv(dense), load_sparse(sparse)
    assert np.array_equal(a.X, b.X)
    assert np.array_equal(a.y, b.y)
    assert a.label_names == b.label_names


def make_ds(n, T, seed=0):
    rng = np.random.default_rng(seed)
    y = np.repeat(np.arange(1, T + 1), n // T)
    return Dataset(X=rng.normal(size=(len(y), 2)), y=y, T=T,
                   label_names=tuple(str(t) for t in range(1, T + 1)))


def test_split_sizes_and_partition():
    ds = make_ds(10, 2)
    tr, va = split(ds, SplitSpec(train_fraction=0.8, seed=0))
    assert (tr.n, va.n) == (8, 2)
    joined = np.vstack([tr.X, va.X])
    assert np.array_equal(np.sort(joined, axis=0), np.sort(ds.X, axis=0))


def test_split_stratified_balance():
    ds = make_ds(100, 2)
    tr, va = split(ds, SplitSpec(train_fraction=0.8, seed=3))
    assert np.sum(tr.y == 1) == 40 and np.sum(tr.y == 2) == 40


def test_split_deterministic():
    ds = make_ds(40, 4)
    a = split(ds, SplitSpec(train_fraction=0.75, seed=9))
    b = split(ds, SplitSpec(train_fraction=0.75, seed=9))
    assert np.array_equal(a[0].X, b[0].X)
    assert np.array_equal(a[1].y, b[1].y)


def test_split_single_sample_class_warns():
    X = np.arange(12, dtype=float).reshape(6, 2)
    ds = Dataset(X=X, y=np.array([1, 1, 1, 1, 1, 2]), T=2,
                 label_names=("a", "b"))
    with pytest.warns(SplitWarning):
        tr, va = split(ds, SplitSpec(train_fraction=0.5, seed=0))
    assert tr.n + va.n == 6


def test_split_clamps_to_nonempty_parts():
    # tiny fractions still leave one row on each side of the split
    ds = make_ds(6, 2)
    tr, va = split(ds, SplitSpec(train_fraction=0.01, seed=0, stratified=False))
    assert (tr.n, va.n) == (1, 5)
    from simplexmc.errors import ConfigError
    with pytest.raises(ConfigError):
        SplitSpec(train_fraction=1.0)
    with pytest.raises(ConfigError):
        SplitSpec(train_fraction=0.0)


def test_standardize_train_statistics():
    rng = np.random.default_rng(1)
    tr = Dataset(X=rng.normal(3.0, 2.0, size=(50, 3)), y=rng.integers(1, 3, 50),
                 T=2, label_names=("a", "b"))
    te = Dataset(X=rng.normal(3.0, 2.0, size=(20, 3)), y=rng.integers(1, 3, 20),
                 T=2, label_names=("a", "b"))
    (str_, ste), mean, scale = standardize(tr, te)
    assert np.max(np.abs(str_.X.mean(axis=0))) <= 1e-12
    assert np.allclose(str_.X.std(axis=0), 1.0, atol=1e-12)
    assert np.allclose(ste.X, (te.X - mean) / scale, atol=1e-14)


def test_standardize_constant_feature():
    X = np.column_stack([np.full(5, 7.0), np.arange(5, dtype=float)])
    ds = Dataset(X=X, y=np.array([1, 2, 1, 2, 1]), T=2, label_names=("a", "b"))
    (out,), mean, scale = standardize(ds)
    assert np.allclose(out.X[:, 0], 0.0, atol=1e-15)
    assert scale[0] == 1.0


def test_standardize_not_idempotent():
    rng = np.random.default_rng(2)
    ds = Dataset(X=rng.normal(5.0, 3.0, size=(30, 2)),
                 y=rng.integers(1, 3, 30), T=2, label_names=("a", "b"))
    (once,), mean, scale = standardize(ds)
    again = (once.X - mean) / scale
    assert not np.allclose(again, once.X, atol=1e-12)


def test_label_mapping_is_bijection(tmp_path):
    p = write(tmp_path, "d.csv", "z,1\ny,2\nx,3\nz,4\n")
    ds = load_csv(p)
    assert sorted(set(ds.y)) == list(range(1, ds.T + 1))
    assert len(ds.label_names) == ds.T
    for i, tok in enumerate(ds.label_names, start=1):
        rows = [j for j in range(ds.n) if ds.y[j] == i]
        assert all(tok == ds.label_names[ds.y[j] - 1] for j in rows)
