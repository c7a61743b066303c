"""Dataset loading, label mapping, splits, and standardization.

Two text formats are supported:

  csv     one example per line, comma or whitespace delimited (detected
          per file); one column holds the label token, the rest are
          numeric features.
  sparse  one example per line: "label idx:val idx:val ...", with 0- or
          1-based indices auto-detected from the smallest index seen.

Label tokens are mapped to 1..T in order of first appearance; the token
list rides along on the Dataset so predictions can be reported in the
original vocabulary.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DataError


class SplitWarning(UserWarning):
    """Raised when a stratified split falls back to a plain shuffle."""


@dataclass(frozen=True)
class Dataset:
    X: np.ndarray              # n x p
    y: np.ndarray              # labels in 1..T
    T: int
    label_names: tuple[str, ...]

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        y = np.asarray(self.y, dtype=int)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
            raise DataError(f"inconsistent shapes X {X.shape}, y {y.shape}")
        if X.shape[0] == 0:
            raise DataError("dataset has no rows")
        if not np.all(np.isfinite(X)):
            raise DataError("features contain non-finite values")
        if self.T < 2:
            raise DataError(f"need at least 2 classes, got {self.T}")
        if len(self.label_names) != self.T:
            raise DataError("label_names length must equal T")
        if y.min() < 1 or y.max() > self.T:
            raise DataError(f"labels must lie in 1..{self.T}")
        X.setflags(write=False)
        y.setflags(write=False)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def p(self) -> int:
        return self.X.shape[1]

    def take(self, idx) -> "Dataset":
        """Row subset; keeps the full label mapping."""
        idx = np.asarray(idx, dtype=int)
        return Dataset(X=self.X[idx].copy(), y=self.y[idx].copy(),
                       T=self.T, label_names=self.label_names)


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.8
    seed: int = 0
    stratified: bool = True

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError(
                f"train fraction must be in (0, 1), got {self.train_fraction}"
            )


def _map_labels(tokens):
    names: list[str] = []
    index: dict[str, int] = {}
    y = np.empty(len(tokens), dtype=int)
    for i, tok in enumerate(tokens):
        if tok not in index:
            index[tok] = len(names) + 1
            names.append(tok)
        y[i] = index[tok]
    if len(names) < 2:
        raise DataError(f"found {len(names)} distinct label(s); need at least 2")
    return y, tuple(names)


def load_csv(path, label_column: int = 0, has_header: bool = False) -> Dataset:
    """Load a delimited text file; the delimiter (comma vs whitespace)
    is detected from the first data line."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.readlines()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    start = 1 if has_header else 0
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(raw)]
    lines = [(no, ln) for no, ln in lines[start:] if ln]
    if not lines:
        raise DataError(f"{path}: no data rows")
    comma = "," in lines[0][1]
    tokens_rows = []
    for no, ln in lines:
        parts = [t.strip() for t in ln.split(",")] if comma else ln.split()
        tokens_rows.append((no, parts))
    ncol = len(tokens_rows[0][1])
    if ncol < 2:
        raise DataError(f"{path}:{tokens_rows[0][0]}: need a label column "
                        f"and at least one feature")
    col = label_column if label_column >= 0 else ncol + label_column
    if not 0 <= col < ncol:
        raise ConfigError(f"label column {label_column} out of range "
                          f"for {ncol} columns")
    labels = []
    feats = np.empty((len(tokens_rows), ncol - 1))
    for r, (no, parts) in enumerate(tokens_rows):
        if len(parts) != ncol:
            raise DataError(f"{path}:{no}: ragged row, expected {ncol} "
                            f"fields, got {len(parts)}")
        labels.append(parts[col])
        j = 0
        for c, tok in enumerate(parts):
            if c == col:
                continue
            try:
                feats[r, j] = float(tok)
            except ValueError:
                raise DataError(f"{path}:{no}: non-numeric feature "
                                f"{tok!r} in column {c}") from None
            j += 1
    y, names = _map_labels(labels)
    if not np.all(np.isfinite(feats)):
        raise DataError(f"{path}: features contain non-finite values")
    return Dataset(X=feats, y=y, T=len(names), label_names=names)


def load_sparse(path) -> Dataset:
    """Load "label idx:val" sparse lines into a dense Dataset."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.readlines()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    rows = []
    labels = []
    min_idx, max_idx = None, 0
    for no, ln in enumerate(raw, start=1):
        ln = ln.strip()
        if not ln:
            continue
        parts = ln.split()
        labels.append(parts[0])
        pairs = []
        for tok in parts[1:]:
            bits = tok.split(":")
            if len(bits) != 2:
                raise DataError(f"{path}:{no}: malformed pair {tok!r}")
            try:
                idx = int(bits[0])
                val = float(bits[1])
            except ValueError:
                raise DataError(f"{path}:{no}: malformed pair {tok!r}") from None
            if idx < 0:
                raise DataError(f"{path}:{no}: negative feature index {idx}")
            pairs.append((idx, val))
            min_idx = idx if min_idx is None else min(min_idx, idx)
            max_idx = max(max_idx, idx)
        rows.append(pairs)
    if not rows:
        raise DataError(f"{path}: no data rows")
    if min_idx is None:
        raise DataError(f"{path}: no features found on any line")
    base = 0 if min_idx == 0 else 1
    p = max_idx - base + 1
    X = np.zeros((len(rows), p))
    for r, pairs in enumerate(rows):
        for idx, val in pairs:
            X[r, idx - base] = val
    y, names = _map_labels(labels)
    return Dataset(X=X, y=y, T=len(names), label_names=names)


def save_csv(dataset: Dataset, path, label_column: int = 0):
    """Write a comma-delimited file that load_csv reproduces exactly."""
    ncol = dataset.p + 1
    col = label_column if label_column >= 0 else ncol + label_column
    if not 0 <= col < ncol:
        raise ConfigError(f"label column {label_column} out of range")
    with open(path, "w", encoding="utf-8") as fh:
        for i in range(dataset.n):
            fields = [repr(float(v)) for v in dataset.X[i]]
            fields.insert(col, dataset.label_names[dataset.y[i] - 1])
            fh.write(",".join(fields) + "\n")


def split(dataset: Dataset, spec: SplitSpec):
    """Partition into (train, validation) datasets.

    Deterministic given the seed. Stratified mode keeps per-class
    proportions within one sample; if any class has a single example it
    falls back to a plain shuffle and emits a SplitWarning.
    """
    n = dataset.n
    if n < 2:
        raise DataError("cannot split fewer than 2 rows")
    rng = np.random.default_rng(spec.seed)
    stratified = spec.stratified
    if stratified:
        counts = np.bincount(dataset.y, minlength=dataset.T + 1)[1:]
        if np.any(counts == 1):
            warnings.warn("a class has a single sample; falling back to a "
                          "non-stratified split", SplitWarning)
            stratified = False
    if stratified:
        train_idx = []
        val_idx = []
        for c in range(1, dataset.T + 1):
            idx = np.flatnonzero(dataset.y == c)
            if idx.size == 0:
                continue
            idx = idx[rng.permutation(idx.size)]
            k = int(round(spec.train_fraction * idx.size))
            k = min(max(k, 1), idx.size - 1) if idx.size > 1 else k
            train_idx.append(idx[:k])
            val_idx.append(idx[k:])
        train_idx = np.sort(np.concatenate(train_idx))
        val_idx = np.sort(np.concatenate(val_idx))
    else:
        perm = rng.permutation(n)
        k = int(round(spec.train_fraction * n))
        k = min(max(k, 1), n - 1)
        train_idx = np.sort(perm[:k])
        val_idx = np.sort(perm[k:])
    if train_idx.size == 0 or val_idx.size == 0:
        raise DataError("split produced an empty part")
    return dataset.take(train_idx), dataset.take(val_idx)


def standardize(train: Dataset, *others: Dataset):
    """Zero-mean unit-variance transform fit on train, applied everywhere.

    Zero-variance features are centered only. Returns (datasets, mean,
    scale) with datasets ordered as (train, *others).
    """
    mean = train.X.mean(axis=0)
    std = train.X.std(axis=0)
    scale = np.where(std > 0, std, 1.0)

    def apply(ds: Dataset) -> Dataset:
        if ds.p != train.p:
            raise DataError(f"feature dimension mismatch: {ds.p} vs {train.p}")
        return Dataset(X=(ds.X - mean) / scale, y=ds.y.copy(), T=ds.T,
                       label_names=ds.label_names)

    return tuple(apply(ds) for ds in (train, *others)), mean, scale
