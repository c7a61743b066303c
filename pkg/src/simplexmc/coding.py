"""Simplex code book construction and decoding.

Each of T class labels is mapped to a unit vector in R^(T-1) such that
all pairwise inner products equal -1/(T-1) and the vectors sum to zero:
the vertices of a regular simplex centered at the origin. Decoding a
score vector picks the label whose code vector has the largest inner
product with it, which is the same as picking the nearest code vector.

Labels are 1-based throughout: valid labels are 1..T.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DataError


@dataclass(frozen=True)
class CodeBook:
    """The T simplex code vectors and their Gram matrix.

    codes[y-1] is the code vector of label y, a unit vector in R^(T-1).
    gram[i, j] = <codes[i], codes[j]>: 1 on the diagonal, -1/(T-1) off it.
    Immutable after construction; safe to share across threads.
    """

    T: int
    codes: np.ndarray
    gram: np.ndarray = field(init=False)

    def __post_init__(self):
        self.codes.setflags(write=False)
        gram = self.codes @ self.codes.T
        gram.setflags(write=False)
        object.__setattr__(self, "gram", gram)

    @property
    def dim(self) -> int:
        return self.T - 1


def build_codebook(T: int) -> CodeBook:
    """Construct the simplex code book for T classes.

    Deterministic recursive construction: the first coordinate of c_1 is 1,
    every later code starts with -1/(T-1) in that coordinate, and the
    remaining coordinates hold a rescaled (T-1)-class simplex. Same T gives
    bit-identical output.
    """
    if not isinstance(T, (int, np.integer)) or isinstance(T, bool):
        raise ConfigError(f"class count must be an integer, got {T!r}")
    if T < 2:
        raise ConfigError(f"class count must be at least 2, got {T}")
    codes = np.zeros((T, T - 1))
    scale = 1.0
    for t in range(T, 2, -1):
        r = T - t
        codes[r, r] = scale
        codes[r + 1:, r] = -scale / (t - 1)
        # remaining block is a simplex for t-1 classes shrunk to radius
        # sqrt(1 - 1/(t-1)^2) so every full vector stays unit length
        scale *= np.sqrt(1.0 - 1.0 / (t - 1) ** 2)
    codes[T - 2, T - 2] = scale
    codes[T - 1, T - 2] = -scale
    return CodeBook(T=int(T), codes=codes)


def decode(codebook: CodeBook, v) -> int:
    """Map a score vector in R^(T-1) to a label in 1..T.

    Returns argmax_y <v, c_y>; ties go to the smallest label index.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (codebook.dim,):
        raise DataError(
            f"expected a vector of dimension {codebook.dim}, got shape {v.shape}"
        )
    scores = codebook.codes @ v
    return int(np.argmax(scores)) + 1  # argmax returns the first maximizer


def decode_batch(codebook: CodeBook, V) -> np.ndarray:
    """Row-wise decode of an m x (T-1) score matrix; returns m labels."""
    V = np.asarray(V, dtype=float)
    if V.ndim != 2 or V.shape[1] != codebook.dim:
        raise DataError(
            f"expected an m x {codebook.dim} matrix, got shape {V.shape}"
        )
    if V.shape[0] == 0:
        return np.zeros(0, dtype=int)
    return np.argmax(V @ codebook.codes.T, axis=1) + 1
