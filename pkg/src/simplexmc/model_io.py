"""Versioned text serialization for trained models.

Plain text keeps golden files diff-able. Floats are written with repr,
which round-trips IEEE doubles exactly, so a reloaded model predicts
bit-identically. Kernel models must retain their training inputs to
predict, so those are serialized alongside the coefficients.
"""

from __future__ import annotations

import numpy as np

from .coding import build_codebook
from .errors import ConfigError, DataError
from .kernels import KernelSpec
from .losses import check_kind
from .srls import KernelModel, LinearModel

FORMAT_VERSION = 1
_MAGIC = "simplexmc-model"


def _write_matrix(fh, name, M):
    fh.write(f"[{name}] rows={M.shape[0]} cols={M.shape[1]}\n")
    for row in M:
        fh.write(" ".join(repr(float(v)) for v in row) + "\n")


def save_model(path, model, loss_kind: str, label_names=None):
    """Write a model file; see load_model for the inverse."""
    check_kind(loss_kind)
    if label_names is not None:
        label_names = [str(t) for t in label_names]
        if len(label_names) != model.codebook.T:
            raise ConfigError("label_names length must equal the class count")
        if any("," in t or "\n" in t for t in label_names):
            raise ConfigError("label tokens must not contain commas or newlines")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{_MAGIC} v{FORMAT_VERSION}\n")
        fh.write(f"T: {model.codebook.T}\n")
        fh.write(f"loss: {loss_kind}\n")
        fh.write(f"lambda: {repr(float(model.lam))}\n")
        if label_names is not None:
            fh.write("labels: " + ",".join(label_names) + "\n")
        if isinstance(model, LinearModel):
            fh.write("type: linear\n")
            _write_matrix(fh, "weights", model.W)
        elif isinstance(model, KernelModel):
            if model.X_train is None:
                raise ConfigError("kernel model has no stored training inputs; "
                                  "it cannot predict after reload")
            fh.write("type: kernel\n")
            if model.spec.kind == "rbf":
                fh.write(f"kernel: rbf sigma={repr(float(model.spec.sigma))}\n")
            else:
                fh.write("kernel: linear\n")
            _write_matrix(fh, "coefficients", model.A)
            _write_matrix(fh, "train_inputs", model.X_train)
        else:
            raise ConfigError(f"cannot serialize {type(model).__name__}")


class _Reader:
    def __init__(self, path):
        try:
            with open(path, "r", encoding="utf-8") as fh:
                self.lines = fh.read().splitlines()
        except OSError as exc:
            raise DataError(f"cannot read {path}: {exc}") from exc
        self.pos = 0
        self.path = path

    def next(self) -> str:
        if self.pos >= len(self.lines):
            raise DataError(f"{self.path}: truncated model file")
        ln = self.lines[self.pos]
        self.pos += 1
        return ln

    def matrix(self, name) -> np.ndarray:
        head = self.next()
        if not head.startswith(f"[{name}] "):
            raise DataError(f"{self.path}: expected [{name}] section, "
                            f"got {head!r}")
        try:
            fields = dict(kv.split("=") for kv in head.split("] ")[1].split())
            rows, cols = int(fields["rows"]), int(fields["cols"])
        except (ValueError, KeyError):
            raise DataError(f"{self.path}: bad section header {head!r}") from None
        M = np.empty((rows, cols))
        for r in range(rows):
            vals = self.next().split()
            if len(vals) != cols:
                raise DataError(f"{self.path}: row {r} of [{name}] has "
                                f"{len(vals)} values, expected {cols}")
            M[r] = [float(v) for v in vals]
        return M


def load_model(path):
    """Read a model file; returns (model, loss_kind, label_names)."""
    r = _Reader(path)
    head = r.next().split()
    if len(head) != 2 or head[0] != _MAGIC:
        raise DataError(f"{path}: not a model file")
    if head[1] != f"v{FORMAT_VERSION}":
        raise DataError(f"{path}: unsupported format version {head[1]}")
    fields = {}
    while r.pos < len(r.lines) and not r.lines[r.pos].startswith("["):
        ln = r.next()
        key, _, val = ln.partition(":")
        fields[key.strip()] = val.strip()
    for req in ("T", "loss", "lambda", "type"):
        if req not in fields:
            raise DataError(f"{path}: missing header field {req!r}")
    T = int(fields["T"])
    loss_kind = check_kind(fields["loss"])
    lam = float(fields["lambda"])
    label_names = None
    if "labels" in fields:
        label_names = tuple(fields["labels"].split(","))
        if len(label_names) != T:
            raise DataError(f"{path}: {len(label_names)} label tokens for "
                            f"{T} classes")
    codebook = build_codebook(T)
    if fields["type"] == "linear":
        W = r.matrix("weights")
        if W.shape[0] != T - 1:
            raise DataError(f"{path}: weight matrix has {W.shape[0]} rows, "
                            f"expected {T - 1}")
        model = LinearModel(W=W, codebook=codebook, lam=lam)
    elif fields["type"] == "kernel":
        kdesc = fields.get("kernel", "")
        if kdesc == "linear":
            spec = KernelSpec("linear")
        elif kdesc.startswith("rbf sigma="):
            spec = KernelSpec("rbf", sigma=float(kdesc.split("=", 1)[1]))
        else:
            raise DataError(f"{path}: bad kernel description {kdesc!r}")
        A = r.matrix("coefficients")
        X_train = r.matrix("train_inputs")
        if A.shape != (X_train.shape[0], T - 1):
            raise DataError(f"{path}: coefficient shape {A.shape} does not "
                            f"match {X_train.shape[0]} training rows")
        model = KernelModel(A=A, codebook=codebook, lam=lam, spec=spec,
                            X_train=X_train)
    else:
        raise DataError(f"{path}: unknown model type {fields['type']!r}")
    return model, loss_kind, label_names
