"""Command-line surface: train, predict, evaluate, path, verify-theory,
and benchmark subcommands.

Exit codes: 0 success, 1 partial failure (a failed check or benchmark
cell), 2 usage or configuration error, 3 data incompatibility,
4 numerical failure. The SIMPLEX_THREADS environment variable caps the
number of threads the underlying BLAS may use.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

import numpy as np
from threadpoolctl import threadpool_limits

from . import data as data_io
from . import model_io, online, srls, svm_qp, theory
from .coding import build_codebook
from .errors import ConfigError, DataError, NumericalError, SimplexError
from .kernels import GramMatrix, KernelSpec, cross_gram, gram, rbf_sigma_heuristic
from .losses import LOSS_KINDS, S_LS, SC_SVM, SH_SVM

SOLVER_MODES = ("batch", "online")


@dataclass
class SolverConfig:
    loss: str
    mode: str = "batch"
    kernel: str = "linear"
    sigma: object = "auto"          # "auto" or positive float
    lam: object = "auto"            # "auto", positive float, or list of floats
    select: str = "ho"
    split_fraction: float = 0.8
    epochs: int = 20
    seed: int = 0
    grid_size: int = srls.PATH_GRID_SIZE

    def validate(self):
        if self.loss not in LOSS_KINDS:
            raise ConfigError(f"unknown loss {self.loss!r}")
        if self.mode not in SOLVER_MODES:
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.kernel not in ("linear", "rbf"):
            raise ConfigError(f"unknown kernel {self.kernel!r}")
        if self.select not in ("ho", "loo"):
            raise ConfigError(f"unknown selection mode {self.select!r}")
        if self.select == "loo" and not (self.loss == S_LS and self.mode == "batch"):
            raise ConfigError(
                "loo selection is only available for batch s-ls; the "
                "closed-form leave-one-out exists only for that solver")
        if self.mode == "online" and self.kernel != "linear":
            raise ConfigError("online training supports the linear kernel only")
        if self.mode == "online" and self.epochs < 1:
            raise ConfigError(f"epochs must be >= 1, got {self.epochs}")
        if not 0.0 < self.split_fraction < 1.0:
            raise ConfigError(
                f"split fraction must be in (0, 1), got {self.split_fraction}")
        if self.grid_size < 1:
            raise ConfigError(f"grid size must be >= 1, got {self.grid_size}")

    @property
    def solver_name(self) -> str:
        return f"{self.loss}-{self.mode}"


def _parse_sigma(text):
    if text == "auto":
        return "auto"
    try:
        val = float(text)
    except ValueError:
        raise ConfigError(f"--sigma must be 'auto' or a number, got {text!r}") from None
    if val <= 0:
        raise ConfigError(f"sigma must be positive, got {val}")
    return val


def _parse_lambda(text):
    if text == "auto":
        return "auto"
    try:
        val = float(text)
    except ValueError:
        raise ConfigError(f"--lambda must be 'auto' or a number, got {text!r}") from None
    if val <= 0:
        raise ConfigError(f"lambda must be positive, got {val}")
    return val


def load_dataset(path, fmt, label_col=0, has_header=False) -> data_io.Dataset:
    if fmt == "csv":
        return data_io.load_csv(path, label_column=label_col,
                                has_header=has_header)
    if fmt == "sparse":
        return data_io.load_sparse(path)
    raise ConfigError(f"unknown format {fmt!r}")


def _resolve_spec(cfg: SolverConfig, X) -> KernelSpec:
    if cfg.kernel == "linear":
        return KernelSpec("linear")
    sigma = rbf_sigma_heuristic(X) if cfg.sigma == "auto" else float(cfg.sigma)
    return KernelSpec("rbf", sigma=sigma)


def _accuracy(model, X, y) -> float:
    return float(np.mean(srls.classify(model, X) == y))


def _grid_for(cfg: SolverConfig, ds: data_io.Dataset, spec: KernelSpec):
    if isinstance(cfg.lam, (list, tuple, np.ndarray)):
        lams = np.asarray(cfg.lam, dtype=float)
        if lams.size == 0 or np.any(lams <= 0):
            raise ConfigError("lambda grid must be non-empty and positive")
        return np.sort(lams)[::-1]
    if spec.kind == "linear":
        import scipy.linalg

        sv = scipy.linalg.svdvals(ds.X)
        evals = np.sort(sv * sv)
        return srls._grid_from_evals(evals, cfg.grid_size)
    return srls.lambda_grid(gram(spec, ds.X), cfg.grid_size)


def _fit_batch(cfg: SolverConfig, ds: data_io.Dataset, K: GramMatrix, lam):
    codebook = build_codebook(ds.T)
    if cfg.loss == S_LS:
        model = srls.fit_kernel(K, ds.y, codebook, lam, X_train=ds.X)
        info = {"objective": srls.kernel_objective(K, ds.y, codebook,
                                                   model.A, lam)}
        return model, info
    fit = svm_qp.fit_sc_svm if cfg.loss == SC_SVM else svm_qp.fit_sh_svm
    dual, model = fit(K, ds.y, codebook, lam, X_train=ds.X)
    info = {"objective": dual.objective, "converged": dual.converged,
            "kkt_violation": dual.kkt_violation, "sweeps": dual.sweeps}
    return model, info


def _holdout_select(cfg: SolverConfig, ds: data_io.Dataset, spec: KernelSpec,
                    lambdas) -> tuple[float, float]:
    """Pick the grid lambda with the best validation accuracy.

    The grid is descending, so on ties the larger lambda wins. Returns
    (lambda, validation error rate).
    """
    train, val = data_io.split(ds, data_io.SplitSpec(
        train_fraction=cfg.split_fraction, seed=cfg.seed, stratified=True))
    codebook = build_codebook(ds.T)
    errors = np.empty(len(lambdas))
    if cfg.mode == "batch" and cfg.loss == S_LS:
        K = gram(spec, train.X)
        path = srls.reg_path(K, train.y, codebook, num_lambdas=1)
        Kc = cross_gram(spec, train.X, val.X)
        Z = Kc @ path.Q
        P = path.Q.T @ path.Yhat
        for i, lam in enumerate(lambdas):
            w = 1.0 / (path.evals + train.n * lam)
            scores = Z @ (w[:, None] * P)
            pred = np.argmax(scores @ codebook.codes.T, axis=1) + 1
            errors[i] = np.mean(pred != val.y)
    elif cfg.mode == "batch":
        K = gram(spec, train.X)
        fit = svm_qp.fit_sc_svm if cfg.loss == SC_SVM else svm_qp.fit_sh_svm
        for i, lam in enumerate(lambdas):
            _, model = fit(K, train.y, codebook, lam, X_train=train.X)
            errors[i] = 1.0 - _accuracy(model, val.X, val.y)
    else:
        for i, lam in enumerate(lambdas):
            model = online.train_online(train, codebook, lam, cfg.epochs,
                                        cfg.loss, cfg.seed)
            errors[i] = 1.0 - _accuracy(model, val.X, val.y)
    i = int(np.argmin(errors))
    return float(lambdas[i]), float(errors[i])


def train_solver(cfg: SolverConfig, ds: data_io.Dataset):
    """Train one solver on a dataset; returns (model, info dict).

    Handles sigma resolution, lambda selection (fixed value, hold-out
    over the eigenvalue grid, or closed-form loo for batch s-ls), and
    the final fit on the full data with the selected lambda.
    """
    cfg.validate()
    t0 = time.perf_counter()
    codebook = build_codebook(ds.T)
    spec = _resolve_spec(cfg, ds.X)
    info = {"solver": cfg.solver_name, "kernel": spec.kind,
            "sigma": spec.sigma, "n_train": ds.n}

    fixed = not (cfg.lam == "auto" or isinstance(cfg.lam, (list, tuple,
                                                           np.ndarray)))
    if fixed:
        lam = float(cfg.lam)
        if lam <= 0:
            raise ConfigError(f"lambda must be positive, got {lam}")
    elif cfg.select == "loo":
        K = gram(spec, ds.X)
        path = srls.reg_path(K, ds.y, codebook)
        lam, rate = srls.select_lambda_loo(path)
        info["selected_lambda"] = lam
        info["lambda"] = lam
        info["loo_rate"] = rate
        # the eigendecomposition cache gives the final coefficients for free
        model = srls.KernelModel(A=path.coefficients_at(lam),
                                 codebook=codebook, lam=lam, spec=spec,
                                 X_train=ds.X)
        info["objective"] = srls.kernel_objective(K, ds.y, codebook,
                                                  model.A, lam)
        info["train_accuracy"] = float(
            np.mean(srls.decode_batch(codebook, K.K @ model.A) == ds.y))
        info["wall_time"] = time.perf_counter() - t0
        return model, info
    else:
        lambdas = _grid_for(cfg, ds, spec)
        lam, err = _holdout_select(cfg, ds, spec, lambdas)
        info["selected_lambda"] = lam
        info["holdout_error"] = err

    if cfg.mode == "batch":
        K = gram(spec, ds.X)
        model, fit_info = _fit_batch(cfg, ds, K, lam)
        info.update(fit_info)
        info["train_accuracy"] = float(
            np.mean(srls.decode_batch(codebook, K.K @ model.A) == ds.y))
    else:
        model = online.train_online(ds, codebook, lam, cfg.epochs, cfg.loss,
                                    cfg.seed)
        info["objective"] = online.empirical_objective(ds.X, ds.y, codebook,
                                                       cfg.loss, model.W, lam)
        info["train_accuracy"] = _accuracy(model, ds.X, ds.y)
    info["lambda"] = lam
    info["wall_time"] = time.perf_counter() - t0
    return model, info


def _format_report(info) -> str:
    lines = [f"solver: {info.get('solver')}"]
    if info.get("sigma") is not None:
        lines.append(f"sigma: {info['sigma']:.6g}")
    for key, label in (("selected_lambda", "selected lambda"),
                       ("lambda", "lambda"),
                       ("loo_rate", "loo error rate"),
                       ("holdout_error", "hold-out error rate"),
                       ("objective", "objective"),
                       ("train_accuracy", "training accuracy"),
                       ("kkt_violation", "max kkt violation"),
                       ("converged", "converged"),
                       ("wall_time", "wall time (s)")):
        if key in info:
            val = info[key]
            lines.append(f"{label}: {val:.6g}" if isinstance(val, float)
                         else f"{label}: {val}")
    return "\n".join(lines)


def cmd_train(args) -> int:
    cfg = SolverConfig(loss=args.loss, mode=args.mode, kernel=args.kernel,
                       sigma=_parse_sigma(args.sigma),
                       lam=_parse_lambda(args.lam), select=args.select,
                       split_fraction=args.split_frac, epochs=args.epochs,
                       seed=args.seed, grid_size=args.grid_size)
    cfg.validate()   # reject bad combos before touching data or output
    ds = load_dataset(args.data, args.format, args.label_col, args.has_header)
    if args.standardize:
        (ds,), _, _ = data_io.standardize(ds)
    model, info = train_solver(cfg, ds)
    report = _format_report(info)
    print(report)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(report + "\n")
    if args.out:
        model_io.save_model(args.out, model, cfg.loss,
                            label_names=ds.label_names)
        print(f"model written to {args.out}")
    return 0


def _load_features(args):
    if args.unlabeled:
        if args.format != "csv":
            raise ConfigError("--unlabeled is only supported for csv input")
        return _read_unlabeled_csv(args.data, args.has_header)
    ds = load_dataset(args.data, args.format, args.label_col, args.has_header)
    return ds


def _read_unlabeled_csv(path, has_header):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.readlines()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    lines = [ln.strip() for ln in raw]
    if has_header:
        lines = lines[1:]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise DataError(f"{path}: no data rows")
    comma = "," in lines[0]
    rows = []
    for no, ln in enumerate(lines, start=1):
        parts = [t.strip() for t in ln.split(",")] if comma else ln.split()
        try:
            rows.append([float(t) for t in parts])
        except ValueError:
            raise DataError(f"{path}:{no}: non-numeric feature") from None
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DataError(f"{path}: ragged rows")
    return np.asarray(rows)


def cmd_predict(args) -> int:
    model, _, label_names = model_io.load_model(args.model)
    loaded = _load_features(args)
    X = loaded if isinstance(loaded, np.ndarray) else loaded.X
    labels = srls.classify(model, X)
    for lab in labels:
        print(label_names[lab - 1] if label_names else lab)
    return 0


def _map_to_model_labels(ds: data_io.Dataset, label_names):
    if label_names is None:
        return ds.y
    index = {tok: i + 1 for i, tok in enumerate(label_names)}
    y = np.empty(ds.n, dtype=int)
    for i in range(ds.n):
        tok = ds.label_names[ds.y[i] - 1]
        if tok not in index:
            raise DataError(f"label {tok!r} was not seen at training time")
        y[i] = index[tok]
    return y


def cmd_evaluate(args) -> int:
    model, _, label_names = model_io.load_model(args.model)
    ds = load_dataset(args.data, args.format, args.label_col, args.has_header)
    y = _map_to_model_labels(ds, label_names)
    pred = srls.classify(model, ds.X)
    T = model.codebook.T
    conf = np.zeros((T, T), dtype=int)
    for t, p in zip(y, pred):
        conf[t - 1, p - 1] += 1
    acc = float(np.mean(pred == y))
    names = list(label_names) if label_names else [str(i + 1) for i in range(T)]
    print(f"accuracy: {acc:.6f}")
    print("confusion matrix (rows = true, columns = predicted):")
    width = max(len(n) for n in names) + 2
    print(" " * width + "".join(f"{n:>{width}}" for n in names))
    for i, row in enumerate(conf):
        print(f"{names[i]:>{width}}" + "".join(f"{v:>{width}}" for v in row))
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write("true\\pred," + ",".join(names) + "\n")
            for i, row in enumerate(conf):
                fh.write(names[i] + "," + ",".join(str(v) for v in row) + "\n")
            fh.write(f"accuracy,{acc!r}\n")
    return 0


def cmd_path(args) -> int:
    ds = load_dataset(args.data, args.format, args.label_col, args.has_header)
    if args.standardize:
        (ds,), _, _ = data_io.standardize(ds)
    cfg = SolverConfig(loss=S_LS, mode="batch", kernel=args.kernel,
                       sigma=_parse_sigma(args.sigma), select="loo",
                       seed=args.seed)
    cfg.validate()
    codebook = build_codebook(ds.T)
    spec = _resolve_spec(cfg, ds.X)
    K = gram(spec, ds.X)
    path = srls.reg_path(K, ds.y, codebook)
    lam, rate = srls.select_lambda_loo(path)
    out_lines = ["lambda,loo_rate,selected"]
    for lv, rv in zip(path.lambdas, path.loo_rates):
        mark = 1 if lv == lam else 0
        out_lines.append(f"{float(lv)!r},{float(rv)!r},{mark}")
    text = "\n".join(out_lines)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"path table written to {args.out}")
    else:
        print(text)
    print(f"selected lambda: {lam:.6g} (loo rate {rate:.6g})")
    return 0


def cmd_verify_theory(args) -> int:
    if args.trials < 1:
        raise ConfigError(f"trials must be >= 1, got {args.trials}")
    if args.T < 2:
        raise ConfigError(f"T must be >= 2, got {args.T}")
    report = theory.verify_theory_suite(
        args.T, args.seed, trials=args.trials, noise_dists=args.noise_dists,
        noise_samples=args.noise_samples)
    print(report.summary())
    return 0 if report.passed else 1


def _benchmark_dataset(entry, seed, base_dir):
    fmt = entry.get("format", "csv")
    label_col = entry.get("label_col", 0)
    has_header = entry.get("has_header", False)

    def resolve(p):
        # manifest entries are relative to the manifest file itself
        return p if os.path.isabs(p) else os.path.join(base_dir, p)

    train = load_dataset(resolve(entry["train"]), fmt, label_col, has_header)
    if "test" in entry:
        test = load_dataset(resolve(entry["test"]), fmt, label_col, has_header)
        if tuple(test.label_names) != tuple(train.label_names):
            # align the test labels with the training token order
            merged = list(train.label_names)
            for tok in test.label_names:
                if tok not in merged:
                    raise DataError(
                        f"test label {tok!r} does not occur in the training set")
            remap = {i + 1: merged.index(tok) + 1
                     for i, tok in enumerate(test.label_names)}
            y = np.array([remap[v] for v in test.y])
            test = data_io.Dataset(X=test.X, y=y, T=train.T,
                                   label_names=train.label_names)
    else:
        frac = 1.0 - entry.get("test_fraction", 0.2)
        train, test = data_io.split(train, data_io.SplitSpec(
            train_fraction=frac, seed=seed, stratified=True))
    cap = entry.get("subsample_train")
    if cap and train.n > cap:
        sub, _ = data_io.split(train, data_io.SplitSpec(
            train_fraction=cap / train.n, seed=seed, stratified=True))
        train = sub
    if entry.get("standardize", False):
        (train, test), _, _ = data_io.standardize(train, test)
    return train, test


def cmd_benchmark(args) -> int:
    try:
        with open(args.manifest, "r", encoding="utf-8") as fh:
            manifest = json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot read manifest: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"manifest is not valid JSON: {exc}") from exc
    datasets = manifest.get("datasets", [])
    solvers = manifest.get("solvers", [])
    if not datasets or not solvers:
        raise ConfigError("manifest needs non-empty 'datasets' and 'solvers'")
    seed = int(manifest.get("seed", 0))
    base_dir = os.path.dirname(os.path.abspath(args.manifest))
    cells = {}
    details = []
    failed = False
    loaded = {}
    for dentry in datasets:
        name = dentry.get("name") or os.path.basename(dentry["train"])
        try:
            loaded[name] = _benchmark_dataset(dentry, seed, base_dir)
        except SimplexError as exc:
            loaded[name] = exc
    for sentry in solvers:
        sname = sentry.get("name") or f"{sentry['loss']}-{sentry.get('mode', 'batch')}"
        for dentry in datasets:
            dname = dentry.get("name") or os.path.basename(dentry["train"])
            pair = loaded[dname]
            if isinstance(pair, Exception):
                cells[(sname, dname)] = "ERROR"
                details.append(f"{sname} / {dname}: ERROR ({pair})")
                failed = True
                continue
            train, test = pair
            cfg = SolverConfig(
                loss=sentry["loss"], mode=sentry.get("mode", "batch"),
                kernel=sentry.get("kernel", "linear"),
                sigma=sentry.get("sigma", "auto"),
                lam=sentry.get("lambda", "auto"),
                select=sentry.get("select", "ho"),
                split_fraction=sentry.get("split_fraction", 0.8),
                epochs=sentry.get("epochs", 20), seed=seed,
                grid_size=sentry.get("grid_size", srls.PATH_GRID_SIZE))
            try:
                model, info = train_solver(cfg, train)
                acc = _accuracy(model, test.X, test.y)
                cells[(sname, dname)] = f"{100.0 * acc:.2f}"
                extra = (f"sigma {info['sigma']:.4g}, "
                         if info.get("sigma") is not None else "")
                details.append(
                    f"{sname} / {dname}: accuracy {100.0 * acc:.2f}% "
                    f"({extra}lambda {info.get('lambda', info.get('selected_lambda')):.4g}, "
                    f"wall {info['wall_time']:.1f}s, n_train {train.n})")
            except SimplexError as exc:
                cells[(sname, dname)] = "ERROR"
                details.append(f"{sname} / {dname}: ERROR ({exc})")
                failed = True
    dnames = [d.get("name") or os.path.basename(d["train"]) for d in datasets]
    snames = [s.get("name") or f"{s['loss']}-{s.get('mode', 'batch')}"
              for s in solvers]
    csv_lines = ["solver," + ",".join(dnames)]
    for sname in snames:
        csv_lines.append(sname + "," + ",".join(cells[(sname, d)] for d in dnames))
    table_txt = "\n".join(csv_lines)
    report = table_txt + "\n\n" + "\n".join(details)
    print(report)
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        with open(os.path.join(args.out_dir, "table.csv"), "w",
                  encoding="utf-8") as fh:
            fh.write(table_txt + "\n")
        with open(os.path.join(args.out_dir, "report.txt"), "w",
                  encoding="utf-8") as fh:
            fh.write(report + "\n")
    return 1 if failed else 0


def _add_data_args(p, with_label=True):
    p.add_argument("--data", required=True, help="input data file")
    p.add_argument("--format", choices=("csv", "sparse"), default="csv")
    if with_label:
        p.add_argument("--label-col", type=int, default=0,
                       help="label column index (csv; negative counts from the end)")
    p.add_argument("--has-header", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simplexmc",
        description="Multiclass classification with simplex coding")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a model")
    _add_data_args(p)
    p.add_argument("--loss", choices=LOSS_KINDS, required=True)
    p.add_argument("--mode", choices=SOLVER_MODES, default="batch")
    p.add_argument("--kernel", choices=("linear", "rbf"), default="linear")
    p.add_argument("--sigma", default="auto")
    p.add_argument("--lambda", dest="lam", default="auto")
    p.add_argument("--select", choices=("ho", "loo"), default="ho")
    p.add_argument("--split-frac", type=float, default=0.8)
    p.add_argument("--epochs", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid-size", type=int, default=srls.PATH_GRID_SIZE)
    p.add_argument("--standardize", action="store_true")
    p.add_argument("--out", help="model output path")
    p.add_argument("--report", help="write the training report here")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="predict labels with a saved model")
    p.add_argument("--model", required=True)
    _add_data_args(p)
    p.add_argument("--unlabeled", action="store_true",
                   help="treat every csv column as a feature")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="accuracy and confusion matrix")
    p.add_argument("--model", required=True)
    _add_data_args(p)
    p.add_argument("--report", help="write the confusion matrix as csv")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("path", help="s-ls regularization path with loo rates")
    _add_data_args(p)
    p.add_argument("--kernel", choices=("linear", "rbf"), default="linear")
    p.add_argument("--sigma", default="auto")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--standardize", action="store_true")
    p.add_argument("--out", help="csv output path (default: stdout)")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("verify-theory",
                       help="numerically verify the comparison inequalities")
    p.add_argument("--T", type=int, default=3, help="class count")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise-dists", type=int, default=100)
    p.add_argument("--noise-samples", type=int, default=20)
    p.set_defaults(func=cmd_verify_theory)

    p = sub.add_parser("benchmark", help="run a manifest of datasets x solvers")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out-dir", help="directory for table.csv and report.txt")
    p.set_defaults(func=cmd_benchmark)
    return parser


def main(argv=None) -> int:
    threads = os.environ.get("SIMPLEX_THREADS")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if threads is not None:
            try:
                cap = int(threads)
            except ValueError:
                raise ConfigError(
                    f"SIMPLEX_THREADS must be an integer, got {threads!r}"
                ) from None
            if cap < 1:
                raise ConfigError(f"SIMPLEX_THREADS must be >= 1, got {cap}")
            with threadpool_limits(limits=cap):
                return args.func(args)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
