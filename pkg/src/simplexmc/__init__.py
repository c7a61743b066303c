"""Multiclass classification with simplex coding.

Classes are encoded as the vertices of a regular simplex in R^(T-1) and
decoded by inner-product argmax. On top of that coding the package
provides batch regularized least squares with a closed-form leave-one-out
and a one-eigendecomposition regularization path, two SVM variants
trained by dual coordinate ascent, online projected-subgradient training
of linear models, and exact risk computations on finite distributions
for verifying the comparison inequalities the methods rest on.
"""

from .coding import CodeBook, build_codebook, decode, decode_batch
from .data import Dataset, SplitSpec, load_csv, load_sparse, save_csv, split, standardize
from .errors import ConfigError, DataError, NumericalError, SimplexError
from .kernels import GramMatrix, KernelSpec, cross_gram, gram, rbf_sigma_heuristic
from .losses import LOSS_KINDS, S_LS, SC_SVM, SH_SVM, loss_value, subgradient_linear
from .model_io import load_model, save_model
from .online import OnlineState, init_state, sgd_step, train_online
from .srls import (KernelModel, LinearModel, RegPath, classify, fit_kernel,
                   fit_linear, loo_errors, predict, reg_path, select_lambda_loo)
from .svm_qp import ScSvmDual, ShSvmDual, fit_sc_svm, fit_sh_svm, kkt_report
from .theory import (FiniteDistribution, TargetProfile, bayes_risk, bayes_rule,
                     check_comparison_inequality, check_fisher_consistency,
                     check_noise_improved_bound, expected_loss, misclass_risk,
                     target_function, verify_theory_suite)

__version__ = "0.1.0"

__all__ = [
    "CodeBook", "build_codebook", "decode", "decode_batch",
    "Dataset", "SplitSpec", "load_csv", "load_sparse", "save_csv", "split",
    "standardize",
    "ConfigError", "DataError", "NumericalError", "SimplexError",
    "GramMatrix", "KernelSpec", "cross_gram", "gram", "rbf_sigma_heuristic",
    "LOSS_KINDS", "S_LS", "SC_SVM", "SH_SVM", "loss_value", "subgradient_linear",
    "load_model", "save_model",
    "OnlineState", "init_state", "sgd_step", "train_online",
    "KernelModel", "LinearModel", "RegPath", "classify", "fit_kernel",
    "fit_linear", "loo_errors", "predict", "reg_path", "select_lambda_loo",
    "ScSvmDual", "ShSvmDual", "fit_sc_svm", "fit_sh_svm", "kkt_report",
    "FiniteDistribution", "TargetProfile", "bayes_risk", "bayes_rule",
    "check_comparison_inequality", "check_fisher_consistency",
    "check_noise_improved_bound", "expected_loss", "misclass_risk",
    "target_function", "verify_theory_suite",
    "__version__",
]
