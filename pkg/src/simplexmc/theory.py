"""Exact risk computations and numerical verification of the
comparison-inequality and noise-condition results on finite distributions.

A FiniteDistribution fixes m abstract input points with marginal weights
and per-point conditional class probabilities, so every risk integral is
a finite sum and the surrogate theory becomes checkable to machine
precision: Bayes rule and risk, misclassification risk of any decoded
score function, expected surrogate loss, the per-loss target functions
f_rho with their comparison constants, and the margin-based noise
exponent machinery for the improved s-ls rate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coding import CodeBook, decode_batch
from .errors import ConfigError, DataError
from .losses import LOSS_KINDS, S_LS, SC_SVM, SH_SVM, check_kind

# sampling radius for unconstrained score functions; covers the unit code
# ball with ample slack
SAMPLE_RADIUS = 3.0
# additive slack for inequality assertions, absorbing double round-off
SLACK = 1e-12


@dataclass(frozen=True)
class FiniteDistribution:
    """m weighted points with row-stochastic conditional class probabilities."""

    marginal: np.ndarray       # (m,) nonnegative, sums to 1
    conditionals: np.ndarray   # (m, T) rows nonnegative, each sums to 1

    def __post_init__(self):
        marginal = np.asarray(self.marginal, dtype=float)
        cond = np.asarray(self.conditionals, dtype=float)
        object.__setattr__(self, "marginal", marginal)
        object.__setattr__(self, "conditionals", cond)
        if marginal.ndim != 1 or cond.ndim != 2 or cond.shape[0] != marginal.size:
            raise DataError("marginal and conditionals have inconsistent shapes")
        if np.any(marginal < 0) or np.any(cond < 0):
            raise DataError("probabilities must be nonnegative")
        if abs(marginal.sum() - 1.0) > 1e-12:
            raise DataError(f"marginal sums to {marginal.sum()!r}, not 1")
        if np.max(np.abs(cond.sum(axis=1) - 1.0)) > 1e-12:
            raise DataError("every conditional row must sum to 1")
        marginal.setflags(write=False)
        cond.setflags(write=False)

    @property
    def m(self) -> int:
        return self.marginal.size

    @property
    def T(self) -> int:
        return self.conditionals.shape[1]


def random_distribution(rng, m: int, T: int,
                        dominant_min: float | None = None) -> FiniteDistribution:
    """Sample a distribution with Dirichlet(1) weights and conditionals.

    With dominant_min set, each point gets one class whose conditional
    probability is drawn uniformly from [dominant_min, 1), the remainder
    spread over the other classes (a near-deterministic distribution).
    """
    marginal = rng.dirichlet(np.ones(m))
    if dominant_min is None:
        cond = rng.dirichlet(np.ones(T), size=m)
    else:
        if not 0.5 <= dominant_min < 1.0:
            raise ConfigError(f"dominant_min must be in [0.5, 1), got {dominant_min}")
        cond = np.empty((m, T))
        for i in range(m):
            top = rng.uniform(dominant_min, 1.0)
            rest = rng.dirichlet(np.ones(T - 1)) * (1.0 - top)
            k = rng.integers(T)
            cond[i] = np.insert(rest, k, top)
    return FiniteDistribution(marginal=marginal, conditionals=cond)


def sample_scores(rng, codebook: CodeBook, m: int, kind: str) -> np.ndarray:
    """Random score rows: inside conv(codes) for sh-svm (its comparison
    result constrains f to the hull), else uniform in the radius-3 ball."""
    check_kind(kind)
    if kind == SH_SVM:
        w = rng.dirichlet(np.ones(codebook.T), size=m)
        return w @ codebook.codes
    d = codebook.dim
    g = rng.normal(size=(m, d))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    r = SAMPLE_RADIUS * rng.uniform(size=(m, 1)) ** (1.0 / d)
    return r * g / norms


def bayes_rule(dist: FiniteDistribution) -> np.ndarray:
    """Pointwise argmax of the conditionals; ties go to the smallest label."""
    return np.argmax(dist.conditionals, axis=1) + 1


def bayes_risk(dist: FiniteDistribution) -> float:
    return float(dist.marginal @ (1.0 - dist.conditionals.max(axis=1)))


def _check_scores(dist, codebook, F) -> np.ndarray:
    F = np.asarray(F, dtype=float)
    if F.shape != (dist.m, codebook.dim):
        raise DataError(f"scores have shape {F.shape}, "
                        f"expected ({dist.m}, {codebook.dim})")
    return F


def misclass_risk(dist: FiniteDistribution, codebook: CodeBook, F) -> float:
    """R(D(f)) = sum_x rho_X(x) (1 - rho_{D(f(x))}(x))."""
    F = _check_scores(dist, codebook, F)
    labels = decode_batch(codebook, F)
    hit = dist.conditionals[np.arange(dist.m), labels - 1]
    return float(dist.marginal @ (1.0 - hit))


def pointwise_losses(codebook: CodeBook, kind: str, F) -> np.ndarray:
    """m x T matrix whose (x, y) entry is V(y, F[x])."""
    check_kind(kind)
    F = np.asarray(F, dtype=float)
    if kind == S_LS:
        diff = F[:, None, :] - codebook.codes[None, :, :]
        return np.sum(diff * diff, axis=2)
    S = F @ codebook.codes.T
    if kind == SH_SVM:
        return np.maximum(1.0 - S, 0.0)
    M = np.maximum(1.0 / (codebook.T - 1) + S, 0.0)
    return M.sum(axis=1, keepdims=True) - M


def expected_loss(dist: FiniteDistribution, codebook: CodeBook, kind: str,
                  F) -> float:
    """E(f) = sum_x rho_X(x) sum_y rho_y(x) V(y, f(x))."""
    F = _check_scores(dist, codebook, F)
    L = pointwise_losses(codebook, kind, F)
    return float(np.sum(dist.marginal[:, None] * dist.conditionals * L))


def comparison_constants(kind: str, T: int):
    """(C_T, alpha) of the comparison inequality for each loss."""
    check_kind(kind)
    if kind == S_LS:
        return float(np.sqrt(2.0 * (T - 1) / T)), 0.5
    return float(T - 1), 1.0


@dataclass(frozen=True)
class TargetProfile:
    kind: str
    f_rho: np.ndarray          # m x (T-1), pointwise minimizer of E
    C_T: float
    alpha: float


def target_function(dist: FiniteDistribution, codebook: CodeBook,
                    kind: str) -> TargetProfile:
    """The pointwise minimizer of the expected loss.

    s-ls: the conditional code mean sum_y rho_y(x) c_y; the SVM losses:
    the code vector of the Bayes label.
    """
    check_kind(kind)
    if dist.T != codebook.T:
        raise DataError(f"distribution has {dist.T} classes, code book {codebook.T}")
    if kind == S_LS:
        f_rho = dist.conditionals @ codebook.codes
    else:
        f_rho = codebook.codes[bayes_rule(dist) - 1]
    C_T, alpha = comparison_constants(kind, codebook.T)
    return TargetProfile(kind=kind, f_rho=f_rho, C_T=C_T, alpha=alpha)


def _tied_points(dist: FiniteDistribution) -> np.ndarray:
    """Mask of points whose conditional argmax is not unique."""
    top = dist.conditionals.max(axis=1, keepdims=True)
    return (dist.conditionals == top).sum(axis=1) > 1


@dataclass(frozen=True)
class FisherReport:
    kind: str
    checked: int
    skipped_ties: int
    passed: bool
    max_perturbation_gain: float = 0.0   # s-ls only: best E decrease found


def check_fisher_consistency(dist: FiniteDistribution, codebook: CodeBook,
                             kind: str, rng=None) -> FisherReport:
    """D(f_rho) must equal the Bayes rule at every non-tied point.

    For s-ls the minimizer property is additionally probed: 20 random
    perturbation directions of step 1e-4 must not decrease the expected
    loss by more than 1e-10.
    """
    profile = target_function(dist, codebook, kind)
    ties = _tied_points(dist)
    decoded = decode_batch(codebook, profile.f_rho)
    ok = bool(np.all(decoded[~ties] == bayes_rule(dist)[~ties]))
    gain = 0.0
    if kind == S_LS:
        if rng is None:
            rng = np.random.default_rng(0)
        base = expected_loss(dist, codebook, kind, profile.f_rho)
        for _ in range(20):
            d = rng.normal(size=profile.f_rho.shape)
            d /= max(np.linalg.norm(d), 1e-30)
            perturbed = expected_loss(dist, codebook, kind,
                                      profile.f_rho + 1e-4 * d)
            gain = max(gain, base - perturbed)
        ok = ok and gain <= 1e-10
    return FisherReport(kind=kind, checked=int((~ties).sum()),
                        skipped_ties=int(ties.sum()), passed=ok,
                        max_perturbation_gain=gain)


@dataclass(frozen=True)
class ComparisonReport:
    kind: str
    trials: int
    violations: int
    max_ratio: float           # max over trials of LHS / RHS (0/0 -> 0)
    passed: bool


def check_comparison_inequality(dist: FiniteDistribution, codebook: CodeBook,
                                kind: str, trials: int,
                                rng=None) -> ComparisonReport:
    """Assert R(D(f)) - R(D(f_rho)) <= C_T (E(f) - E(f_rho))^alpha on
    random score samples; reports the max observed LHS/RHS ratio."""
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    if rng is None:
        rng = np.random.default_rng(0)
    profile = target_function(dist, codebook, kind)
    r_target = misclass_risk(dist, codebook, profile.f_rho)
    e_target = expected_loss(dist, codebook, kind, profile.f_rho)
    violations = 0
    max_ratio = 0.0
    for _ in range(trials):
        F = sample_scores(rng, codebook, dist.m, kind)
        lhs = misclass_risk(dist, codebook, F) - r_target
        excess = max(expected_loss(dist, codebook, kind, F) - e_target, 0.0)
        rhs = profile.C_T * excess**profile.alpha
        if lhs > rhs + SLACK:
            violations += 1
        if rhs > 0:
            max_ratio = max(max_ratio, lhs / rhs)
        elif lhs > SLACK:
            max_ratio = np.inf
    return ComparisonReport(kind=kind, trials=trials, violations=violations,
                            max_ratio=float(max_ratio),
                            passed=violations == 0)


def target_margins(dist: FiniteDistribution, codebook: CodeBook) -> np.ndarray:
    """Pointwise decoding margin of the s-ls target,

        gamma(x) = (T-1)/T min_{j != D(f_rho(x))} <c_{D(f_rho(x))} - c_j, f_rho(x)>,

    nonnegative by construction; for T = 2 it reduces to |f_rho(x)|."""
    profile = target_function(dist, codebook, S_LS)
    S = profile.f_rho @ codebook.codes.T
    top_label = decode_batch(codebook, profile.f_rho) - 1
    idx = np.arange(dist.m)
    top = S[idx, top_label].copy()
    S = S.copy()
    S[idx, top_label] = -np.inf
    second = S.max(axis=1)
    return (codebook.T - 1) / codebook.T * (top - second)


def noise_constant(dist: FiniteDistribution, codebook: CodeBook,
                   q: float):
    """Smallest B_q with rho_X{gamma <= s} <= B_q s^q for all s in (0, 1].

    The left side is a step function jumping exactly at the observed
    margins, and s^q is increasing, so the supremum of the ratio over
    (0, 1] is attained at the jump points; evaluating there gives the
    exact constant rather than a grid approximation. Returns
    (B_q, margins). A zero margin carrying positive mass makes every
    finite B_q fail; that case returns B_q = inf.
    """
    if q <= 0:
        raise ConfigError(f"q must be positive, got {q}")
    gamma = target_margins(dist, codebook)
    w = dist.marginal
    live = w > 1e-15
    if np.any(gamma[live] <= 1e-15):
        return np.inf, gamma
    order = np.argsort(gamma[live])
    g_sorted = gamma[live][order]
    cdf = np.cumsum(w[live][order])
    in_range = g_sorted <= 1.0
    if not np.any(in_range):
        return 0.0, gamma
    ratios = cdf[in_range] / g_sorted[in_range] ** q
    return float(ratios.max()), gamma


@dataclass(frozen=True)
class NoiseReport:
    q: float
    B_q: float
    K_const: float
    exponent: float
    trials: int
    violations: int
    max_ratio: float
    rejected: bool             # zero-margin atom: condition unsatisfiable
    passed: bool


def check_noise_improved_bound(dist: FiniteDistribution, codebook: CodeBook,
                               q: float, trials: int,
                               rng=None) -> NoiseReport:
    """Verify the improved s-ls rate under the margin noise condition:

        R(D(f)) - R(D(f_rho)) <= K (2(T-1)/T (E(f) - E(f_rho)))^{(q+1)/(q+2)}

    with K = (2 sqrt(B_q + 1))^{(2q+2)/(q+2)} and B_q computed exactly
    from the margin distribution. Distributions with a zero-margin atom
    are rejected (no finite B_q exists) rather than asserted against.
    """
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    if rng is None:
        rng = np.random.default_rng(0)
    B_q, _ = noise_constant(dist, codebook, q)
    exponent = (q + 1.0) / (q + 2.0)
    if not np.isfinite(B_q):
        return NoiseReport(q=q, B_q=np.inf, K_const=np.inf, exponent=exponent,
                           trials=0, violations=0, max_ratio=0.0,
                           rejected=True, passed=False)
    K_const = (2.0 * np.sqrt(B_q + 1.0)) ** ((2.0 * q + 2.0) / (q + 2.0))
    profile = target_function(dist, codebook, S_LS)
    r_target = misclass_risk(dist, codebook, profile.f_rho)
    e_target = expected_loss(dist, codebook, S_LS, profile.f_rho)
    scale = 2.0 * (codebook.T - 1) / codebook.T
    violations = 0
    max_ratio = 0.0
    for _ in range(trials):
        F = sample_scores(rng, codebook, dist.m, S_LS)
        lhs = misclass_risk(dist, codebook, F) - r_target
        excess = max(expected_loss(dist, codebook, S_LS, F) - e_target, 0.0)
        rhs = K_const * (scale * excess) ** exponent
        if lhs > rhs + SLACK:
            violations += 1
        if rhs > 0:
            max_ratio = max(max_ratio, lhs / rhs)
        elif lhs > SLACK:
            max_ratio = np.inf
    return NoiseReport(q=q, B_q=B_q, K_const=float(K_const), exponent=exponent,
                       trials=trials, violations=violations,
                       max_ratio=float(max_ratio), rejected=False,
                       passed=violations == 0)


@dataclass(frozen=True)
class SuiteLine:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class TheorySuiteReport:
    T: int
    seed: int
    trials: int
    lines: list[SuiteLine] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(line.passed for line in self.lines)

    def summary(self) -> str:
        out = [f"theory checks for T={self.T} (seed {self.seed}, "
               f"{self.trials} trials per loss)"]
        for line in self.lines:
            status = "PASS" if line.passed else "FAIL"
            out.append(f"  [{status}] {line.name}: {line.detail}")
        out.append("all checks passed" if self.passed else "SOME CHECKS FAILED")
        return "\n".join(out)


def verify_theory_suite(T: int, seed: int, trials: int = 1000,
                        noise_dists: int = 100, noise_samples: int = 20,
                        qs=(0.5, 1.0, 4.0),
                        dominant_min: float = 0.9) -> TheorySuiteReport:
    """Full numerical verification run for one class count.

    Per loss: `trials` fresh (distribution, score sample) pairs feed the
    comparison-inequality check, and every sampled distribution also
    passes Fisher consistency. Then `noise_dists` near-deterministic
    distributions (conditional max >= dominant_min) are checked against
    the improved s-ls bound for each q.
    """
    if T < 2:
        raise ConfigError(f"T must be >= 2, got {T}")
    if trials < 1:
        raise ConfigError(f"trials must be >= 1, got {trials}")
    from .coding import build_codebook

    codebook = build_codebook(T)
    rng = np.random.default_rng(seed)
    report = TheorySuiteReport(T=T, seed=seed, trials=trials)
    for kind in LOSS_KINDS:
        fisher_fail = 0
        skipped = 0
        violations = 0
        max_ratio = 0.0
        for _ in range(trials):
            m = int(rng.integers(2, 7))
            dist = random_distribution(rng, m, T)
            fr = check_fisher_consistency(dist, codebook, kind, rng=rng)
            fisher_fail += 0 if fr.passed else 1
            skipped += fr.skipped_ties
            cr = check_comparison_inequality(dist, codebook, kind, 1, rng=rng)
            violations += cr.violations
            max_ratio = max(max_ratio, cr.max_ratio)
        report.lines.append(SuiteLine(
            name=f"fisher-consistency {kind}",
            passed=fisher_fail == 0,
            detail=f"{trials} distributions, {fisher_fail} failures, "
                   f"{skipped} tied points skipped"))
        report.lines.append(SuiteLine(
            name=f"comparison-inequality {kind}",
            passed=violations == 0,
            detail=f"{trials} (distribution, f) pairs, {violations} violations, "
                   f"max LHS/RHS {max_ratio:.6f}"))
    for q in qs:
        rejected = 0
        violations = 0
        max_ratio = 0.0
        worst_B = 0.0
        exponent = (q + 1.0) / (q + 2.0)
        for _ in range(noise_dists):
            m = int(rng.integers(2, 7))
            dist = random_distribution(rng, m, T, dominant_min=dominant_min)
            nr = check_noise_improved_bound(dist, codebook, q, noise_samples,
                                            rng=rng)
            if nr.rejected:
                rejected += 1
                continue
            violations += nr.violations
            max_ratio = max(max_ratio, nr.max_ratio)
            worst_B = max(worst_B, nr.B_q)
        improves = exponent > 0.5
        report.lines.append(SuiteLine(
            name=f"noise-bound q={q:g}",
            passed=violations == 0 and improves,
            detail=f"{noise_dists} distributions ({rejected} rejected), "
                   f"{violations} violations, max LHS/RHS {max_ratio:.6f}, "
                   f"max B_q {worst_B:.4f}, exponent {exponent:.4f} > 0.5"))
    return report
