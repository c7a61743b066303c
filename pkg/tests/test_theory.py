import numpy as np
import pytest

from simplexmc.coding import build_codebook, decode
from simplexmc.errors import ConfigError, DataError
from simplexmc.losses import LOSS_KINDS, S_LS, SC_SVM, SH_SVM, loss_value
from simplexmc import theory
from simplexmc.theory import (FiniteDistribution, bayes_risk, bayes_rule,
                              check_comparison_inequality,
                              check_fisher_consistency,
                              check_noise_improved_bound, expected_loss,
                              misclass_risk, noise_constant,
                              random_distribution, sample_scores,
                              target_function, target_margins,
                              verify_theory_suite)


def dist(marginal, conditionals):
    return FiniteDistribution(marginal=np.asarray(marginal, float),
                              conditionals=np.asarray(conditionals, float))


TWO_POINT = dist([0.5, 0.5], [[0.8, 0.2], [0.3, 0.7]])


def test_distribution_validation():
    with pytest.raises(DataError):
        dist([0.5, 0.6], [[1.0, 0.0], [0.0, 1.0]])
    with pytest.raises(DataError):
        dist([0.5, 0.5], [[0.9, 0.2], [0.0, 1.0]])
    with pytest.raises(DataError):
        dist([0.5, 0.5], [[1.1, -0.1], [0.0, 1.0]])


def test_bayes_rule_and_risk():
    one_hot = dist([0.25, 0.75], [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
    assert np.array_equal(bayes_rule(one_hot), [1, 3])
    assert bayes_risk(one_hot) == 0.0

    uniform = dist([1.0], [[1 / 3, 1 / 3, 1 / 3]])
    assert bayes_risk(uniform) == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert bayes_rule(uniform)[0] == 1    # tie goes to the first label

    assert np.array_equal(bayes_rule(TWO_POINT), [1, 2])
    assert bayes_risk(TWO_POINT) == pytest.approx(0.25, abs=1e-15)


def test_misclass_risk_cases():
    cb = build_codebook(2)
    F = cb.codes[bayes_rule(TWO_POINT) - 1]
    assert misclass_risk(TWO_POINT, cb, F) == pytest.approx(
        bayes_risk(TWO_POINT), abs=1e-15)
    # all-zero scores decode to label 1 everywhere
    zero_risk = misclass_risk(TWO_POINT, cb, np.zeros((2, 1)))
    assert zero_risk == pytest.approx(0.5 * 0.2 + 0.5 * 0.7, abs=1e-15)


def test_misclass_risk_enumeration_oracle():
    cb = build_codebook(3)
    d = dist([0.2, 0.5, 0.3],
             [[0.6, 0.3, 0.1], [0.1, 0.1, 0.8], [0.4, 0.4, 0.2]])
    rng = np.random.default_rng(0)
    for _ in range(20):
        F = rng.normal(size=(3, 2))
        total = sum(d.marginal[i] * (1.0 - d.conditionals[i, decode(cb, F[i]) - 1])
                    for i in range(3))
        assert misclass_risk(d, cb, F) == pytest.approx(total, abs=1e-14)


def test_expected_loss_cases(codebook3):
    det = dist([0.4, 0.6], [[1, 0, 0], [0, 0, 1]])
    F = codebook3.codes[np.array([0, 2])]
    for kind in LOSS_KINDS:
        assert expected_loss(det, codebook3, kind, F) == pytest.approx(
            0.0, abs=1e-14)
    # at the origin every conditional row contributes exactly 1
    assert expected_loss(TWO_POINT, build_codebook(2), SC_SVM,
                         np.zeros((2, 1))) == pytest.approx(1.0, abs=1e-14)


def test_expected_loss_single_point_variance_formula(codebook3):
    d = dist([1.0], [[0.5, 0.3, 0.2]])
    profile = target_function(d, codebook3, S_LS)
    mean_code = d.conditionals[0] @ codebook3.codes
    expected = sum(d.conditionals[0][y] *
                   np.sum((codebook3.codes[y] - mean_code) ** 2)
                   for y in range(3))
    assert expected_loss(d, codebook3, S_LS, profile.f_rho) == pytest.approx(
        expected, abs=1e-14)


def test_expected_loss_matches_scalar_loss_values(codebook3):
    rng = np.random.default_rng(1)
    d = random_distribution(rng, 4, 3)
    F = rng.normal(size=(4, 2))
    for kind in LOSS_KINDS:
        total = sum(d.marginal[i] * d.conditionals[i, y - 1]
                    * loss_value(kind, codebook3, y, F[i])
                    for i in range(4) for y in (1, 2, 3))
        assert expected_loss(d, codebook3, kind, F) == pytest.approx(
            total, abs=1e-13)


def test_target_function_profiles(codebook3):
    uniform = dist([1.0], [[1 / 3, 1 / 3, 1 / 3]])
    assert np.allclose(target_function(uniform, codebook3, S_LS).f_rho,
                       0.0, atol=1e-15)
    one_hot = dist([1.0], [[0.0, 1.0, 0.0]])
    for kind in LOSS_KINDS:
        assert np.allclose(target_function(one_hot, codebook3, kind).f_rho,
                           codebook3.codes[1], atol=1e-15)
    skew = dist([1.0], [[0.5, 0.3, 0.2]])
    prof = target_function(skew, codebook3, S_LS)
    assert np.allclose(prof.f_rho[0],
                       0.5 * codebook3.codes[0] + 0.3 * codebook3.codes[1]
                       + 0.2 * codebook3.codes[2], atol=1e-15)
    assert decode(codebook3, prof.f_rho[0]) == 1


def test_comparison_constants_table():
    for T in (2, 3, 5, 9):
        cb = build_codebook(T)
        d = dist([1.0], [np.full(T, 1.0 / T)])
        ls = target_function(d, cb, S_LS)
        assert ls.C_T == pytest.approx(np.sqrt(2.0 * (T - 1) / T))
        assert ls.alpha == 0.5
        for kind in (SC_SVM, SH_SVM):
            prof = target_function(d, cb, kind)
            assert prof.C_T == float(T - 1)
            assert prof.alpha == 1.0


def test_fisher_consistency_random_distributions():
    rng = np.random.default_rng(2)
    for T in (2, 3, 5):
        cb = build_codebook(T)
        for kind in LOSS_KINDS:
            for _ in range(100):
                d = random_distribution(rng, int(rng.integers(2, 7)), T)
                report = check_fisher_consistency(d, cb, kind, rng=rng)
                assert report.passed, (kind, T)


def test_least_squares_pointwise_minimizer(codebook3):
    # the conditional code mean solves the first-order condition of
    # sum_y rho_y ||c_y - v||^2; confirm numerically via a quadratic solve
    rho = np.array([0.6, 0.1, 0.3])
    target = rho @ codebook3.codes
    H = 2.0 * np.eye(2)
    b = 2.0 * rho @ codebook3.codes
    assert np.allclose(np.linalg.solve(H, b), target, atol=1e-14)
    d = dist([1.0], [rho])
    assert np.allclose(target_function(d, codebook3, S_LS).f_rho[0], target,
                       atol=1e-15)


def test_halfspace_target_attains_hull_minimum(codebook3):
    d = dist([1.0], [[0.2, 0.7, 0.1]])
    prof = target_function(d, codebook3, SH_SVM)
    base = expected_loss(d, codebook3, SH_SVM, prof.f_rho)
    ticks = np.arange(0.0, 1.0 + 1e-12, 0.01)
    best = np.inf
    for a in ticks:
        for b in ticks[ticks <= 1.0 - a + 1e-12]:
            w = np.array([a, b, 1.0 - a - b])
            F = (w @ codebook3.codes)[None, :]
            best = min(best, expected_loss(d, codebook3, SH_SVM, F))
    assert base <= best + 1e-12


def test_comparison_inequality_zero_at_target(codebook3):
    d = dist([0.3, 0.7], [[0.9, 0.05, 0.05], [0.1, 0.2, 0.7]])
    for kind in LOSS_KINDS:
        prof = target_function(d, codebook3, kind)
        lhs = misclass_risk(d, codebook3, prof.f_rho) - misclass_risk(
            d, codebook3, target_function(d, codebook3, kind).f_rho)
        assert lhs == 0.0


def test_comparison_inequality_random_sweep():
    rng = np.random.default_rng(3)
    for T in (2, 3, 5):
        cb = build_codebook(T)
        for kind in LOSS_KINDS:
            for _ in range(60):
                d = random_distribution(rng, int(rng.integers(2, 7)), T)
                rep = check_comparison_inequality(d, cb, kind, trials=5,
                                                  rng=rng)
                assert rep.violations == 0
                assert rep.max_ratio <= 1.0 + 1e-9


def test_binary_least_squares_comparison_is_square_root():
    cb = build_codebook(2)
    rng = np.random.default_rng(4)
    for _ in range(50):
        d = random_distribution(rng, 3, 2)
        prof = target_function(d, cb, S_LS)
        assert prof.C_T == pytest.approx(1.0)   # sqrt(2*(T-1)/T) at T=2
        F = sample_scores(rng, cb, 3, S_LS)
        lhs = misclass_risk(d, cb, F) - misclass_risk(d, cb, prof.f_rho)
        excess = max(expected_loss(d, cb, S_LS, F)
                     - expected_loss(d, cb, S_LS, prof.f_rho), 0.0)
        assert lhs <= np.sqrt(excess) + 1e-12


def test_binary_margin_is_absolute_target():
    cb = build_codebook(2)
    rng = np.random.default_rng(5)
    for _ in range(50):
        d = random_distribution(rng, 4, 2)
        gamma = target_margins(d, cb)
        f = target_function(d, cb, S_LS).f_rho[:, 0]
        assert np.max(np.abs(gamma - np.abs(f))) <= 1e-12


def test_noise_constant_exact_on_a_two_point_distribution():
    cb = build_codebook(2)
    # margins |2p - 1|: 0.8 and 0.2 with weights 0.3 and 0.7
    d = dist([0.3, 0.7], [[0.9, 0.1], [0.4, 0.6]])
    q = 1.0
    B_q, gamma = noise_constant(d, cb, q)
    assert np.allclose(np.sort(gamma), [0.2, 0.8], atol=1e-12)
    # step-function supremum sits at a jump: max(0.7/0.2, 1.0/0.8)
    assert B_q == pytest.approx(max(0.7 / 0.2, 1.0 / 0.8), abs=1e-12)


def test_noise_rejects_zero_margin_atom(codebook3):
    tied = dist([0.5, 0.5], [[0.4, 0.4, 0.2], [0.1, 0.8, 0.1]])
    rep = check_noise_improved_bound(tied, codebook3, q=1.0, trials=3)
    assert rep.rejected and not rep.passed
    assert not np.isfinite(rep.B_q)


def test_noise_improved_bound_near_deterministic():
    rng = np.random.default_rng(6)
    for T in (2, 3, 5):
        cb = build_codebook(T)
        for q in (0.5, 1.0, 4.0):
            exponent = (q + 1.0) / (q + 2.0)
            assert exponent > 0.5
            for _ in range(20):
                d = random_distribution(rng, 4, T, dominant_min=0.9)
                rep = check_noise_improved_bound(d, cb, q=q, trials=10,
                                                 rng=rng)
                assert not rep.rejected
                assert rep.passed
                assert rep.exponent == pytest.approx(exponent)
                expected_K = (2.0 * np.sqrt(rep.B_q + 1.0)) ** (
                    (2 * q + 2) / (q + 2))
                assert rep.K_const == pytest.approx(expected_K, rel=1e-12)


def test_sample_scores_respect_constraint_sets(codebook5):
    rng = np.random.default_rng(7)
    hull = sample_scores(rng, codebook5, 500, SH_SVM)
    # hull points decode with scores bounded by the code ball
    assert np.all(np.linalg.norm(hull, axis=1) <= 1.0 + 1e-12)
    ball = sample_scores(rng, codebook5, 500, S_LS)
    assert np.all(np.linalg.norm(ball, axis=1) <= 3.0 + 1e-12)
    assert np.any(np.linalg.norm(ball, axis=1) > 1.0)


def test_suite_end_to_end_small():
    report = verify_theory_suite(3, seed=0, trials=40, noise_dists=10,
                                 noise_samples=5)
    assert report.passed
    text = report.summary()
    assert "[PASS]" in text and "[FAIL]" not in text
    assert str(3) in text


def test_suite_rejects_bad_arguments():
    with pytest.raises(ConfigError):
        check_comparison_inequality(TWO_POINT, build_codebook(2), S_LS,
                                    trials=0)
    with pytest.raises(ConfigError):
        noise_constant(TWO_POINT, build_codebook(2), q=0.0)
    with pytest.raises(ConfigError):
        random_distribution(np.random.default_rng(0), 3, 2, dominant_min=0.3)
