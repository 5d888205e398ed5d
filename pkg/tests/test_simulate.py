"""Monte-Carlo engine contracts: determinism, distribution, moments."""

import math

import numpy as np
import pytest
from scipy.stats import ks_2samp

from rrdp import (
    Hypothesis,
    SimConfig,
    estimator_variance,
    forced_response,
    kuk,
    power,
    run_simulation,
    simulate_responses,
    two_step,
    unrelated_question,
    warner,
    yes_probability,
)
from rrdp.simulate import _sample_yes_counts

FIVE = [
    warner(0.269),
    unrelated_question(0.407, 0.6),
    forced_response(0.32, 0.25),
    kuk(0.68, 0.25),
    two_step(0.418),
]


class TestSimulateResponses:
    def test_deterministic_given_seed(self):
        spec = warner(0.3)
        draws = {simulate_responses(spec, 0.2, 500, seed=99) for _ in range(5)}
        assert len(draws) == 1
        assert simulate_responses(spec, 0.2, 500, seed=100) != simulate_responses(
            spec, 0.2, 500, seed=99
        )

    def test_forced_yes_floor_at_zero_prevalence(self):
        spec = forced_response(1 / 12, 2 / 12)
        n = 200_000
        rate = simulate_responses(spec, 0.0, n, seed=1) / n
        assert rate == pytest.approx(1 / 6, abs=0.005)

    def test_spinner_rate_at_full_prevalence(self):
        n = 200_000
        rate = simulate_responses(warner(0.7), 1.0, n, seed=2) / n
        assert rate == pytest.approx(0.7, abs=0.005)

    @pytest.mark.parametrize("spec", FIVE)
    def test_sampling_paths_agree_in_distribution(self, spec):
        # the per-respondent walk and the one-shot binomial draw must be
        # statistically indistinguishable
        n, draws = 60, 100_000
        rng_a = np.random.default_rng(11)
        rng_b = np.random.default_rng(12)
        a = _sample_yes_counts(spec, 0.15, n, rng_a, draws, "respondent")
        b = _sample_yes_counts(spec, 0.15, n, rng_b, draws, "binomial")
        result = ks_2samp(a, b)
        assert result.pvalue > 0.001

    def test_respondent_method_is_default(self):
        spec = two_step(0.4)
        assert simulate_responses(spec, 0.3, 100, seed=5) == simulate_responses(
            spec, 0.3, 100, seed=5, method="respondent"
        )


class TestRunSimulation:
    def test_bit_identical_reports(self):
        cfg = SimConfig(
            spec=kuk(0.68, 0.25),
            true_pi=0.1038,
            n=809,
            replications=500,
            seed=314159,
            hyp=Hypothesis(0.2, 0.1038, 0.05),
        )
        assert run_simulation(cfg) == run_simulation(cfg)

    def test_report_invariants(self):
        cfg = SimConfig(
            spec=warner(0.269), true_pi=0.1, n=400, replications=800, seed=7
        )
        report = run_simulation(cfg)
        assert report.mse >= report.bias**2
        assert report.sd_estimate >= 0.0
        assert report.empirical_power is None
        assert report.replications == 800
        assert report.seed == 7

    # three parameter settings per design, crossed with three prevalences
    PARAM_GRID = (
        [warner(p) for p in (0.15, 0.269, 0.8)]
        + [unrelated_question(p, piy) for p, piy in ((0.25, 0.3), (0.407, 0.6), (0.75, 0.5))]
        + [forced_response(p1, p2) for p1, p2 in ((1 / 12, 2 / 12), (0.32, 0.25), (0.1, 0.4))]
        + [kuk(p1, p2) for p1, p2 in ((0.68, 0.25), (0.2, 0.6), (0.9, 0.4))]
        + [two_step(p) for p in (0.2, 0.418, 0.7)]
    )

    @pytest.mark.parametrize("spec", PARAM_GRID)
    @pytest.mark.parametrize("true_pi", [0.05, 0.1038, 0.35])
    def test_unbiased(self, spec, true_pi):
        cfg = SimConfig(spec=spec, true_pi=true_pi, n=500, replications=4000, seed=21)
        report = run_simulation(cfg)
        tolerance = 4.0 * report.sd_estimate / math.sqrt(cfg.replications)
        assert abs(report.mean_estimate - true_pi) <= tolerance

    @pytest.mark.parametrize("spec", FIVE)
    def test_variance_matches_analytic(self, spec):
        reps = 20_000
        cfg = SimConfig(spec=spec, true_pi=0.1038, n=809, replications=reps, seed=33)
        report = run_simulation(cfg)
        analytic = estimator_variance(spec, 0.1038, 809)
        sample_var = report.sd_estimate**2
        # sampling error of a variance estimate: var ~ s^2 * sqrt(2/(R-1))
        se = sample_var * math.sqrt(2.0 / (reps - 1))
        assert abs(sample_var - analytic) <= 3.0 * se

    def test_empirical_power_matches_analytic(self):
        spec = warner(0.269)
        hyp = Hypothesis(0.2, 0.1038, 0.05)
        reps = 20_000
        cfg = SimConfig(
            spec=spec, true_pi=0.1038, n=809, replications=reps, seed=55, hyp=hyp
        )
        report = run_simulation(cfg)
        analytic = power(spec, hyp, 809).power
        se = math.sqrt(analytic * (1 - analytic) / reps)
        assert abs(report.empirical_power - analytic) <= 3.0 * se

    def test_respondent_method_reproducible_and_unbiased(self):
        cfg = SimConfig(
            spec=forced_response(0.32, 0.25),
            true_pi=0.2,
            n=300,
            replications=1500,
            seed=77,
            method="respondent",
        )
        a = run_simulation(cfg)
        assert a == run_simulation(cfg)
        tol = 4.0 * a.sd_estimate / math.sqrt(cfg.replications)
        assert abs(a.mean_estimate - 0.2) <= tol

    def test_mean_rate_tracks_design_map(self):
        # aggregate yes-rate approaches the analytic response probability
        spec = unrelated_question(0.407, 0.6)
        lam = yes_probability(spec, 0.1038)
        counts = _sample_yes_counts(
            spec, 0.1038, 809, np.random.default_rng(3), 20_000, "binomial"
        )
        assert counts.mean() / 809 == pytest.approx(lam, abs=0.001)
