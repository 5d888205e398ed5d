"""Seeded Monte-Carlo engine for randomized-response studies.

Two distributionally identical sampling paths are provided:

* ``respondent``: each of the n respondents draws a truth ~ Bernoulli(pi) and
  pushes it through the design's actual randomization device (spinner, die,
  decks, coins).
* ``binomial``: the yes-count is drawn directly as Binomial(n, lambda(pi)).

Reproducibility: replication ``r`` of a run uses its own PCG64 generator
seeded from the entropy pair ``(seed, r)`` (NumPy SeedSequence), so aggregate
results are bit-identical regardless of execution order and replications may
be evaluated concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .designs import DesignKind, DesignSpec, point_estimate, validate, yes_probability
from .errors import InvalidParameter
from .inference import Hypothesis, wald_test

__all__ = ["SimConfig", "SimReport", "simulate_responses", "run_simulation"]

_METHODS = ("binomial", "respondent")


@dataclass(frozen=True)
class SimConfig:
    """One simulation study: design, truth, sample size, replications, seed."""

    spec: DesignSpec
    true_pi: float
    n: int
    replications: int
    seed: int
    hyp: Hypothesis | None = None
    method: str = "binomial"

    def __post_init__(self):
        validate(self.spec)
        if not 0.0 <= self.true_pi <= 1.0:
            raise InvalidParameter(f"true_pi must lie in [0, 1], got {self.true_pi!r}")
        if int(self.n) < 1:
            raise InvalidParameter(f"n must be a positive integer, got {self.n!r}")
        if int(self.replications) < 1:
            raise InvalidParameter(
                f"replications must be a positive integer, got {self.replications!r}"
            )
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidParameter("seed must fit in an unsigned 64-bit integer")
        if self.method not in _METHODS:
            raise InvalidParameter(f"method must be one of {_METHODS}, got {self.method!r}")


@dataclass(frozen=True)
class SimReport:
    """Replication summary: moments of the estimate and optional empirical power."""

    mean_estimate: float
    sd_estimate: float
    bias: float
    mse: float
    empirical_power: float | None
    replications: int
    seed: int


def _respondent_yes_counts(
    spec: DesignSpec, true_pi: float, n: int, rng: np.random.Generator, size: int
) -> np.ndarray:
    """Yes-counts from per-respondent two-stage sampling, vectorized over draws."""
    shape = (size, n)
    truth = rng.random(shape) < true_pi
    kind = spec.kind
    if kind is DesignKind.WARNER:
        shows_sensitive = rng.random(shape) < spec.p
        report = shows_sensitive == truth
    elif kind is DesignKind.UNRELATED_QUESTION:
        asks_sensitive = rng.random(shape) < spec.p
        innocuous = rng.random(shape) < spec.pi_y
        report = np.where(asks_sensitive, truth, innocuous)
    elif kind is DesignKind.FORCED_RESPONSE:
        die = rng.random(shape)
        forced_no = die < spec.p1
        forced_yes = (die >= spec.p1) & (die < spec.p1 + spec.p2)
        report = np.where(forced_no, False, np.where(forced_yes, True, truth))
    elif kind is DesignKind.KUK:
        deck1 = rng.random(shape) < spec.p1
        deck2 = rng.random(shape) < spec.p2
        report = np.where(truth, deck1, deck2)
    elif kind is DesignKind.TWO_STEP:
        first_heads = rng.random(shape) < spec.p
        second_heads = rng.random(shape) < spec.p
        report = np.where(first_heads, truth, second_heads)
    else:
        raise InvalidParameter(f"unknown design kind {kind!r}")
    return report.sum(axis=1)


def _sample_yes_counts(
    spec: DesignSpec,
    true_pi: float,
    n: int,
    rng: np.random.Generator,
    size: int,
    method: str,
) -> np.ndarray:
    if method == "binomial":
        lam = yes_probability(spec, true_pi)
        return rng.binomial(n, lam, size=size)
    if method == "respondent":
        return _respondent_yes_counts(spec, true_pi, n, rng, size)
    raise InvalidParameter(f"method must be one of {_METHODS}, got {method!r}")


def simulate_responses(
    spec: DesignSpec,
    true_pi: float,
    n: int,
    seed: int,
    method: str = "respondent",
) -> int:
    """Yes-count from one simulated survey of n respondents.

    The default walks every respondent through the randomization device; the
    ``binomial`` method draws the count in one shot from Binomial(n, lambda).
    Identical (arguments, seed) give identical counts.
    """
    validate(spec)
    n = int(n)
    if n < 1:
        raise InvalidParameter(f"n must be a positive integer, got {n}")
    if not 0.0 <= true_pi <= 1.0:
        raise InvalidParameter(f"true_pi must lie in [0, 1], got {true_pi!r}")
    rng = np.random.default_rng(seed)
    return int(_sample_yes_counts(spec, true_pi, n, rng, 1, method)[0])


def run_simulation(cfg: SimConfig) -> SimReport:
    """Replicate the study and summarize the estimator.

    Reports the mean and standard deviation of the estimates, bias and MSE
    against the configured truth, and (when a hypothesis is supplied) the
    fraction of replications in which the production Wald test rejects.
    """
    reps = int(cfg.replications)
    n = int(cfg.n)
    estimates = np.empty(reps)
    rejections = np.zeros(reps, dtype=bool) if cfg.hyp is not None else None
    for r in range(reps):
        rng = np.random.default_rng([int(cfg.seed), r])
        yes = int(_sample_yes_counts(cfg.spec, cfg.true_pi, n, rng, 1, cfg.method)[0])
        estimates[r] = point_estimate(cfg.spec, yes / n)
        if rejections is not None:
            rejections[r] = wald_test(cfg.spec, cfg.hyp, yes, n).reject
    mean = float(estimates.mean())
    sd = float(estimates.std(ddof=1)) if reps > 1 else 0.0
    bias = mean - cfg.true_pi
    mse = float(np.mean((estimates - cfg.true_pi) ** 2))
    return SimReport(
        mean_estimate=mean,
        sd_estimate=sd,
        bias=bias,
        mse=mse,
        empirical_power=float(rejections.mean()) if rejections is not None else None,
        replications=reps,
        seed=int(cfg.seed),
    )
