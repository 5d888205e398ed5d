"""Wald-test power, sample sizes, and hypothesis tests for randomized-response data.

The prevalence estimator T is asymptotically normal, so the two-sided test of
``pi = pi0`` at level ``alpha`` rejects when
``|T - pi0| > z_{alpha/2} * sqrt(V0)`` with ``V0`` the estimator variance
under the null.  Against the alternative ``pi = pi1`` the rejection
probability is::

    power = Phi(d1) + 1 - Phi(d2)
    d1 = (pi0 - pi1 - z_{alpha/2} * sqrt(V0)) / sqrt(V1)
    d2 = (pi0 - pi1 + z_{alpha/2} * sqrt(V0)) / sqrt(V1)

Power is strictly increasing in n (the d-bounds drift apart around a fixed
gap), which makes the minimal sample size binary-searchable.  The closed-form
approximation drops the vanishing Phi term and solves the dominant one for n::

    n ~ ((z_target * sqrt(u1) + z_{alpha/2} * sqrt(u0)) / (pi0 - pi1))**2

where ``u = n * V`` is the per-observation variance and ``z_target`` is the
upper quantile at the target power.  :func:`required_sample_size` evaluates
this closed form (ceiled); :func:`exact_sample_size` searches for the true
minimal n.  The two may differ by a hair because of the dropped term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .designs import DesignSpec, estimator_variance, point_estimate, validate
from .errors import InvalidParameter

__all__ = [
    "Hypothesis",
    "PowerResult",
    "WaldTestResult",
    "normal_cdf",
    "normal_quantile",
    "power",
    "power_from_unit_variances",
    "required_sample_size",
    "exact_sample_size",
    "binomial_baseline_n",
    "wald_test",
]


def normal_cdf(x):
    """Standard normal CDF Phi(x); accepts scalars or arrays."""
    return ndtr(x)


def normal_quantile(q: float) -> float:
    """Inverse standard normal CDF, accurate to full double precision."""
    if not 0.0 < q < 1.0:
        raise InvalidParameter(f"quantile argument must lie in (0, 1), got {q!r}")
    return float(ndtri(q))


@dataclass(frozen=True)
class Hypothesis:
    """Two-sided test of pi = pi0 against pi = pi1 at significance level alpha."""

    pi0: float
    pi1: float
    alpha: float = 0.05

    def __post_init__(self):
        for name in ("pi0", "pi1", "alpha"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v) or not 0.0 < v < 1.0:
                raise InvalidParameter(f"{name} must lie strictly between 0 and 1, got {v!r}")
        if self.pi0 == self.pi1:
            raise InvalidParameter("pi0 and pi1 must differ")

    @property
    def z_half(self) -> float:
        """Upper alpha/2 standard normal quantile."""
        return normal_quantile(1.0 - self.alpha / 2.0)


@dataclass(frozen=True)
class PowerResult:
    """Power of the two-sided test plus its intermediate quantities."""

    power: float
    d1: float
    d2: float
    var0: float
    var1: float


@dataclass(frozen=True)
class WaldTestResult:
    estimate: float
    z: float
    reject: bool


def power_from_unit_variances(unit_var0, unit_var1, pi0, pi1, alpha, n):
    """Vectorized power from per-observation variances.

    ``unit_var`` is n times the estimator variance (independent of n).  All
    arguments broadcast, so grids of design parameters and sample sizes can be
    evaluated in one call.
    """
    z = normal_quantile(1.0 - alpha / 2.0)
    s0 = np.sqrt(np.asarray(unit_var0) / n)
    s1 = np.sqrt(np.asarray(unit_var1) / n)
    delta = pi0 - pi1
    d1 = (delta - z * s0) / s1
    d2 = (delta + z * s0) / s1
    return ndtr(d1) + 1.0 - ndtr(d2)


def power(spec: DesignSpec, hyp: Hypothesis, n: int) -> PowerResult:
    """Power of the two-sided Wald test under the given design and sample size."""
    n = int(n)
    if n < 1:
        raise InvalidParameter(f"n must be a positive integer, got {n}")
    var0 = estimator_variance(spec, hyp.pi0, n)
    var1 = estimator_variance(spec, hyp.pi1, n)
    z = hyp.z_half
    delta = hyp.pi0 - hyp.pi1
    d1 = (delta - z * math.sqrt(var0)) / math.sqrt(var1)
    d2 = (delta + z * math.sqrt(var0)) / math.sqrt(var1)
    value = float(ndtr(d1) + 1.0 - ndtr(d2))
    return PowerResult(power=value, d1=d1, d2=d2, var0=var0, var1=var1)


def _check_target_power(target_power: float) -> float:
    target_power = float(target_power)
    if not 0.0 < target_power < 1.0:
        raise InvalidParameter(
            f"target power must lie strictly between 0 and 1, got {target_power!r}"
        )
    return target_power


def required_sample_size(spec: DesignSpec, hyp: Hypothesis, target_power: float) -> int:
    """Closed-form sample size for the target power, rounded up.

    The exact power at the returned n can undershoot the target by a sliver
    (at most ~0.005) because the closed form drops a vanishing term; use
    :func:`exact_sample_size` for the search-based minimal n.
    """
    target_power = _check_target_power(target_power)
    u0 = estimator_variance(spec, hyp.pi0, 1)
    u1 = estimator_variance(spec, hyp.pi1, 1)
    z_a = hyp.z_half
    z_b = normal_quantile(target_power)
    raw = ((z_b * math.sqrt(u1) + z_a * math.sqrt(u0)) / (hyp.pi0 - hyp.pi1)) ** 2
    return max(1, math.ceil(raw - 1e-12))


def exact_sample_size(spec: DesignSpec, hyp: Hypothesis, target_power: float) -> int:
    """Minimal n whose exact power reaches the target (binary search).

    Valid because power is strictly increasing in n.
    """
    target_power = _check_target_power(target_power)
    u0 = estimator_variance(spec, hyp.pi0, 1)
    u1 = estimator_variance(spec, hyp.pi1, 1)

    def reached(n: int) -> bool:
        return float(
            power_from_unit_variances(u0, u1, hyp.pi0, hyp.pi1, hyp.alpha, n)
        ) >= target_power

    hi = max(required_sample_size(spec, hyp, target_power), 1)
    while not reached(hi):
        hi *= 2
        if hi > 2**62:
            raise InvalidParameter("target power unreachable at any sample size")
    lo = 1
    while lo < hi:
        mid = (lo + hi) // 2
        if reached(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def binomial_baseline_n(hyp: Hypothesis, target_power: float) -> int:
    """Sample size of the direct one-sample binomial test, rounded up.

    The no-randomization floor: every randomized-response design needs at
    least this many respondents for the same hypothesis and power.
    """
    target_power = _check_target_power(target_power)
    z_a = hyp.z_half
    z_b = normal_quantile(target_power)
    raw = (
        (z_a * math.sqrt(hyp.pi0 * (1.0 - hyp.pi0)) + z_b * math.sqrt(hyp.pi1 * (1.0 - hyp.pi1)))
        / (hyp.pi0 - hyp.pi1)
    ) ** 2
    return max(1, math.ceil(raw - 1e-12))


def wald_test(spec: DesignSpec, hyp: Hypothesis, yes_count: int, n: int) -> WaldTestResult:
    """Apply the two-sided Wald test to observed counts.

    Rejects when the estimate deviates from pi0 by more than
    z_{alpha/2} standard errors, with the standard error evaluated under the
    null.
    """
    validate(spec)
    n = int(n)
    yes_count = int(yes_count)
    if n < 1:
        raise InvalidParameter(f"n must be a positive integer, got {n}")
    if not 0 <= yes_count <= n:
        raise InvalidParameter(f"yes_count must lie in [0, {n}], got {yes_count}")
    estimate = point_estimate(spec, yes_count / n)
    se0 = math.sqrt(estimator_variance(spec, hyp.pi0, n))
    z = (estimate - hyp.pi0) / se0
    return WaldTestResult(estimate=estimate, z=z, reject=abs(z) > hyp.z_half)
