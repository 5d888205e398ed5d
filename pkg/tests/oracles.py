"""Independent reference implementations used as test oracles.

Everything here is deliberately written from the per-design closed forms and
plain scipy, without reusing the package's affine kernels, so the tests
compare two genuinely different routes to the same numbers.
"""

import math

from scipy.stats import norm


def phi(x: float) -> float:
    """Standard normal CDF via the complementary error function."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


_Z_CACHE: dict[float, float] = {}


def z_upper(q: float) -> float:
    """Upper q-quantile of the standard normal."""
    if q not in _Z_CACHE:
        _Z_CACHE[q] = float(norm.ppf(1.0 - q))
    return _Z_CACHE[q]


def warner_power(p, pi0, pi1, alpha, n):
    z = z_upper(alpha / 2)
    shift = 2.0 * math.sqrt(n) * (pi0 - pi1) * (2.0 * p - 1.0)
    rad0 = math.sqrt(1.0 - (2.0 * pi0 - 1.0) ** 2 * (2.0 * p - 1.0) ** 2)
    rad1 = math.sqrt(1.0 - (2.0 * pi1 - 1.0) ** 2 * (2.0 * p - 1.0) ** 2)
    return 1.0 + phi((shift - z * rad0) / rad1) - phi((shift + z * rad0) / rad1)


def _lam_power(lam0, lam1, scale, pi0, pi1, alpha, n):
    z = z_upper(alpha / 2)
    shift = math.sqrt(n) * scale * (pi0 - pi1)
    rad0 = math.sqrt(lam0 - lam0 * lam0)
    rad1 = math.sqrt(lam1 - lam1 * lam1)
    return 1.0 + phi((shift - z * rad0) / rad1) - phi((shift + z * rad0) / rad1)


def uqrr_power(p, pi_y, pi0, pi1, alpha, n):
    return _lam_power(
        p * pi0 + (1 - p) * pi_y, p * pi1 + (1 - p) * pi_y, p, pi0, pi1, alpha, n
    )


def frd_power(p1, p2, pi0, pi1, alpha, n):
    scale = 1.0 - p1 - p2
    return _lam_power(
        p2 + scale * pi0, p2 + scale * pi1, scale, pi0, pi1, alpha, n
    )


def kuk_power(p1, p2, pi0, pi1, alpha, n):
    return _lam_power(
        p1 * pi0 + p2 * (1 - pi0), p1 * pi1 + p2 * (1 - pi1), p1 - p2, pi0, pi1, alpha, n
    )


def twostep_power(p, pi0, pi1, alpha, n):
    return _lam_power(
        p * pi0 + p * (1 - p), p * pi1 + p * (1 - p), p, pi0, pi1, alpha, n
    )


def direct_power(pi0, pi1, alpha, n):
    return _lam_power(pi0, pi1, 1.0, pi0, pi1, alpha, n)


def scan_min_n(power_fn, target, n_max):
    """Smallest n with power_fn(n) >= target by exhaustive linear scan."""
    for n in range(1, n_max + 1):
        if power_fn(n) >= target:
            return n
    return None
