"""Randomized-response mechanisms: estimators, variances, and privacy budgets.

Five classical binary randomized-response designs are supported.  Each
respondent holds a sensitive binary trait; the mechanism garbles the truthful
answer with a randomization device of known probabilities, so individual
reports are deniable while the population proportion remains estimable.

For every design the probability of an observed "Yes" is affine in the true
prevalence ``pi``::

    lambda(pi) = a * pi + b

with coefficients

    ==========  ==============  ===============
    design      a               b
    ==========  ==============  ===============
    warner      2p - 1          1 - p
    uqrr        p               (1 - p) * pi_y
    frd         1 - p1 - p2     p2
    kuk         p1 - p2         p2
    twostep     p               p * (1 - p)
    ==========  ==============  ===============

From this single form follow the unbiased estimator ``(yes_rate - b) / a``
and its variance ``lambda * (1 - lambda) / (n * a**2)``.

The local differential-privacy budget is the worst-case log-ratio of report
probabilities between the two possible truths.  With ``q1 = lambda(1)`` and
``q0 = lambda(0)`` the report given truth=1 is Bernoulli(q1) and given
truth=0 is Bernoulli(q0), hence (natural log throughout)::

    epsilon = max(|ln(q1 / q0)|, |ln((1 - q1) / (1 - q0))|)

Design parameter semantics:

* ``warner``: spinner shows the sensitive statement with probability ``p``
  (``p != 1/2``); the respondent says whether the shown statement matches
  their status.
* ``uqrr`` (unrelated question): the sensitive question is asked with
  probability ``p``, otherwise an innocuous question with known "Yes"
  prevalence ``pi_y`` is answered.
* ``frd`` (forced response): with probability ``p1`` the answer is forced to
  "No", with probability ``p2`` forced to "Yes", otherwise truthful
  (``p1 + p2 < 1``).
* ``kuk``: the respondent draws from deck 1 (red-card probability ``p1``) if
  they carry the trait, from deck 2 (``p2``) otherwise, and reports the card
  colour (``p1 != p2``).
* ``twostep``: a first coin (heads probability ``p``) selects a truthful
  answer; on tails a second identical coin is flipped and its outcome is
  reported as Yes/No.

Direct questioning is representable as a degenerate forced-response design
with ``p1 = p2 = 0`` built via :func:`direct_question`; its budget is
unbounded.

All operations are pure functions of immutable values and are safe to call
concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InfiniteBudget, InvalidParameter

__all__ = [
    "DesignKind",
    "DesignSpec",
    "warner",
    "unrelated_question",
    "forced_response",
    "kuk",
    "two_step",
    "direct_question",
    "spec_from_params",
    "parse_design_kind",
    "validate",
    "yes_probability",
    "point_estimate",
    "estimator_variance",
    "privacy_budget",
    "response_distributions",
    "clamp_proportion",
]


class DesignKind(str, Enum):
    """The five supported randomized-response mechanisms."""

    WARNER = "warner"
    UNRELATED_QUESTION = "uqrr"
    FORCED_RESPONSE = "frd"
    KUK = "kuk"
    TWO_STEP = "twostep"


_KIND_ALIASES = {
    "warner": DesignKind.WARNER,
    "uqrr": DesignKind.UNRELATED_QUESTION,
    "unrelated": DesignKind.UNRELATED_QUESTION,
    "unrelated_question": DesignKind.UNRELATED_QUESTION,
    "unrelated-question": DesignKind.UNRELATED_QUESTION,
    "frd": DesignKind.FORCED_RESPONSE,
    "forced": DesignKind.FORCED_RESPONSE,
    "forced_response": DesignKind.FORCED_RESPONSE,
    "forced-response": DesignKind.FORCED_RESPONSE,
    "kuk": DesignKind.KUK,
    "twostep": DesignKind.TWO_STEP,
    "two_step": DesignKind.TWO_STEP,
    "two-step": DesignKind.TWO_STEP,
}

#: Names accepted for the degenerate direct-questioning design.
DIRECT_NAMES = frozenset({"direct", "dq"})

# Parameter fields consumed by each design kind; all others must be absent.
_FIELDS = {
    DesignKind.WARNER: ("p",),
    DesignKind.UNRELATED_QUESTION: ("p", "pi_y"),
    DesignKind.FORCED_RESPONSE: ("p1", "p2"),
    DesignKind.KUK: ("p1", "p2"),
    DesignKind.TWO_STEP: ("p",),
}


@dataclass(frozen=True)
class DesignSpec:
    """One randomized-response design with its randomization parameters.

    Construct through the factory helpers (:func:`warner`, :func:`kuk`, ...)
    or :func:`spec_from_params`, which validate on creation.  ``direct=True``
    marks the degenerate forced-response design used for direct questioning;
    it relaxes the ``p1, p2 > 0`` requirement (both must then be exactly 0).
    """

    kind: DesignKind
    p: float | None = None
    p1: float | None = None
    p2: float | None = None
    pi_y: float | None = None
    direct: bool = False

    @property
    def name(self) -> str:
        """Canonical serialized name ("direct" for the degenerate design)."""
        return "direct" if self.direct else self.kind.value


def parse_design_kind(name: str) -> DesignKind:
    """Resolve a design name or alias to a :class:`DesignKind`."""
    try:
        return _KIND_ALIASES[name.strip().lower()]
    except KeyError:
        raise InvalidParameter(
            f"unknown design {name!r}; expected one of "
            f"{sorted(set(_KIND_ALIASES))} or {sorted(DIRECT_NAMES)}"
        ) from None


def warner(p: float) -> DesignSpec:
    spec = DesignSpec(DesignKind.WARNER, p=p)
    validate(spec)
    return spec


def unrelated_question(p: float, pi_y: float) -> DesignSpec:
    spec = DesignSpec(DesignKind.UNRELATED_QUESTION, p=p, pi_y=pi_y)
    validate(spec)
    return spec


def forced_response(p1: float, p2: float) -> DesignSpec:
    spec = DesignSpec(DesignKind.FORCED_RESPONSE, p1=p1, p2=p2)
    validate(spec)
    return spec


def kuk(p1: float, p2: float) -> DesignSpec:
    spec = DesignSpec(DesignKind.KUK, p1=p1, p2=p2)
    validate(spec)
    return spec


def two_step(p: float) -> DesignSpec:
    spec = DesignSpec(DesignKind.TWO_STEP, p=p)
    validate(spec)
    return spec


def direct_question() -> DesignSpec:
    """Direct questioning: everyone answers truthfully, no privacy guarantee."""
    spec = DesignSpec(DesignKind.FORCED_RESPONSE, p1=0.0, p2=0.0, direct=True)
    validate(spec)
    return spec


def spec_from_params(
    design: str,
    p: float | None = None,
    p1: float | None = None,
    p2: float | None = None,
    pi_y: float | None = None,
) -> DesignSpec:
    """Build and validate a spec from a design name plus loose parameters.

    This is the single entry point used by the CSV reader, the CLI, and the
    HTTP service.  ``design`` may be any alias, including "direct"/"dq".
    """
    name = design.strip().lower()
    if name in DIRECT_NAMES:
        if any(v is not None for v in (p, p1, p2, pi_y)):
            raise InvalidParameter("direct questioning takes no design parameters")
        return direct_question()
    spec = DesignSpec(parse_design_kind(name), p=p, p1=p1, p2=p2, pi_y=pi_y)
    validate(spec)
    return spec


def _require_open_unit(value: float | None, name: str, kind: DesignKind) -> float:
    if value is None:
        raise InvalidParameter(f"{name} is required for {kind.value}")
    value = float(value)
    if not math.isfinite(value) or not 0.0 < value < 1.0:
        raise InvalidParameter(f"{name} must lie strictly between 0 and 1, got {value!r}")
    return value


def validate(spec: DesignSpec) -> None:
    """Raise :class:`InvalidParameter` unless the spec satisfies its invariants.

    Parameters not used by the design kind must be ``None``.  Boundary
    probabilities 0 and 1 are rejected everywhere so that every budget ratio
    stays finite; the only exception is the explicit ``direct`` flag.
    """
    if not isinstance(spec.kind, DesignKind):
        raise InvalidParameter(f"unknown design kind {spec.kind!r}")

    if spec.direct:
        if (
            spec.kind is not DesignKind.FORCED_RESPONSE
            or spec.p1 != 0.0
            or spec.p2 != 0.0
            or spec.p is not None
            or spec.pi_y is not None
        ):
            raise InvalidParameter(
                "direct questioning must be forced-response with p1 = p2 = 0"
            )
        return

    used = _FIELDS[spec.kind]
    for field_name in ("p", "p1", "p2", "pi_y"):
        value = getattr(spec, field_name)
        if field_name in used:
            _require_open_unit(value, field_name, spec.kind)
        elif value is not None:
            raise InvalidParameter(f"{field_name} is not used by {spec.kind.value}")

    if spec.kind is DesignKind.WARNER and spec.p == 0.5:
        raise InvalidParameter("p must differ from 1/2")
    if spec.kind is DesignKind.FORCED_RESPONSE and spec.p1 + spec.p2 >= 1.0:
        raise InvalidParameter("p1 + p2 must be less than 1")
    if spec.kind is DesignKind.KUK and spec.p1 == spec.p2:
        raise InvalidParameter("p1 must differ from p2")


def _affine(spec: DesignSpec) -> tuple[float, float]:
    """Coefficients (a, b) of the observed-yes probability lambda = a*pi + b."""
    kind = spec.kind
    if kind is DesignKind.WARNER:
        return 2.0 * spec.p - 1.0, 1.0 - spec.p
    if kind is DesignKind.UNRELATED_QUESTION:
        return spec.p, (1.0 - spec.p) * spec.pi_y
    if kind is DesignKind.FORCED_RESPONSE:
        return 1.0 - spec.p1 - spec.p2, spec.p2
    if kind is DesignKind.KUK:
        return spec.p1 - spec.p2, spec.p2
    if kind is DesignKind.TWO_STEP:
        return spec.p, spec.p * (1.0 - spec.p)
    raise InvalidParameter(f"unknown design kind {kind!r}")


def _check_prevalence(pi: float) -> float:
    pi = float(pi)
    if not math.isfinite(pi) or not 0.0 <= pi <= 1.0:
        raise InvalidParameter(f"prevalence must lie in [0, 1], got {pi!r}")
    return pi


def yes_probability(spec: DesignSpec, pi: float) -> float:
    """Probability that a respondent with population prevalence ``pi`` reports "Yes"."""
    validate(spec)
    pi = _check_prevalence(pi)
    a, b = _affine(spec)
    return a * pi + b


def point_estimate(spec: DesignSpec, yes_rate: float) -> float:
    """Unbiased prevalence estimate from an observed "Yes" rate.

    The raw estimate may fall outside [0, 1]; it is returned unclamped to
    preserve unbiasedness.  Use :func:`clamp_proportion` for display.
    """
    validate(spec)
    yes_rate = float(yes_rate)
    if not math.isfinite(yes_rate) or not 0.0 <= yes_rate <= 1.0:
        raise InvalidParameter(f"yes_rate must lie in [0, 1], got {yes_rate!r}")
    a, b = _affine(spec)
    return (yes_rate - b) / a


def estimator_variance(spec: DesignSpec, pi: float, n: int) -> float:
    """Variance of the prevalence estimator at true prevalence ``pi`` and sample size ``n``."""
    validate(spec)
    pi = _check_prevalence(pi)
    n = int(n)
    if n < 1:
        raise InvalidParameter(f"n must be a positive integer, got {n}")
    a, b = _affine(spec)
    lam = a * pi + b
    return lam * (1.0 - lam) / (n * a * a)


def response_distributions(spec: DesignSpec) -> tuple[tuple[float, float], tuple[float, float]]:
    """Report distributions per truth, derived analytically.

    Returns ``((P(No|0), P(Yes|0)), (P(No|1), P(Yes|1)))`` where the truth
    index is carrier status.  These are the observed-yes probabilities at
    prevalence 0 and 1.
    """
    q0 = yes_probability(spec, 0.0)
    q1 = yes_probability(spec, 1.0)
    return (1.0 - q0, q0), (1.0 - q1, q1)


def privacy_budget(spec: DesignSpec) -> float:
    """Local differential-privacy budget epsilon of the mechanism.

    The tight bound: the maximum absolute log-ratio of report probabilities
    between the two truths, over both report values.  Raises
    :class:`InfiniteBudget` when a ratio divides by zero (direct questioning).
    """
    (no0, q0), (no1, q1) = response_distributions(spec)
    if min(q0, q1, no0, no1) <= 0.0:
        raise InfiniteBudget(
            f"privacy budget of {spec.name} is unbounded: some report is "
            "impossible under one truth"
        )
    return max(abs(math.log(q1 / q0)), abs(math.log(no1 / no0)))


def clamp_proportion(value: float) -> float:
    """Clamp a raw estimate into [0, 1] for reporting."""
    return min(1.0, max(0.0, value))
