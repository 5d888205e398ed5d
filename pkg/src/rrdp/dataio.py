"""Survey data ingestion and analysis reports.

Two CSV layouts are understood:

* counts: header ``design,p,p1,p2,pi_y,n,yes`` and a single data row holding
  the design name (any alias, or ``direct``), its parameters (blank when
  unused), the sample size and the yes-count.
* records: header ``response`` followed by one literal ``0`` or ``1`` per
  row; the design must be supplied by the caller since the file carries none.

Analysis plugs the observed yes-rate through the design's unbiased estimator.
The raw estimate may fall outside [0, 1] (sampling noise against the
mechanism's floor/ceiling); it is reported unclamped alongside a clamped
value, and the plug-in standard error is evaluated at the clamped estimate so
the variance formula stays in-domain.  When a hypothesis is supplied, a
null-based standard error and the Wald test come along.

Bundled fixtures (crowdsourced tax-return survey, two arms):

* ``amt_tax_dq_counts.csv``: direct questioning, 809 respondents, 84 yes.
* ``amt_tax_frd_counts.csv``: forced response with die probabilities 1/12
  (forced no) and 2/12 (forced yes), 1602 respondents.  The yes-count (435)
  is reconstructed from the published prevalence estimate, as the raw count
  was not released.
* ``amt_tax_dq_records.csv``: the direct arm as respondent-level records.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from importlib import resources

from .designs import (
    DesignSpec,
    clamp_proportion,
    estimator_variance,
    point_estimate,
    privacy_budget,
    spec_from_params,
    validate,
)
from .errors import InconsistentHeader, InfiniteBudget, InvalidParameter, ParseError
from .inference import Hypothesis, WaldTestResult, normal_quantile, wald_test

__all__ = [
    "Dataset",
    "AnalysisReport",
    "COUNTS_HEADER",
    "RECORDS_HEADER",
    "parse_dataset",
    "emit_dataset",
    "analyze",
    "fixture_path",
    "load_fixture",
]

COUNTS_HEADER = ("design", "p", "p1", "p2", "pi_y", "n", "yes")
RECORDS_HEADER = ("response",)

_FIXTURE_LABELS = {
    "amt_tax_dq_counts.csv": "AMT tax-return survey, direct-questioning arm",
    "amt_tax_dq_records.csv": "AMT tax-return survey, direct-questioning arm (records)",
    "amt_tax_frd_counts.csv": (
        "AMT tax-return survey, forced-response arm "
        "(yes-count reconstructed from the published estimate)"
    ),
}


@dataclass(frozen=True)
class Dataset:
    """Aggregated responses from one survey arm."""

    design: DesignSpec
    n: int
    yes_count: int
    label: str = ""

    def __post_init__(self):
        validate(self.design)
        if int(self.n) < 1:
            raise InvalidParameter(f"n must be a positive integer, got {self.n!r}")
        if not 0 <= int(self.yes_count) <= int(self.n):
            raise InvalidParameter(
                f"yes_count must lie in [0, {self.n}], got {self.yes_count!r}"
            )

    @property
    def yes_rate(self) -> float:
        return self.yes_count / self.n


@dataclass(frozen=True)
class AnalysisReport:
    """Estimate, uncertainty, realized privacy budget, and optional test."""

    estimate: float
    estimate_clamped: float
    std_error: float
    ci_95: tuple[float, float]
    epsilon_realized: float | None
    std_error_null: float | None
    test: WaldTestResult | None
    warnings: tuple[str, ...]


def _as_text(data) -> str:
    if isinstance(data, bytes):
        return data.decode("utf-8")
    if isinstance(data, str):
        return data
    read = data.read()
    return read.decode("utf-8") if isinstance(read, bytes) else read


def _parse_float(token: str, column: str, line: int) -> float | None:
    token = token.strip()
    if not token:
        return None
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"column {column!r} is not a number: {token!r}", line) from None


def _parse_int(token: str, column: str, line: int) -> int:
    token = token.strip()
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"column {column!r} is not an integer: {token!r}", line) from None


def parse_dataset(
    data,
    format: str = "counts",
    design: DesignSpec | None = None,
    label: str = "",
) -> Dataset:
    """Parse a counts or records CSV into a :class:`Dataset`.

    ``data`` may be text, bytes, or a readable stream.  The records format
    needs ``design`` supplied by the caller.  Raises :class:`ParseError` with
    the offending line number, or :class:`InconsistentHeader` when the header
    or the declared design parameters are invalid.
    """
    text = _as_text(data)
    rows = list(csv.reader(io.StringIO(text)))
    rows = [(i + 1, row) for i, row in enumerate(rows) if any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError("empty input", 0)

    if format == "counts":
        if design is not None:
            raise InvalidParameter("counts files carry their own design; do not pass one")
        header_line, header = rows[0]
        if tuple(cell.strip().lower() for cell in header) != COUNTS_HEADER:
            raise InconsistentHeader(
                f"expected header {','.join(COUNTS_HEADER)}", header_line
            )
        if len(rows) < 2:
            raise ParseError("missing data row", header_line + 1)
        if len(rows) > 2:
            raise ParseError("expected a single data row", rows[2][0])
        line, row = rows[1]
        if len(row) != len(COUNTS_HEADER):
            raise ParseError(
                f"expected {len(COUNTS_HEADER)} columns, got {len(row)}", line
            )
        name = row[0].strip()
        try:
            spec = spec_from_params(
                name,
                p=_parse_float(row[1], "p", line),
                p1=_parse_float(row[2], "p1", line),
                p2=_parse_float(row[3], "p2", line),
                pi_y=_parse_float(row[4], "pi_y", line),
            )
        except InvalidParameter as exc:
            raise InconsistentHeader(str(exc), line) from exc
        n = _parse_int(row[5], "n", line)
        yes = _parse_int(row[6], "yes", line)
        try:
            return Dataset(design=spec, n=n, yes_count=yes, label=label)
        except InvalidParameter as exc:
            raise ParseError(str(exc), line) from exc

    if format == "records":
        if design is None:
            raise InvalidParameter("records files carry no design; pass one explicitly")
        validate(design)
        header_line, header = rows[0]
        if tuple(cell.strip().lower() for cell in header) != RECORDS_HEADER:
            raise InconsistentHeader("expected header 'response'", header_line)
        n = 0
        yes = 0
        for line, row in rows[1:]:
            if len(row) != 1 or row[0].strip() not in ("0", "1"):
                raise ParseError(f"expected a literal 0 or 1, got {row!r}", line)
            n += 1
            yes += row[0].strip() == "1"
        if n == 0:
            raise ParseError("no response rows", header_line + 1)
        return Dataset(design=design, n=n, yes_count=yes, label=label)

    raise InvalidParameter(f"format must be 'counts' or 'records', got {format!r}")


def emit_dataset(ds: Dataset, format: str = "counts") -> str:
    """Serialize a dataset; parse_dataset inverts it (label excepted)."""
    if format == "counts":
        fields = [
            ds.design.name,
            *("" if v is None else repr(v) for v in (ds.design.p, ds.design.p1, ds.design.p2, ds.design.pi_y)),
            str(ds.n),
            str(ds.yes_count),
        ]
        if ds.design.direct:
            fields[2] = fields[3] = ""  # direct carries no printed parameters
        return ",".join(COUNTS_HEADER) + "\n" + ",".join(fields) + "\n"
    if format == "records":
        body = "\n".join(["1"] * ds.yes_count + ["0"] * (ds.n - ds.yes_count))
        return "response\n" + body + "\n"
    raise InvalidParameter(f"format must be 'counts' or 'records', got {format!r}")


def analyze(ds: Dataset, hyp: Hypothesis | None = None) -> AnalysisReport:
    """Estimate the sensitive prevalence and quantify its uncertainty.

    The 95% interval is centered at the raw estimate with half-width 1.96
    plug-in standard errors.  The realized privacy budget is ``None`` when
    unbounded (direct questioning).
    """
    estimate = point_estimate(ds.design, ds.yes_rate)
    clamped = clamp_proportion(estimate)
    std_error = math.sqrt(estimator_variance(ds.design, clamped, ds.n))
    z = normal_quantile(0.975)
    ci = (estimate - z * std_error, estimate + z * std_error)
    try:
        epsilon = privacy_budget(ds.design)
    except InfiniteBudget:
        epsilon = None
    warnings = ()
    if estimate < 0.0:
        warnings = ("raw estimate below 0: observed yes-rate is under the mechanism floor",)
    elif estimate > 1.0:
        warnings = ("raw estimate above 1: observed yes-rate is over the mechanism ceiling",)
    std_error_null = None
    test = None
    if hyp is not None:
        std_error_null = math.sqrt(estimator_variance(ds.design, hyp.pi0, ds.n))
        test = wald_test(ds.design, hyp, ds.yes_count, ds.n)
    return AnalysisReport(
        estimate=estimate,
        estimate_clamped=clamped,
        std_error=std_error,
        ci_95=ci,
        epsilon_realized=epsilon,
        std_error_null=std_error_null,
        test=test,
        warnings=warnings,
    )


def fixture_path(name: str):
    """Filesystem path of a bundled fixture file."""
    path = resources.files("rrdp").joinpath("fixtures", name)
    if not path.is_file():
        raise InvalidParameter(
            f"unknown fixture {name!r}; available: {sorted(_FIXTURE_LABELS)}"
        )
    return path


def load_fixture(name: str) -> Dataset:
    """Load a bundled counts fixture as a labelled dataset."""
    if not name.endswith("_counts.csv"):
        raise InvalidParameter("only counts fixtures can be loaded directly")
    text = fixture_path(name).read_text(encoding="utf-8")
    return parse_dataset(text, format="counts", label=_FIXTURE_LABELS.get(name, name))
