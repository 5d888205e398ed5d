"""Request/response schemas and handlers shared by the HTTP API and the CLI.

Every operation is a pure function from a validated request model to a
response model, so the CLI and the FastAPI routes produce identical payloads
from identical parameters.  All responses carry ``schema_version``.
"""

from __future__ import annotations

import math
import os

from pydantic import BaseModel, ConfigDict, Field

from . import dataio, designs, inference, optimizer, simulate
from .designs import DesignSpec, parse_design_kind, privacy_budget, spec_from_params
from .errors import InfiniteBudget, InvalidParameter
from .inference import Hypothesis
from .optimizer import DesignSolution, FeasibleRegion1D, Interval, PrivacyCap
from .simulate import SimConfig

SCHEMA_VERSION = "1.0"

INFEASIBLE_REMEDY = (
    "No design parameter satisfies the privacy and power constraints together. "
    "Relax the privacy constraint, increase the sample size, or accept a lower power."
)


def default_seed() -> int:
    """Simulation seed from the RRDP_SEED environment variable (0 when unset)."""
    return int(os.environ.get("RRDP_SEED", "0"))


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ---------------------------------------------------------------------------
# shared fragments
# ---------------------------------------------------------------------------


class DesignParams(StrictModel):
    """A design name (any alias, or "direct") plus its parameters."""

    design: str
    p: float | None = None
    p1: float | None = None
    p2: float | None = None
    pi_y: float | None = None

    def to_spec(self) -> DesignSpec:
        return spec_from_params(self.design, self.p, self.p1, self.p2, self.pi_y)


class DesignOut(StrictModel):
    design: str
    p: float | None = None
    p1: float | None = None
    p2: float | None = None
    pi_y: float | None = None

    @classmethod
    def from_spec(cls, spec: DesignSpec) -> "DesignOut":
        if spec.direct:
            return cls(design="direct")
        return cls(design=spec.name, p=spec.p, p1=spec.p1, p2=spec.p2, pi_y=spec.pi_y)


class HypothesisParams(StrictModel):
    pi0: float
    pi1: float
    alpha: float = 0.05

    def to_hypothesis(self) -> Hypothesis:
        return Hypothesis(pi0=self.pi0, pi1=self.pi1, alpha=self.alpha)


class TestOut(StrictModel):
    estimate: float
    z: float
    reject: bool


class SolutionOut(StrictModel):
    feasible: bool
    n_star: int | None = None
    params: DesignOut | None = None
    achieved_power: float | None = None
    achieved_epsilon: float | None = None

    @classmethod
    def from_solution(cls, sol: DesignSolution) -> "SolutionOut":
        return cls(
            feasible=sol.feasible,
            n_star=sol.n_star,
            params=DesignOut.from_spec(sol.params_star) if sol.params_star else None,
            achieved_power=sol.achieved_power,
            achieved_epsilon=sol.achieved_epsilon,
        )


class IntervalOut(StrictModel):
    lo: float
    hi: float
    lo_refined: float
    hi_refined: float
    lower_open: bool
    upper_open: bool
    display: str

    @classmethod
    def from_interval(cls, iv: Interval, grid: float) -> "IntervalOut":
        return cls(
            lo=iv.lo,
            hi=iv.hi,
            lo_refined=iv.lo_refined,
            hi_refined=iv.hi_refined,
            lower_open=iv.open_lower,
            upper_open=iv.open_upper,
            display=format_interval(iv, grid),
        )


def format_interval(iv: Interval, grid: float) -> str:
    """Human form at grid precision, e.g. ``(0.00, 0.28]`` or ``[0.72, 1.00]``."""
    dec = max(0, round(-math.log10(grid)))
    lo = 0.0 if iv.open_lower else iv.lo
    hi = 1.0 if iv.open_upper else iv.hi
    bracket = "(" if iv.open_lower else "["
    return f"{bracket}{lo:.{dec}f}, {hi:.{dec}f}]"


def format_region(region: FeasibleRegion1D) -> str:
    if not region.intervals:
        return "empty"
    return " ∪ ".join(format_interval(iv, region.grid) for iv in region.intervals)


# ---------------------------------------------------------------------------
# budget
# ---------------------------------------------------------------------------


class BudgetRequest(DesignParams):
    pass


class BudgetResponse(StrictModel):
    schema_version: str = SCHEMA_VERSION
    design: DesignOut
    epsilon: float | None
    unbounded: bool = False


def compute_budget(req: BudgetRequest) -> BudgetResponse:
    spec = req.to_spec()
    try:
        eps = privacy_budget(spec)
        return BudgetResponse(design=DesignOut.from_spec(spec), epsilon=eps)
    except InfiniteBudget:
        return BudgetResponse(design=DesignOut.from_spec(spec), epsilon=None, unbounded=True)


# ---------------------------------------------------------------------------
# power
# ---------------------------------------------------------------------------


class PowerRequest(DesignParams, HypothesisParams):
    n: int = Field(ge=1)


class PowerResponse(StrictModel):
    schema_version: str = SCHEMA_VERSION
    design: DesignOut
    n: int
    power: float
    d1: float
    d2: float
    var0: float
    var1: float


def compute_power(req: PowerRequest) -> PowerResponse:
    spec = req.to_spec()
    result = inference.power(spec, req.to_hypothesis(), req.n)
    return PowerResponse(
        design=DesignOut.from_spec(spec),
        n=req.n,
        power=result.power,
        d1=result.d1,
        d2=result.d2,
        var0=result.var0,
        var1=result.var1,
    )


# ---------------------------------------------------------------------------
# sample size
# ---------------------------------------------------------------------------


class SampleSizeRequest(DesignParams, HypothesisParams):
    target_power: float


class SampleSizeResponse(StrictModel):
    schema_version: str = SCHEMA_VERSION
    design: DesignOut
    target_power: float
    approx_n: int
    exact_n: int
    power_at_approx: float
    power_at_exact: float
    baseline_n: int


def compute_sample_size(req: SampleSizeRequest) -> SampleSizeResponse:
    spec = req.to_spec()
    hyp = req.to_hypothesis()
    approx_n = inference.required_sample_size(spec, hyp, req.target_power)
    exact_n = inference.exact_sample_size(spec, hyp, req.target_power)
    return SampleSizeResponse(
        design=DesignOut.from_spec(spec),
        target_power=req.target_power,
        approx_n=approx_n,
        exact_n=exact_n,
        power_at_approx=inference.power(spec, hyp, approx_n).power,
        power_at_exact=inference.power(spec, hyp, exact_n).power,
        baseline_n=inference.binomial_baseline_n(hyp, req.target_power),
    )


# ---------------------------------------------------------------------------
# budget inversion
# ---------------------------------------------------------------------------


class SolveParamRequest(StrictModel):
    design: str
    epsilon: float
    pi_y: float | None = None
    p2: float | None = None


class SolveParamResponse(StrictModel):
    schema_version: str = SCHEMA_VERSION
    design: str
    epsilon: float
    solutions: list[DesignOut]
    achieved_epsilons: list[float]


def solve_param(req: SolveParamRequest) -> SolveParamResponse:
    kind = parse_design_kind(req.design)
    specs = optimizer.solve_param_for_budget(kind, req.epsilon, pi_y=req.pi_y, p2=req.p2)
    return SolveParamResponse(
        design=kind.value,
        epsilon=req.epsilon,
        solutions=[DesignOut.from_spec(s) for s in specs],
        achieved_epsilons=[privacy_budget(s) for s in specs],
    )


# ---------------------------------------------------------------------------
# optimization
# ---------------------------------------------------------------------------


class OptimizeRequest(HypothesisParams):
    design: str
    epsilon: float
    strict: bool = False
    target_power: float = 0.8
    n: int | None = Field(default=None, ge=1, description="fixed sample size")
    n_max: int | None = Field(default=None, ge=1, description="joint-search bound")
    grid: float = 1e-2
    pi_y: float | None = None


class OptimizeResponse(StrictModel):
    schema_version: str = SCHEMA_VERSION
    design: str
    mode: str
    epsilon: float
    strict: bool
    target_power: float
    solution: SolutionOut
    message: str | None = None


def run_optimize(req: OptimizeRequest) -> OptimizeResponse:
    kind = parse_design_kind(req.design)
    hyp = req.to_hypothesis()
    cap = PrivacyCap(c=req.epsilon, strict=req.strict)
    if req.n is not None and req.n_max is not None:
        raise InvalidParameter("pass either n (fixed sample size) or n_max, not both")
    if req.n is not None:
        mode = "fixed_n"
        sol = optimizer.optimize_fixed_n(
            kind, hyp, req.n, cap, req.target_power, grid=req.grid, pi_y=req.pi_y
        )
    else:
        mode = "joint"
        sol = optimizer.joint_optimize(
            kind,
            hyp,
            cap,
            req.target_power,
            n_max=req.n_max if req.n_max is not None else 10**6,
            grid=req.grid,
            pi_y=req.pi_y,
        )
    return OptimizeResponse(
        design=kind.value,
        mode=mode,
        epsilon=req.epsilon,
        strict=req.strict,
        target_power=req.target_power,
        solution=SolutionOut.from_solution(sol),
        message=None if sol.feasible else INFEASIBLE_REMEDY,
    )


# ---------------------------------------------------------------------------
# feasible regions
# ---------------------------------------------------------------------------


class FeasibleRequest(HypothesisParams):
    design: str
    n: int = Field(ge=1)
    epsilon: float | None = None
    strict: bool = False
    target_power: float | None = None
    grid: float = 1e-2
    pi_y: float | None = None
    mode: str | None = None


class FeasibleResponse(StrictModel):
    schema_version: str = SCHEMA_VERSION
    design: str
    mode: str
    grid: float
    intervals: list[IntervalOut] | None = None
    display: str | None = None
    p1_values: list[float] | None = None
    p2_values: list[float] | None = None
    cells: list[list[bool]] | None = None


def _feasible_mode(req: FeasibleRequest) -> str:
    if req.mode is not None:
        return req.mode
    if req.epsilon is not None and req.target_power is not None:
        return "both"
    if req.epsilon is not None:
        return "epsilon"
    if req.target_power is not None:
        return "power"
    raise InvalidParameter("pass epsilon, target_power, or both")


def compute_feasible(req: FeasibleRequest) -> FeasibleResponse:
    kind = parse_design_kind(req.design)
    mode = _feasible_mode(req)
    if mode in ("epsilon", "both") and req.epsilon is None:
        raise InvalidParameter(f"mode {mode!r} needs epsilon")
    if mode in ("power", "both") and req.target_power is None:
        raise InvalidParameter(f"mode {mode!r} needs target_power")
    # a cap object is still needed in power mode; it is ignored there
    cap = PrivacyCap(c=req.epsilon if req.epsilon is not None else 1.0, strict=req.strict)
    target = req.target_power if req.target_power is not None else 0.8
    if kind in (designs.DesignKind.FORCED_RESPONSE, designs.DesignKind.KUK):
        if req.pi_y is not None:
            raise InvalidParameter(f"pi_y is not used by {kind.value}")
        region = optimizer.feasible_region_2d(
            kind, req.to_hypothesis(), req.n, cap, target, grid=req.grid, mode=mode
        )
        return FeasibleResponse(
            design=kind.value,
            mode=mode,
            grid=region.grid,
            p1_values=list(region.p1_values),
            p2_values=list(region.p2_values),
            cells=[list(row) for row in region.cells],
        )
    region = optimizer.feasible_region_1d(
        kind,
        req.to_hypothesis(),
        req.n,
        cap,
        target,
        grid=req.grid,
        pi_y=req.pi_y,
        mode=mode,
    )
    return FeasibleResponse(
        design=kind.value,
        mode=mode,
        grid=region.grid,
        intervals=[IntervalOut.from_interval(iv, region.grid) for iv in region.intervals],
        display=format_region(region),
    )


# ---------------------------------------------------------------------------
# simulation
# ---------------------------------------------------------------------------


class SimulateRequest(DesignParams):
    true_pi: float
    n: int = Field(ge=1)
    replications: int = Field(default=10_000, ge=1)
    seed: int | None = None
    method: str = "binomial"
    pi0: float | None = None
    pi1: float | None = None
    alpha: float = 0.05


class SimulateResponse(StrictModel):
    schema_version: str = SCHEMA_VERSION
    design: DesignOut
    true_pi: float
    n: int
    replications: int
    seed: int
    method: str
    mean_estimate: float
    sd_estimate: float
    bias: float
    mse: float
    empirical_power: float | None = None


def run_simulation(req: SimulateRequest) -> SimulateResponse:
    spec = req.to_spec()
    hyp = None
    if (req.pi0 is None) != (req.pi1 is None):
        raise InvalidParameter("pass both pi0 and pi1 for empirical power, or neither")
    if req.pi0 is not None:
        hyp = Hypothesis(pi0=req.pi0, pi1=req.pi1, alpha=req.alpha)
    seed = req.seed if req.seed is not None else default_seed()
    cfg = SimConfig(
        spec=spec,
        true_pi=req.true_pi,
        n=req.n,
        replications=req.replications,
        seed=seed,
        hyp=hyp,
        method=req.method,
    )
    report = simulate.run_simulation(cfg)
    return SimulateResponse(
        design=DesignOut.from_spec(spec),
        true_pi=req.true_pi,
        n=req.n,
        replications=report.replications,
        seed=report.seed,
        method=req.method,
        mean_estimate=report.mean_estimate,
        sd_estimate=report.sd_estimate,
        bias=report.bias,
        mse=report.mse,
        empirical_power=report.empirical_power,
    )


# ---------------------------------------------------------------------------
# analysis
# ---------------------------------------------------------------------------


class AnalyzeRequest(DesignParams):
    n: int = Field(ge=1)
    yes: int = Field(ge=0)
    pi0: float | None = None
    pi1: float | None = None
    alpha: float = 0.05
    label: str = ""


class AnalyzeResponse(StrictModel):
    schema_version: str = SCHEMA_VERSION
    design: DesignOut
    label: str
    n: int
    yes: int
    yes_rate: float
    estimate: float
    estimate_clamped: float
    std_error: float
    ci_95: tuple[float, float]
    epsilon_realized: float | None
    std_error_null: float | None = None
    test: TestOut | None = None
    warnings: list[str] = []


def run_analysis(req: AnalyzeRequest) -> AnalyzeResponse:
    spec = req.to_spec()
    ds = dataio.Dataset(design=spec, n=req.n, yes_count=req.yes, label=req.label)
    hyp = None
    if (req.pi0 is None) != (req.pi1 is None):
        raise InvalidParameter("pass both pi0 and pi1 for a test, or neither")
    if req.pi0 is not None:
        hyp = Hypothesis(pi0=req.pi0, pi1=req.pi1, alpha=req.alpha)
    report = dataio.analyze(ds, hyp)
    return AnalyzeResponse(
        design=DesignOut.from_spec(spec),
        label=ds.label,
        n=ds.n,
        yes=ds.yes_count,
        yes_rate=ds.yes_rate,
        estimate=report.estimate,
        estimate_clamped=report.estimate_clamped,
        std_error=report.std_error,
        ci_95=report.ci_95,
        epsilon_realized=report.epsilon_realized,
        std_error_null=report.std_error_null,
        test=TestOut(
            estimate=report.test.estimate, z=report.test.z, reject=report.test.reject
        )
        if report.test
        else None,
        warnings=list(report.warnings),
    )


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------


class CurvesRequest(HypothesisParams):
    design: str
    n: int = Field(ge=1)
    grid: float = 1e-2
    pi_y: float | None = None
    p2: float | None = None


class CurvePoint(StrictModel):
    p: float
    epsilon: float
    power: float


class CurvesResponse(StrictModel):
    schema_version: str = SCHEMA_VERSION
    design: str
    n: int
    grid: float
    points: list[CurvePoint]


def compute_curves(req: CurvesRequest) -> CurvesResponse:
    kind = parse_design_kind(req.design)
    triples = optimizer.curve_points(
        kind, req.to_hypothesis(), req.n, grid=req.grid, pi_y=req.pi_y, p2=req.p2
    )
    return CurvesResponse(
        design=kind.value,
        n=req.n,
        grid=req.grid,
        points=[CurvePoint(p=p, epsilon=e, power=w) for p, e, w in triples],
    )
