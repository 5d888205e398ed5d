"""Randomized-response survey design under local differential privacy.

Power, privacy budgets, sample sizes, optimal design parameters, feasibility
regions, Monte-Carlo simulation, and analysis of collected data for five
classical randomized-response mechanisms, available as a library, a CLI
(``rrdp``), and an HTTP service.
"""

from .dataio import AnalysisReport, Dataset, analyze, emit_dataset, load_fixture, parse_dataset
from .designs import (
    DesignKind,
    DesignSpec,
    direct_question,
    estimator_variance,
    forced_response,
    kuk,
    point_estimate,
    privacy_budget,
    spec_from_params,
    two_step,
    unrelated_question,
    validate,
    warner,
    yes_probability,
)
from .errors import (
    InconsistentHeader,
    InfiniteBudget,
    InvalidParameter,
    NoSolution,
    ParseError,
    RRDesignError,
)
from .inference import (
    Hypothesis,
    PowerResult,
    WaldTestResult,
    binomial_baseline_n,
    exact_sample_size,
    normal_cdf,
    normal_quantile,
    power,
    required_sample_size,
    wald_test,
)
from .optimizer import (
    DesignSolution,
    FeasibleRegion1D,
    FeasibleRegion2D,
    Interval,
    PrivacyCap,
    feasible_region_1d,
    feasible_region_2d,
    joint_optimize,
    optimize_fixed_n,
    slice_region,
    solve_param_for_budget,
    solve_power_boundary,
)
from .simulate import SimConfig, SimReport, run_simulation, simulate_responses

__version__ = "0.1.0"
