"""Design-parameter optimization under joint power and privacy constraints.

Four problems are solved on validated parameter grids:

* :func:`solve_param_for_budget` inverts ``epsilon(p) = c`` (closed form for
  the mirror-symmetric spinner design, bracketed root finding elsewhere).
* :func:`optimize_fixed_n` maximizes power over parameters satisfying the
  privacy cap at a fixed sample size; an empty or underpowered result is
  reported as infeasible with the best-found candidate attached.
* :func:`joint_optimize` finds the smallest sample size, with its parameter,
  reaching the target power under the cap: for each capped grid parameter a
  binary search locates the minimal n (power is increasing in n), and the
  global minimum wins.  Ties on n prefer the smaller budget, then the smaller
  parameter, so results are deterministic.
* :func:`feasible_region_1d` / :func:`feasible_region_2d` map out where the
  privacy constraint, the power constraint, or both hold; interval endpoints
  are reported both grid-snapped and refined by bisection.

Grid evaluation is vectorized and order-independent, so results do not depend
on evaluation order or threading.

A note on degenerate parameters: at ``p = 1/2`` (spinner) or ``p1 = p2``
(two decks) the report is independent of the truth, which makes the budget
genuinely 0 but the estimator undefined.  Privacy-only regions therefore
include such points, while power-dependent results exclude them (their power
is the test size alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import designs
from .designs import DesignKind, DesignSpec, privacy_budget
from .errors import InvalidParameter, NoSolution
from .inference import Hypothesis, power_from_unit_variances

__all__ = [
    "PrivacyCap",
    "Interval",
    "FeasibleRegion1D",
    "FeasibleRegion2D",
    "DesignSolution",
    "GRID_CHOICES",
    "solve_param_for_budget",
    "solve_power_boundary",
    "optimize_fixed_n",
    "joint_optimize",
    "feasible_region_1d",
    "feasible_region_2d",
    "slice_region",
    "curve_points",
]

#: Preset grid resolutions; any step with an integer reciprocal is accepted.
GRID_CHOICES = (1e-2, 1e-3, 1e-4)

_SCALAR_KINDS = (DesignKind.WARNER, DesignKind.UNRELATED_QUESTION, DesignKind.TWO_STEP)
_PAIR_KINDS = (DesignKind.FORCED_RESPONSE, DesignKind.KUK)

#: Bisection tolerance for refined interval endpoints.
_REFINE_TOL = 1e-6


@dataclass(frozen=True)
class PrivacyCap:
    """Maximum admissible privacy budget; ``strict`` selects < over <=."""

    c: float
    strict: bool = False

    def __post_init__(self):
        if not (isinstance(self.c, (int, float)) and math.isfinite(self.c) and self.c > 0):
            raise InvalidParameter(f"privacy cap must be a positive real, got {self.c!r}")

    def admits(self, epsilon):
        return epsilon < self.c if self.strict else epsilon <= self.c


@dataclass(frozen=True)
class Interval:
    """A feasible run of grid points with bisection-refined endpoints.

    ``lo``/``hi`` are grid-snapped.  ``lo_refined``/``hi_refined`` locate the
    true constraint boundary to 1e-6; they are 0.0 or 1.0 when the region
    extends to the open domain boundary.
    """

    lo: float
    hi: float
    lo_refined: float
    hi_refined: float

    @property
    def open_lower(self) -> bool:
        return self.lo_refined == 0.0

    @property
    def open_upper(self) -> bool:
        return self.hi_refined == 1.0


@dataclass(frozen=True)
class FeasibleRegion1D:
    kind: DesignKind
    mode: str
    grid: float
    intervals: tuple[Interval, ...]


@dataclass(frozen=True)
class FeasibleRegion2D:
    kind: DesignKind
    mode: str
    grid: float
    p1_values: tuple[float, ...]
    p2_values: tuple[float, ...]
    # cells[i][j] marks (p1_values[i], p2_values[j]) feasible
    cells: tuple[tuple[bool, ...], ...]


@dataclass(frozen=True)
class DesignSolution:
    """Outcome of a design optimization.

    When infeasible, ``params_star`` (if present) is the best candidate found
    and ``achieved_power`` its power at the sample size that was examined.
    """

    feasible: bool
    n_star: int | None
    params_star: DesignSpec | None
    achieved_power: float | None
    achieved_epsilon: float | None


# ---------------------------------------------------------------------------
# grid kernels
# ---------------------------------------------------------------------------


def _check_grid(grid: float) -> float:
    ok = (
        isinstance(grid, (int, float))
        and 1e-4 - 1e-12 <= grid <= 0.25
        and abs(1.0 / grid - round(1.0 / grid)) < 1e-6
    )
    if not ok:
        raise InvalidParameter(
            f"grid must be a step in [1e-4, 0.25] dividing the unit interval "
            f"(e.g. {GRID_CHOICES}), got {grid!r}"
        )
    return float(grid)


def _scalar_grid(grid: float) -> np.ndarray:
    m = round(1.0 / grid)
    return np.round(np.arange(1, m) * grid, 10)


def _require_pi_y(kind: DesignKind, pi_y: float | None) -> float | None:
    if kind is DesignKind.UNRELATED_QUESTION:
        if pi_y is None:
            raise InvalidParameter("pi_y is required for uqrr")
        if not 0.0 < pi_y < 1.0:
            raise InvalidParameter(f"pi_y must lie strictly between 0 and 1, got {pi_y!r}")
        return float(pi_y)
    if pi_y is not None:
        raise InvalidParameter(f"pi_y is not used by {kind.value}")
    return None


def _affine_arrays(kind: DesignKind, x, y=None, pi_y=None):
    """Vectorized (a, b) coefficients of lambda = a*pi + b."""
    x = np.asarray(x, dtype=float)
    if kind is DesignKind.WARNER:
        return 2.0 * x - 1.0, 1.0 - x
    if kind is DesignKind.UNRELATED_QUESTION:
        return x, (1.0 - x) * pi_y
    if kind is DesignKind.TWO_STEP:
        return x, x * (1.0 - x)
    y = np.asarray(y, dtype=float)
    if kind is DesignKind.FORCED_RESPONSE:
        return 1.0 - x - y, y
    if kind is DesignKind.KUK:
        return x - y, y
    raise InvalidParameter(f"unknown design kind {kind!r}")


def _epsilon_arrays(a, b):
    """Vectorized budget; exactly 0 where the report ignores the truth (a == 0)."""
    q1 = a + b
    q0 = b
    with np.errstate(divide="ignore", invalid="ignore"):
        e = np.maximum(
            np.abs(np.log(q1 / q0)), np.abs(np.log((1.0 - q1) / (1.0 - q0)))
        )
    return np.where(a == 0.0, 0.0, e)


def _power_arrays(a, b, hyp: Hypothesis, n):
    """Vectorized test power; the size alpha where the estimator degenerates."""
    with np.errstate(divide="ignore", invalid="ignore"):
        l0 = a * hyp.pi0 + b
        l1 = a * hyp.pi1 + b
        u0 = l0 * (1.0 - l0) / (a * a)
        u1 = l1 * (1.0 - l1) / (a * a)
        pw = power_from_unit_variances(u0, u1, hyp.pi0, hyp.pi1, hyp.alpha, n)
    return np.where(a == 0.0, hyp.alpha, pw)


class _Grid:
    """Validated parameter grid for one design kind with cached kernels."""

    def __init__(self, kind, grid, pi_y=None, include_degenerate=False):
        grid = _check_grid(grid)
        self.kind = kind
        self.grid = grid
        self.pi_y = _require_pi_y(kind, pi_y)
        pts = _scalar_grid(grid)
        if kind in _SCALAR_KINDS:
            self.x = pts
            self.y = None
        else:
            x, y = np.meshgrid(pts, pts, indexing="ij")
            self.x = x.ravel()
            self.y = y.ravel()
        self.a, self.b = _affine_arrays(kind, self.x, self.y, self.pi_y)
        valid = np.ones(self.x.shape, dtype=bool)
        if kind is DesignKind.FORCED_RESPONSE:
            valid &= self.x + self.y < 1.0 - 1e-12
        if not include_degenerate:
            valid &= self.a != 0.0
        self.valid = valid

    def epsilon(self):
        return _epsilon_arrays(self.a, self.b)

    def power(self, hyp, n):
        return _power_arrays(self.a, self.b, hyp, n)

    def spec_at(self, idx: int) -> DesignSpec:
        if self.kind in _SCALAR_KINDS:
            if self.kind is DesignKind.UNRELATED_QUESTION:
                return designs.unrelated_question(float(self.x[idx]), self.pi_y)
            if self.kind is DesignKind.WARNER:
                return designs.warner(float(self.x[idx]))
            return designs.two_step(float(self.x[idx]))
        if self.kind is DesignKind.FORCED_RESPONSE:
            return designs.forced_response(float(self.x[idx]), float(self.y[idx]))
        return designs.kuk(float(self.x[idx]), float(self.y[idx]))

    def params_key(self, idx: int) -> tuple:
        """Sort key implementing the smallest-parameter tie-break."""
        if self.kind in _SCALAR_KINDS:
            return (float(self.x[idx]),)
        return (float(self.x[idx]), float(self.y[idx]))


def _pick_best(grid: _Grid, candidate_idx, eps, primary) -> int:
    """Index minimizing (primary, epsilon, parameters) lexicographically."""
    best = None
    best_key = None
    for idx in candidate_idx:
        key = (primary[idx], float(eps[idx])) + grid.params_key(idx)
        if best_key is None or key < best_key:
            best, best_key = idx, key
    return best


# ---------------------------------------------------------------------------
# budget inversion
# ---------------------------------------------------------------------------


def _scalar_epsilon(kind: DesignKind, p: float, pi_y=None, p2=None) -> float:
    if kind in _SCALAR_KINDS:
        a, b = _affine_arrays(kind, p, pi_y=pi_y)
    else:
        a, b = _affine_arrays(kind, p, p2, pi_y=None)
    return float(_epsilon_arrays(np.asarray(a), np.asarray(b)))


def solve_param_for_budget(
    kind: DesignKind,
    c: float,
    pi_y: float | None = None,
    p2: float | None = None,
) -> tuple[DesignSpec, ...]:
    """Design parameters whose privacy budget equals ``c`` (to within 1e-9).

    Mirror-symmetric designs (spinner, two decks) have two solutions, returned
    in ascending parameter order; the others have one.  Two-parameter designs
    require the second probability fixed via ``p2``.  Raises
    :class:`NoSolution` when no parameter attains the budget, e.g. the
    two-coin design below its ln 2 infimum.
    """
    if not (isinstance(c, (int, float)) and math.isfinite(c) and c > 0):
        raise InvalidParameter(f"privacy budget must be a positive real, got {c!r}")

    if kind is DesignKind.WARNER:
        if pi_y is not None or p2 is not None:
            raise InvalidParameter("warner takes no auxiliary parameter")
        hi = 1.0 / (1.0 + math.exp(-c))
        if hi >= 1.0 - 1e-12:
            raise NoSolution(f"budget {c} is too large to represent for warner")
        return (designs.warner(1.0 - hi), designs.warner(hi))

    lo_p, hi_p = 1e-12, 1.0 - 1e-12

    if kind is DesignKind.TWO_STEP:
        if pi_y is not None or p2 is not None:
            raise InvalidParameter("twostep takes no auxiliary parameter")
        if c <= math.log(2.0):
            raise NoSolution(
                f"twostep budget approaches ln 2 ~ 0.6931 as p -> 0; c={c} is unattainable"
            )
        root = _bracketed_root(lambda p: _scalar_epsilon(kind, p) - c, lo_p, hi_p)
        return (designs.two_step(root),)

    if kind is DesignKind.UNRELATED_QUESTION:
        pi_y = _require_pi_y(kind, pi_y)
        if p2 is not None:
            raise InvalidParameter("uqrr takes pi_y, not p2")
        root = _bracketed_root(lambda p: _scalar_epsilon(kind, p, pi_y=pi_y) - c, lo_p, hi_p)
        return (designs.unrelated_question(root, pi_y),)

    if kind in _PAIR_KINDS:
        if p2 is None:
            raise InvalidParameter(f"{kind.value} requires the second probability p2")
        if not 0.0 < p2 < 1.0:
            raise InvalidParameter(f"p2 must lie strictly between 0 and 1, got {p2!r}")
        if pi_y is not None:
            raise InvalidParameter(f"pi_y is not used by {kind.value}")
        f = lambda p1: _scalar_epsilon(kind, p1, p2=p2) - c
        if kind is DesignKind.FORCED_RESPONSE:
            # budget falls from +inf to 0 as p1 sweeps (0, 1 - p2)
            root = _bracketed_root(f, 1e-15, 1.0 - p2 - 1e-15)
            return (designs.forced_response(root, p2),)
        # two decks: budget is 0 at p1 = p2 and grows toward both ends
        lower = _bracketed_root(f, 1e-15, p2 - 1e-15)
        upper = _bracketed_root(f, p2 + 1e-15, 1.0 - 1e-15)
        return (designs.kuk(lower, p2), designs.kuk(upper, p2))

    raise InvalidParameter(f"unknown design kind {kind!r}")


def _bracketed_root(f, lo: float, hi: float) -> float:
    """Root of f on [lo, hi] located by sign change; scans when needed.

    Never assumes monotonicity of f over the whole domain: if the endpoint
    signs agree, a scan looks for an interior sign change first.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        span = np.linspace(lo, hi, 257)
        vals = np.array([f(p) for p in span])
        sign_change = np.nonzero(np.diff(np.sign(vals)) != 0)[0]
        if len(sign_change) == 0:
            raise NoSolution("no parameter attains the requested privacy budget")
        lo, hi = float(span[sign_change[0]]), float(span[sign_change[0] + 1])
    return float(brentq(f, lo, hi, xtol=1e-15, rtol=8.9e-16))


def solve_power_boundary(
    kind: DesignKind,
    hyp: Hypothesis,
    n: int,
    target_power: float,
    bracket: tuple[float, float],
    pi_y: float | None = None,
    p2: float | None = None,
) -> float:
    """Parameter where the power curve crosses the target, by bisection.

    ``bracket`` must straddle a crossing of power(p) = target at the fixed
    sample size.
    """
    pi_y = _require_pi_y(kind, pi_y)
    if kind in _PAIR_KINDS and p2 is None:
        raise InvalidParameter(f"{kind.value} requires a fixed p2")
    if kind in _SCALAR_KINDS and p2 is not None:
        raise InvalidParameter(f"p2 is not used by {kind.value}")

    def gap(p: float) -> float:
        a, b = _affine_arrays(kind, p, p2, pi_y)
        return float(_power_arrays(np.asarray(a), np.asarray(b), hyp, n)) - target_power

    return _bracketed_root(gap, bracket[0], bracket[1])


# ---------------------------------------------------------------------------
# fixed-n and joint optimization
# ---------------------------------------------------------------------------


def optimize_fixed_n(
    kind: DesignKind,
    hyp: Hypothesis,
    n0: int,
    cap: PrivacyCap,
    target_power: float,
    grid: float = 1e-2,
    pi_y: float | None = None,
) -> DesignSolution:
    """Maximize power at fixed sample size subject to the privacy cap.

    Infeasibility (no capped parameter, or best power below target) is a
    normal result: ``feasible=False`` with the best candidate attached.
    """
    n0 = int(n0)
    if n0 < 1:
        raise InvalidParameter(f"n0 must be a positive integer, got {n0}")
    g = _Grid(kind, grid, pi_y)
    eps = g.epsilon()
    admitted = g.valid & cap.admits(eps)
    if not admitted.any():
        return DesignSolution(False, None, None, None, None)
    pw = g.power(hyp, n0)
    pw_masked = np.where(admitted, pw, -np.inf)
    top = pw_masked.max()
    ties = np.nonzero(pw_masked == top)[0]
    best = _pick_best(g, ties, eps, primary={i: 0 for i in ties})
    solution_power = float(pw[best])
    return DesignSolution(
        feasible=solution_power >= target_power,
        n_star=n0,
        params_star=g.spec_at(best),
        achieved_power=solution_power,
        achieved_epsilon=float(eps[best]),
    )


def joint_optimize(
    kind: DesignKind,
    hyp: Hypothesis,
    cap: PrivacyCap,
    target_power: float,
    n_max: int = 10**6,
    grid: float = 1e-2,
    pi_y: float | None = None,
) -> DesignSolution:
    """Smallest sample size, with its parameter, meeting power under the cap.

    For every capped grid parameter, binary search (l, r, midpoint, shrink)
    finds the minimal n in [1, n_max] whose power reaches the target; the
    searches run in lockstep over the grid arrays.  The global minimum wins;
    ties prefer smaller budget, then smaller parameters.
    """
    n_max = int(n_max)
    if n_max < 1:
        raise InvalidParameter(f"n_max must be a positive integer, got {n_max}")
    g = _Grid(kind, grid, pi_y)
    eps = g.epsilon()
    admitted = g.valid & cap.admits(eps)
    if not admitted.any():
        return DesignSolution(False, None, None, None, None)

    idx = np.nonzero(admitted)[0]
    a, b = g.a[idx], g.b[idx]
    lo = np.ones(len(idx), dtype=np.int64)
    hi = np.full(len(idx), n_max, dtype=np.int64)
    found = np.full(len(idx), -1, dtype=np.int64)
    active = lo <= hi
    while active.any():
        mid = (lo + hi) // 2
        pw = _power_arrays(a[active], b[active], hyp, mid[active])
        reached = pw >= target_power
        act_idx = np.nonzero(active)[0]
        ok = act_idx[reached]
        ko = act_idx[~reached]
        found[ok] = mid[ok]
        hi[ok] = mid[ok] - 1
        lo[ko] = mid[ko] + 1
        active = lo <= hi

    feasible_mask = found > 0
    if not feasible_mask.any():
        pw_at_max = _power_arrays(a, b, hyp, n_max)
        order = {int(idx[j]): -pw_at_max[j] for j in range(len(idx))}
        best = _pick_best(g, [int(i) for i in idx], eps, primary=order)
        j = int(np.nonzero(idx == best)[0][0])
        return DesignSolution(
            feasible=False,
            n_star=None,
            params_star=g.spec_at(best),
            achieved_power=float(pw_at_max[j]),
            achieved_epsilon=float(eps[best]),
        )

    n_star = int(found[feasible_mask].min())
    tie_local = np.nonzero(found == n_star)[0]
    tie_global = [int(idx[j]) for j in tie_local]
    best = _pick_best(g, tie_global, eps, primary={i: 0 for i in tie_global})
    j = int(np.nonzero(idx == best)[0][0])
    achieved = float(_power_arrays(a[j : j + 1], b[j : j + 1], hyp, n_star)[0])
    return DesignSolution(
        feasible=True,
        n_star=n_star,
        params_star=g.spec_at(best),
        achieved_power=achieved,
        achieved_epsilon=float(eps[best]),
    )


# ---------------------------------------------------------------------------
# feasible regions
# ---------------------------------------------------------------------------

_MODES = ("epsilon", "power", "both")


def _check_mode(mode: str) -> str:
    if mode not in _MODES:
        raise InvalidParameter(f"mode must be one of {_MODES}, got {mode!r}")
    return mode


def _region_masks(g: _Grid, hyp, n, cap, target_power, mode):
    eps_ok = cap.admits(g.epsilon())
    if g.kind is DesignKind.FORCED_RESPONSE:
        eps_ok &= g.x + g.y < 1.0 - 1e-12
    if mode == "epsilon":
        return eps_ok
    # degenerate points (a == 0) can never satisfy a power floor
    power_ok = g.valid & (g.a != 0.0) & (g.power(hyp, n) > target_power)
    if mode == "power":
        return power_ok
    return eps_ok & power_ok


def feasible_region_1d(
    kind: DesignKind,
    hyp: Hypothesis,
    n: int,
    cap: PrivacyCap,
    target_power: float,
    grid: float = 1e-2,
    pi_y: float | None = None,
    mode: str = "both",
) -> FeasibleRegion1D:
    """Feasible parameter intervals for a scalar-parameter design.

    ``mode`` selects the privacy constraint, the power constraint, or their
    intersection.  An empty region is a valid result.
    """
    if kind not in _SCALAR_KINDS:
        raise InvalidParameter(
            f"{kind.value} has two parameters; use feasible_region_2d"
        )
    mode = _check_mode(mode)
    g = _Grid(kind, grid, pi_y, include_degenerate=True)
    mask = _region_masks(g, hyp, n, cap, target_power, mode)

    def sat(p: float) -> bool:
        if not 0.0 < p < 1.0:
            return False
        a, b = _affine_arrays(kind, p, pi_y=g.pi_y)
        a_arr, b_arr = np.asarray(a), np.asarray(b)
        ok = True
        if mode in ("epsilon", "both"):
            ok &= bool(cap.admits(float(_epsilon_arrays(a_arr, b_arr))))
        if mode in ("power", "both"):
            ok &= a != 0.0 and float(_power_arrays(a_arr, b_arr, hyp, n)) > target_power
        return bool(ok)

    intervals = _merge_and_refine(g.x, mask, g.grid, sat)
    return FeasibleRegion1D(kind=kind, mode=mode, grid=g.grid, intervals=intervals)


def _merge_and_refine(points, mask, step, sat) -> tuple[Interval, ...]:
    runs = []
    start = None
    for i, ok in enumerate(mask):
        if ok and start is None:
            start = i
        elif not ok and start is not None:
            runs.append((start, i - 1))
            start = None
    if start is not None:
        runs.append((start, len(mask) - 1))

    out = []
    for s, e in runs:
        lo, hi = float(points[s]), float(points[e])
        out.append(
            Interval(
                lo=lo,
                hi=hi,
                lo_refined=_refine_edge(sat, lo, -step),
                hi_refined=_refine_edge(sat, hi, step),
            )
        )
    return tuple(out)


def _refine_edge(sat, inside: float, signed_step: float) -> float:
    """Bisect the constraint boundary within one grid step of ``inside``.

    Returns 0.0 / 1.0 when the region runs into the open domain boundary.
    """
    outside = inside + signed_step
    probe_eps = abs(signed_step) * 1e-6
    if outside <= 0.0:
        outside = probe_eps
        if sat(outside):
            return 0.0
    elif outside >= 1.0:
        outside = 1.0 - probe_eps
        if sat(outside):
            return 1.0
    lo, hi = (outside, inside) if outside < inside else (inside, outside)
    # invariant: sat differs between the bracket ends
    sat_lo = sat(lo)
    while hi - lo > _REFINE_TOL:
        mid = (lo + hi) / 2.0
        if sat(mid) == sat_lo:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def feasible_region_2d(
    kind: DesignKind,
    hyp: Hypothesis,
    n: int,
    cap: PrivacyCap,
    target_power: float,
    grid: float = 1e-2,
    mode: str = "both",
) -> FeasibleRegion2D:
    """Boolean feasibility grid over (p1, p2) for the two-parameter designs."""
    if kind not in _PAIR_KINDS:
        raise InvalidParameter(
            f"{kind.value} has a single parameter; use feasible_region_1d"
        )
    mode = _check_mode(mode)
    g = _Grid(kind, grid, include_degenerate=True)
    mask = _region_masks(g, hyp, n, cap, target_power, mode)
    pts = _scalar_grid(g.grid)
    m = len(pts)
    cells = mask.reshape(m, m)
    return FeasibleRegion2D(
        kind=kind,
        mode=mode,
        grid=g.grid,
        p1_values=tuple(float(v) for v in pts),
        p2_values=tuple(float(v) for v in pts),
        cells=tuple(tuple(bool(c) for c in row) for row in cells),
    )


def slice_region(region: FeasibleRegion2D, p2: float) -> tuple[tuple[float, float], ...]:
    """Grid-snapped p1 intervals of a 2-D region at a fixed p2 column."""
    diffs = [abs(v - p2) for v in region.p2_values]
    j = diffs.index(min(diffs))
    if min(diffs) > region.grid / 2 + 1e-12:
        raise InvalidParameter(f"p2={p2!r} is not on the region grid")
    runs = []
    start = None
    for i, v in enumerate(region.p1_values):
        ok = region.cells[i][j]
        if ok and start is None:
            start = v
        elif not ok and start is not None:
            runs.append((start, region.p1_values[i - 1]))
            start = None
    if start is not None:
        runs.append((start, region.p1_values[-1]))
    return tuple(runs)


def curve_points(
    kind: DesignKind,
    hyp: Hypothesis,
    n: int,
    grid: float = 1e-2,
    pi_y: float | None = None,
    p2: float | None = None,
):
    """(parameter, budget, power) triples over the grid, for plotting.

    Two-parameter designs are sliced at a fixed ``p2``; the swept parameter is
    then p1.  Degenerate points are included (budget 0, power = alpha) so the
    curves are continuous.
    """
    grid = _check_grid(grid)
    pi_y = _require_pi_y(kind, pi_y)
    pts = _scalar_grid(grid)
    if kind in _PAIR_KINDS:
        if p2 is None:
            raise InvalidParameter(f"{kind.value} curves require a fixed p2")
        if not 0.0 < p2 < 1.0:
            raise InvalidParameter(f"p2 must lie strictly between 0 and 1, got {p2!r}")
        if kind is DesignKind.FORCED_RESPONSE:
            pts = pts[pts + p2 < 1.0 - 1e-12]
        a, b = _affine_arrays(kind, pts, np.full(len(pts), p2))
    else:
        if p2 is not None:
            raise InvalidParameter(f"p2 is not used by {kind.value}")
        a, b = _affine_arrays(kind, pts, pi_y=pi_y)
    eps = _epsilon_arrays(a, b)
    pw = _power_arrays(a, b, hyp, int(n))
    return [
        (float(p), float(e), float(w)) for p, e, w in zip(pts, eps, pw)
    ]
