"""Command-line front end.

A thin client over the same handlers the HTTP service exposes: flags are
parsed into the service request models, and results are printed as a table
(default), JSON identical to the API payloads, or CSV for tabular data.

Exit codes: 0 success, 2 infeasible design (the report is still printed),
1 invalid input or usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import dataio, service
from .errors import NoSolution, RRDesignError


def _add_design_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--design", required=True, help="warner|uqrr|frd|kuk|twostep|direct (aliases accepted)")
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--p1", type=float, default=None)
    p.add_argument("--p2", type=float, default=None)
    p.add_argument("--pi-y", dest="pi_y", type=float, default=None)


def _add_hypothesis_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pi0", type=float, required=True, help="null proportion")
    p.add_argument("--pi1", type=float, required=True, help="alternative proportion")
    p.add_argument("--alpha", type=float, default=0.05)


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    p.add_argument("--precision", type=int, default=6, help="significant digits in table/csv output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrdp",
        description="Design and analyze randomized-response surveys under local differential privacy.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("budget", help="privacy budget of a design")
    _add_design_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("power", help="power of the two-sided test at a sample size")
    _add_design_flags(p)
    _add_hypothesis_flags(p)
    p.add_argument("--n", type=int, required=True)
    _add_output_flags(p)

    p = sub.add_parser("samplesize", help="closed-form and exact sample sizes for a target power")
    _add_design_flags(p)
    _add_hypothesis_flags(p)
    p.add_argument("--target-power", dest="target_power", type=float, default=0.8)
    _add_output_flags(p)

    p = sub.add_parser("solve-p", help="design parameter(s) attaining a privacy budget")
    p.add_argument("--design", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--pi-y", dest="pi_y", type=float, default=None)
    p.add_argument("--p2", type=float, default=None)
    _add_output_flags(p)

    p = sub.add_parser("optimize", help="optimal design under power and privacy constraints")
    p.add_argument("--design", required=True)
    _add_hypothesis_flags(p)
    p.add_argument("--epsilon", type=float, required=True, help="privacy cap")
    p.add_argument("--strict", action="store_true", help="use epsilon < cap instead of <=")
    p.add_argument("--target-power", dest="target_power", type=float, default=0.8)
    p.add_argument("--n", type=int, default=None, help="fixed sample size (maximize power)")
    p.add_argument("--n-max", dest="n_max", type=int, default=None, help="search bound for minimal n")
    p.add_argument("--grid", type=float, default=1e-2)
    p.add_argument("--pi-y", dest="pi_y", type=float, default=None)
    _add_output_flags(p)

    p = sub.add_parser("feasible", help="parameter regions satisfying privacy and/or power")
    p.add_argument("--design", required=True)
    _add_hypothesis_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=None, help="privacy cap (enables the privacy constraint)")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--power", dest="target_power", type=float, default=None,
                   help="power floor (enables the power constraint)")
    p.add_argument("--grid", type=float, default=1e-2)
    p.add_argument("--pi-y", dest="pi_y", type=float, default=None)
    p.add_argument("--mode", choices=("epsilon", "power", "both"), default=None)
    _add_output_flags(p)

    p = sub.add_parser("simulate", help="seeded Monte-Carlo study of a design")
    _add_design_flags(p)
    p.add_argument("--true-pi", dest="true_pi", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--replications", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=None, help="defaults to RRDP_SEED or 0")
    p.add_argument("--method", choices=("binomial", "respondent"), default="binomial")
    p.add_argument("--pi0", type=float, default=None, help="with --pi1: estimate empirical power")
    p.add_argument("--pi1", type=float, default=None)
    p.add_argument("--alpha", type=float, default=0.05)
    _add_output_flags(p)

    p = sub.add_parser("analyze", help="estimate, CI, realized budget, and test from collected data")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--counts", help="counts CSV file (design,p,p1,p2,pi_y,n,yes)")
    src.add_argument("--records", help="records CSV file (response; one 0/1 per row)")
    src.add_argument("--fixture", help="bundled fixture name, e.g. amt_tax_dq_counts.csv")
    p.add_argument("--design", default=None, help="required with --records or inline counts")
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--p1", type=float, default=None)
    p.add_argument("--p2", type=float, default=None)
    p.add_argument("--pi-y", dest="pi_y", type=float, default=None)
    p.add_argument("--n", type=int, default=None, help="inline sample size (with --yes)")
    p.add_argument("--yes", type=int, default=None, help="inline yes-count")
    p.add_argument("--pi0", type=float, default=None)
    p.add_argument("--pi1", type=float, default=None)
    p.add_argument("--alpha", type=float, default=0.05)
    _add_output_flags(p)

    p = sub.add_parser("curves", help="(p, epsilon, power) plot data over a parameter grid")
    p.add_argument("--design", required=True)
    _add_hypothesis_flags(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=float, default=1e-2)
    p.add_argument("--pi-y", dest="pi_y", type=float, default=None)
    p.add_argument("--p2", type=float, default=None, help="fixed second probability for frd/kuk slices")
    _add_output_flags(p)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


# ---------------------------------------------------------------------------
# output formatting
# ---------------------------------------------------------------------------


def _fmt(value, precision: int) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool) or not isinstance(value, float):
        return str(value)
    return f"{value:.{precision}g}"


def _flatten(obj, prefix=""):
    rows = []
    if isinstance(obj, dict):
        for key, value in obj.items():
            rows.extend(_flatten(value, f"{prefix}{key}."))
    elif isinstance(obj, list):
        for i, value in enumerate(obj):
            rows.extend(_flatten(value, f"{prefix}{i}."))
    else:
        rows.append((prefix[:-1], obj))
    return rows


def _print_table(payload: dict, precision: int) -> None:
    rows = _flatten(payload)
    width = max((len(k) for k, _ in rows), default=0)
    for key, value in rows:
        print(f"{key:<{width}}  {_fmt(value, precision)}")


def _csv_rows(command: str, payload: dict):
    if command == "curves":
        return ("p", "epsilon", "power"), [
            (pt["p"], pt["epsilon"], pt["power"]) for pt in payload["points"]
        ]
    if command == "feasible":
        if payload.get("intervals") is not None:
            return ("lo", "hi", "lo_refined", "hi_refined"), [
                (iv["lo"], iv["hi"], iv["lo_refined"], iv["hi_refined"])
                for iv in payload["intervals"]
            ]
        rows = []
        for i, p1 in enumerate(payload["p1_values"]):
            for j, p2 in enumerate(payload["p2_values"]):
                rows.append((p1, p2, int(payload["cells"][i][j])))
        return ("p1", "p2", "feasible"), rows
    flat = _flatten(payload)
    return tuple(k for k, _ in flat), [tuple(v for _, v in flat)]


def _emit(command: str, model, fmt: str, precision: int) -> None:
    payload = model.model_dump(mode="json")
    if fmt == "json":
        print(json.dumps(payload, indent=2))
        return
    if fmt == "csv":
        header, rows = _csv_rows(command, payload)
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v, precision) if isinstance(v, float) else v for v in row])
        print(out.getvalue(), end="")
        return
    if command == "curves":
        print(f"{'p':>8} {'epsilon':>12} {'power':>12}")
        for pt in payload["points"]:
            print(
                f"{_fmt(pt['p'], precision):>8} {_fmt(pt['epsilon'], precision):>12} "
                f"{_fmt(pt['power'], precision):>12}"
            )
        return
    if command == "feasible" and payload.get("display") is not None:
        print(f"region  {payload['display']}")
        for iv in payload["intervals"]:
            print(
                f"  {iv['display']}  refined "
                f"[{_fmt(iv['lo_refined'], precision)}, {_fmt(iv['hi_refined'], precision)}]"
            )
        return
    if command == "feasible":
        total = sum(sum(row) for row in payload["cells"])
        size = len(payload["p1_values"]) * len(payload["p2_values"])
        print(f"feasible cells  {total} of {size} (use --format csv or json for the grid)")
        return
    _print_table(payload, precision)


# ---------------------------------------------------------------------------
# command implementations
# ---------------------------------------------------------------------------


def _design_kwargs(args) -> dict:
    return {"design": args.design, "p": args.p, "p1": args.p1, "p2": args.p2, "pi_y": args.pi_y}


def _run_analyze(args) -> service.AnalyzeResponse:
    if args.fixture:
        ds = dataio.load_fixture(args.fixture)
    elif args.counts:
        with open(args.counts, "rb") as fh:
            ds = dataio.parse_dataset(fh, format="counts", label=args.counts)
    elif args.records:
        if args.design is None:
            raise RRDesignError("--records needs --design (records files carry no design)")
        spec = service.DesignParams(**_design_kwargs(args)).to_spec()
        with open(args.records, "rb") as fh:
            ds = dataio.parse_dataset(fh, format="records", design=spec, label=args.records)
    else:
        if args.design is None or args.n is None or args.yes is None:
            raise RRDesignError("pass --counts/--records/--fixture, or --design with --n and --yes")
        spec = service.DesignParams(**_design_kwargs(args)).to_spec()
        ds = dataio.Dataset(design=spec, n=args.n, yes_count=args.yes)
    req = service.AnalyzeRequest(
        design=ds.design.name,
        p=ds.design.p,
        p1=None if ds.design.direct else ds.design.p1,
        p2=None if ds.design.direct else ds.design.p2,
        pi_y=ds.design.pi_y,
        n=ds.n,
        yes=ds.yes_count,
        pi0=args.pi0,
        pi1=args.pi1,
        alpha=args.alpha,
        label=ds.label,
    )
    return service.run_analysis(req)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors; 2 is reserved for
        # infeasible-design reports here, so usage problems map to 1
        return 0 if exc.code in (0, None) else 1
    try:
        if args.command == "serve":
            from .api import serve

            serve(host=args.host, port=args.port)
            return 0
        if args.command == "budget":
            resp = service.compute_budget(service.BudgetRequest(**_design_kwargs(args)))
        elif args.command == "power":
            resp = service.compute_power(
                service.PowerRequest(
                    **_design_kwargs(args), pi0=args.pi0, pi1=args.pi1, alpha=args.alpha, n=args.n
                )
            )
        elif args.command == "samplesize":
            resp = service.compute_sample_size(
                service.SampleSizeRequest(
                    **_design_kwargs(args),
                    pi0=args.pi0,
                    pi1=args.pi1,
                    alpha=args.alpha,
                    target_power=args.target_power,
                )
            )
        elif args.command == "solve-p":
            resp = service.solve_param(
                service.SolveParamRequest(
                    design=args.design, epsilon=args.epsilon, pi_y=args.pi_y, p2=args.p2
                )
            )
        elif args.command == "optimize":
            resp = service.run_optimize(
                service.OptimizeRequest(
                    design=args.design,
                    pi0=args.pi0,
                    pi1=args.pi1,
                    alpha=args.alpha,
                    epsilon=args.epsilon,
                    strict=args.strict,
                    target_power=args.target_power,
                    n=args.n,
                    n_max=args.n_max,
                    grid=args.grid,
                    pi_y=args.pi_y,
                )
            )
        elif args.command == "feasible":
            resp = service.compute_feasible(
                service.FeasibleRequest(
                    design=args.design,
                    pi0=args.pi0,
                    pi1=args.pi1,
                    alpha=args.alpha,
                    n=args.n,
                    epsilon=args.epsilon,
                    strict=args.strict,
                    target_power=args.target_power,
                    grid=args.grid,
                    pi_y=args.pi_y,
                    mode=args.mode,
                )
            )
        elif args.command == "simulate":
            resp = service.run_simulation(
                service.SimulateRequest(
                    **_design_kwargs(args),
                    true_pi=args.true_pi,
                    n=args.n,
                    replications=args.replications,
                    seed=args.seed,
                    method=args.method,
                    pi0=args.pi0,
                    pi1=args.pi1,
                    alpha=args.alpha,
                )
            )
        elif args.command == "analyze":
            resp = _run_analyze(args)
        elif args.command == "curves":
            resp = service.compute_curves(
                service.CurvesRequest(
                    design=args.design,
                    pi0=args.pi0,
                    pi1=args.pi1,
                    alpha=args.alpha,
                    n=args.n,
                    grid=args.grid,
                    pi_y=args.pi_y,
                    p2=args.p2,
                )
            )
        else:  # pragma: no cover
            raise RRDesignError(f"unknown command {args.command!r}")
    except NoSolution as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except (RRDesignError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    _emit(args.command, resp, args.format, args.precision)
    if args.command == "optimize" and not resp.solution.feasible:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
