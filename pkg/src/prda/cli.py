"""Command-line interface.

Subcommands mirror the analysis entry points: `prospective` (find n for a
target power), `retrospective` (risk profile of a given design), `design-est`
(interval or point effect priors), `sensitivity` (a curve over sample
sizes), `interpret` (effect-size summaries), and `serve` (the HTTP API).

Every simulating command accepts --seed; runs without one draw a seed and
print it so the run can be reproduced afterwards. Exit codes: 0 success,
2 invalid parameters or usage, 3 target power unreachable.
"""

from __future__ import annotations

import argparse
import json
import os
import secrets
import sys
from dataclasses import replace

from . import oracle, payloads
from .effects import interpret_from_summaries
from .engine import retrospective, sensitivity_curve
from .priors import build_prior, design_est, per_draw_csv
from .report import sensitivity_csv, write_design_est_report, write_sensitivity_report
from .search import UnreachablePowerError, find_sample_size
from .stats import InvalidParameterError, SampleSummary

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNREACHABLE = 3


def _fresh_seed() -> int:
    return secrets.randbits(63)


def _emit_json(command: str, mode: str, params: dict, result: dict) -> None:
    doc = {"command": command, "mode": mode, "params": params, "result": result}
    print(json.dumps(doc, indent=2))


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [
        max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)
    ]
    lines = ["  ".join(h.rjust(w) for h, w in zip(headers, widths))]
    for row in rows:
        lines.append("  ".join(v.rjust(w) for v, w in zip(row, widths)))
    return "\n".join(lines)


def _f(x) -> str:
    return "NA" if x is None else f"{x:.3f}"


def _add_common(p: argparse.ArgumentParser, B_default: int) -> None:
    p.add_argument("--sig-level", type=float, default=0.05, dest="alpha",
                   help="two-sided type I error (default .05)")
    p.add_argument("--B", type=int, default=B_default,
                   help=f"simulation replicates (default {B_default})")
    p.add_argument("--seed", type=int, default=None,
                   help="master seed; drawn and printed when omitted")
    p.add_argument("--workers", type=int, default=1,
                   help="worker threads (any value gives identical results)")
    p.add_argument("--mode", choices=("simulate", "exact"), default="simulate")
    p.add_argument("--output", choices=("human", "json", "csv"), default="human")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prda",
        description="Design analysis for two-group comparisons: power, "
                    "type M (exaggeration) and type S (sign) errors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prospective", help="smallest n per group reaching a target power")
    p.add_argument("--d", type=float, required=True, help="plausible effect size (Cohen's d)")
    p.add_argument("--power", type=float, required=True, help="target power")
    p.add_argument("--rangen-lo", type=int, default=2, help="search range lower bound")
    p.add_argument("--rangen-hi", type=int, default=1000, help="search range upper bound")
    p.add_argument("--tol", type=float, default=0.005, help="power resolution tolerance")
    _add_common(p, 10000)

    p = sub.add_parser("retrospective", help="risk profile of a given equal-n design")
    p.add_argument("--d", type=float, required=True, help="plausible effect size (Cohen's d)")
    p.add_argument("--n", type=int, required=True, help="sample size per group")
    _add_common(p, 10000)

    p = sub.add_parser("design-est", help="design analysis under an effect-size prior")
    p.add_argument("--n1", type=int, required=True, help="first group size")
    p.add_argument("--n2", type=int, default=None, help="second group size (default n1)")
    p.add_argument("--target-d", type=float, default=None, help="point effect size")
    p.add_argument("--limits-lo", type=float, default=None, help="interval lower bound")
    p.add_argument("--limits-hi", type=float, default=None, help="interval upper bound")
    p.add_argument("--distribution", choices=("uniform", "normal"), default="uniform",
                   help="density over the interval (default uniform)")
    p.add_argument("--k", type=float, default=1 / 6,
                   help="truncated-normal sd as a fraction of interval length (default 1/6)")
    p.add_argument("--B0", type=int, default=500, help="effect sizes drawn from the prior")
    p.add_argument("--return-data", action="store_true",
                   help="include the per-draw table in the output")
    p.add_argument("--report", default=None, metavar="DIR",
                   help="also write per-draw CSV and histogram PNG into DIR")
    _add_common(p, 500)

    p = sub.add_parser("sensitivity", help="power/type M/type S over a grid of sample sizes")
    p.add_argument("--d", type=float, required=True, help="plausible effect size (Cohen's d)")
    p.add_argument("--n-grid", required=True,
                   help="comma-separated per-group sizes, e.g. 10,20,50,100")
    p.add_argument("--report", default=None, metavar="DIR",
                   help="also write curve CSV and figure PNG into DIR")
    _add_common(p, 10000)

    p = sub.add_parser("interpret", help="Cohen's d with CI, CL, U3 and label")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--mean1", type=float, required=True)
    p.add_argument("--sd1", type=float, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--mean2", type=float, required=True)
    p.add_argument("--sd2", type=float, required=True)
    p.add_argument("--level", type=float, default=0.95, help="confidence level (default .95)")
    p.add_argument("--output", choices=("human", "json"), default="human")

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host", default=os.environ.get("PRDA_HOST", "127.0.0.1"))
    p.add_argument("--port", type=int, default=int(os.environ.get("PRDA_PORT", "8000")))
    p.add_argument("--workers", type=int,
                   default=int(os.environ.get("PRDA_WORKERS", "1")),
                   help="engine worker threads per request")
    p.add_argument("--cors-origin", default=os.environ.get("PRDA_CORS_ORIGIN", "*"))

    return parser


def _cmd_prospective(args) -> int:
    if args.output == "csv":
        raise InvalidParameterError("csv output applies to sensitivity and design-est")
    if args.mode == "exact":
        hi = args.rangen_hi
        power_hi = oracle.exact_power(args.d, hi, hi, args.alpha)
        if power_hi < args.power:
            print(
                f"error: power {args.power:g} unreachable in range: "
                f"n = {hi} achieves {power_hi:.4f}",
                file=sys.stderr,
            )
            return EXIT_UNREACHABLE
        n = oracle.exact_sample_size(args.d, args.power, args.alpha,
                                     (args.rangen_lo, args.rangen_hi))
        power, type_s, type_m = oracle.exact_design(args.d, n, n, args.alpha)
        params = {"d": args.d, "power": args.power, "alpha": args.alpha,
                  "rangen": [args.rangen_lo, args.rangen_hi]}
        if args.output == "json":
            _emit_json("prospective", "exact", params,
                       {"n": n, **payloads.exact_triple_payload(power, type_s, type_m)})
        else:
            print(_table(["d", "power", "n", "typeS", "typeM"],
                         [[_f(args.d), _f(args.power), str(n), _f(type_s), _f(type_m)]]))
            print(f"\nexact power at n={n}: {power:.4f}")
        return EXIT_OK

    seed = args.seed if args.seed is not None else _fresh_seed()
    try:
        res = find_sample_size(args.d, args.power, args.alpha,
                               (args.rangen_lo, args.rangen_hi), args.tol,
                               args.B, seed, workers=args.workers)
    except UnreachablePowerError as err:
        print(f"error: {err}", file=sys.stderr)
        print(f"seed: {seed}", file=sys.stderr)
        return EXIT_UNREACHABLE
    params = {"d": args.d, "power": args.power, "alpha": args.alpha,
              "rangen": [args.rangen_lo, args.rangen_hi], "tol": args.tol,
              "B": args.B, "seed": seed, "workers": args.workers}
    if args.output == "json":
        _emit_json("prospective", "simulate", params, payloads.prospective_payload(res))
    else:
        ach = res.achieved
        print(_table(["d", "power", "n", "typeS", "typeM"],
                     [[_f(args.d), _f(args.power), str(res.n_per_group),
                       _f(ach.type_s), _f(ach.type_m)]]))
        print(f"\nachieved power: {ach.power:.4f} (from {ach.B} replicates)  "
              f"seed: {seed}  alpha: {args.alpha:g}  tol: {args.tol:g}")
    return EXIT_OK


def _cmd_retrospective(args) -> int:
    if args.output == "csv":
        raise InvalidParameterError("csv output applies to sensitivity and design-est")
    if args.mode == "exact":
        power, type_s, type_m = oracle.exact_design(args.d, args.n, args.n, args.alpha)
        params = {"d": args.d, "n": args.n, "alpha": args.alpha}
        if args.output == "json":
            _emit_json("retrospective", "exact", params,
                       payloads.exact_triple_payload(power, type_s, type_m))
        else:
            print(_table(["d", "n", "power", "typeS", "typeM"],
                         [[_f(args.d), str(args.n), _f(power), _f(type_s), _f(type_m)]]))
        return EXIT_OK

    seed = args.seed if args.seed is not None else _fresh_seed()
    res = retrospective(args.d, args.n, args.alpha, args.B, seed, workers=args.workers)
    params = {"d": args.d, "n": args.n, "alpha": args.alpha, "B": args.B,
              "seed": seed, "workers": args.workers}
    if args.output == "json":
        _emit_json("retrospective", "simulate", params, payloads.design_result_payload(res))
    else:
        print(_table(["d", "n", "power", "typeS", "typeM"],
                     [[_f(args.d), str(args.n), _f(res.power), _f(res.type_s),
                       _f(res.type_m)]]))
        print(f"\nseed: {seed}  B: {args.B}  alpha: {args.alpha:g}")
    return EXIT_OK


def _cmd_design_est(args) -> int:
    if (args.target_d is None) == (args.limits_lo is None and args.limits_hi is None):
        raise InvalidParameterError("supply either --target-d or both --limits-lo/--limits-hi")
    if (args.limits_lo is None) != (args.limits_hi is None):
        raise InvalidParameterError("supply both --limits-lo and --limits-hi")
    limits = None if args.limits_lo is None else (args.limits_lo, args.limits_hi)
    prior = build_prior(value=args.target_d, limits=limits,
                        distribution=args.distribution, k=args.k)
    n2 = args.n1 if args.n2 is None else args.n2

    if args.mode == "exact":
        if prior.kind != "point":
            raise InvalidParameterError("exact mode supports point effects only")
        power, type_s, type_m = oracle.exact_design(prior.value, args.n1, n2, args.alpha)
        params = {"n1": args.n1, "n2": n2, "targetD": prior.value, "alpha": args.alpha}
        if args.output == "json":
            _emit_json("design-est", "exact", params,
                       payloads.exact_triple_payload(power, type_s, type_m))
        else:
            print(_table(["power", "typeS", "typeM"],
                         [[_f(power), _f(type_s), _f(type_m)]]))
        return EXIT_OK

    seed = args.seed if args.seed is not None else _fresh_seed()
    want_data = args.return_data or args.output == "csv" or args.report is not None
    res = design_est(args.n1, n2, prior, args.alpha, args.B, args.B0,
                     return_data=want_data, seed=seed, workers=args.workers)
    params = {"n1": args.n1, "n2": n2, "alpha": args.alpha, "B": args.B,
              "B0": args.B0, "k": args.k, "distribution": args.distribution,
              "seed": seed, "workers": args.workers}
    if prior.kind == "point":
        params["targetD"] = prior.value
    else:
        params["limits"] = [prior.lower, prior.upper]

    if args.report is not None:
        csv_path, fig_path = write_design_est_report(res, args.report)
        print(f"report written: {csv_path}, {fig_path}", file=sys.stderr)

    if args.output == "csv":
        sys.stdout.write(per_draw_csv(res))
    elif args.output == "json":
        shown = res if args.return_data else replace(res, per_draw=None)
        _emit_json("design-est", "simulate", params, payloads.design_est_payload(shown))
    else:
        print(_table(["power", "typeS", "typeM"],
                     [[_f(res.power), _f(res.type_s), _f(res.type_m)]]))
        print(f"\nseed: {seed}  B: {args.B}  B0: {args.B0}  alpha: {args.alpha:g}")
    return EXIT_OK


def _parse_grid(text: str) -> list[int]:
    try:
        grid = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise InvalidParameterError(f"bad --n-grid {text!r}: {exc}") from exc
    if not grid:
        raise InvalidParameterError("--n-grid is empty")
    return grid


def _cmd_sensitivity(args) -> int:
    grid = _parse_grid(args.n_grid)
    if args.mode == "exact":
        rows_payload = []
        for n in grid:
            power, type_s, type_m = oracle.exact_design(args.d, n, n, args.alpha)
            rows_payload.append({"n": n, "power": power, "typeS": type_s, "typeM": type_m})
        params = {"d": args.d, "nGrid": grid, "alpha": args.alpha}
        if args.output == "json":
            _emit_json("sensitivity", "exact", params, {"rows": rows_payload})
        elif args.output == "csv":
            print("n,power,type_s,type_m")
            for row in rows_payload:
                print(f"{row['n']},{row['power']!r},{row['typeS']!r},{row['typeM']!r}")
        else:
            print(_table(["n", "power", "typeS", "typeM"],
                         [[str(r["n"]), _f(r["power"]), _f(r["typeS"]), _f(r["typeM"])]
                          for r in rows_payload]))
        return EXIT_OK

    seed = args.seed if args.seed is not None else _fresh_seed()
    rows = sensitivity_curve(args.d, grid, args.alpha, args.B, seed, workers=args.workers)
    params = {"d": args.d, "nGrid": grid, "alpha": args.alpha, "B": args.B,
              "seed": seed, "workers": args.workers}

    if args.report is not None:
        csv_path, fig_path = write_sensitivity_report(rows, args.d, args.report)
        print(f"report written: {csv_path}, {fig_path}", file=sys.stderr)

    if args.output == "json":
        _emit_json("sensitivity", "simulate", params,
                   {"rows": payloads.sensitivity_rows_payload(rows)})
    elif args.output == "csv":
        sys.stdout.write(sensitivity_csv(rows))
    else:
        print(_table(["n", "power", "typeS", "typeM"],
                     [[str(n), _f(r.power), _f(r.type_s), _f(r.type_m)] for n, r in rows]))
        print(f"\nseed: {seed}  B: {args.B}  alpha: {args.alpha:g}")
    return EXIT_OK


def _cmd_interpret(args) -> int:
    a = SampleSummary(n=args.n1, mean=args.mean1, sd=args.sd1)
    b = SampleSummary(n=args.n2, mean=args.mean2, sd=args.sd2)
    interp = interpret_from_summaries(a, b, args.level)
    if args.output == "json":
        params = {"group1": {"n": args.n1, "mean": args.mean1, "sd": args.sd1},
                  "group2": {"n": args.n2, "mean": args.mean2, "sd": args.sd2},
                  "level": args.level}
        _emit_json("interpret", "exact", params, payloads.interpret_payload(interp))
    else:
        print(_table(
            ["d", "ciLow", "ciHigh", "CL", "U3", "label"],
            [[_f(interp.d), _f(interp.ci_low), _f(interp.ci_high),
              _f(interp.cl), _f(interp.u3), interp.label]]))
        print(f"\nconfidence level: {args.level:g} "
              "(benchmark labels are conventions, relative rather than absolute)")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(workers=args.workers, cors_origin=args.cors_origin)
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


_HANDLERS = {
    "prospective": _cmd_prospective,
    "retrospective": _cmd_retrospective,
    "design-est": _cmd_design_est,
    "sensitivity": _cmd_sensitivity,
    "interpret": _cmd_interpret,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except InvalidParameterError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
