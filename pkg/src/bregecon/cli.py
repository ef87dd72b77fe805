"""Command-line interface.

Subcommands map onto the library layers: ``divergence`` and ``lda`` for
pointwise evaluation and aggregation, ``demand`` for the two demand
programs, ``path`` and ``decompose`` for transition reports (both can
render a PNG next to the delimited output), ``exhaustivity`` for the
production-family property matrix, and ``verify`` for the acceptance
suite.

Exit codes: 0 success, 2 configuration problems, 3 domain violations,
4 convergence failures, 5 verification failures.
"""
from __future__ import annotations

import argparse
import json
import sys

from .demand import Economy, hicksian_demand, marshallian_demand
from .epf import property_matrix
from .errors import (
    ConjugateUnavailable,
    DegenerateRatio,
    DimensionMismatch,
    DomainViolation,
    InfeasibleTarget,
    InvalidParams,
    InvalidSpec,
    InversionFailure,
    NoBracket,
    NoConvergence,
    NonFiniteSample,
    NoSolution,
    NotOnPath,
    NumericalBreakdown,
    UnknownFamily,
    ZeroDenominator,
)
from .generators import divergence, generator_from_config, make_generator
from .means import WeightedInputs, arithmetic_mean, bregman_mean, right_cost_minimizer
from .transition import (
    pivot_bundle,
    trace_path,
    trace_rows,
    triangle_decompose,
)

_CONFIG_ERRORS = (UnknownFamily, InvalidParams, InvalidSpec)
_DOMAIN_ERRORS = (
    DomainViolation,
    DimensionMismatch,
    NotOnPath,
    ZeroDenominator,
    DegenerateRatio,
)
_CONVERGENCE_ERRORS = (
    NoConvergence,
    NoBracket,
    NoSolution,
    InversionFailure,
    NumericalBreakdown,
    ConjugateUnavailable,
    InfeasibleTarget,
    NonFiniteSample,
)


def _parse_params(items):
    params = {}
    for item in items or ():
        if "=" not in item:
            raise InvalidParams(
                f"parameter {item!r} is not of the form name=value"
            )
        key, _, raw = item.partition("=")
        try:
            params[key.strip()] = float(raw)
        except ValueError as exc:
            raise InvalidParams(
                f"parameter {key!r} has non-numeric value {raw!r}"
            ) from exc
    return params


def _build_generator(args):
    if getattr(args, "spec", None) and getattr(args, "family", None):
        raise InvalidParams("--family and --spec are mutually exclusive")
    if getattr(args, "spec", None):
        try:
            with open(args.spec) as fh:
                config = json.load(fh)
        except OSError as exc:
            raise InvalidSpec(f"cannot read spec file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidSpec(f"spec file is not valid JSON: {exc}") from exc
        return generator_from_config(config)
    if getattr(args, "family", None):
        return make_generator(args.family, **_parse_params(args.params))
    raise InvalidParams("one of --family or --spec is required")


def _values(text: str) -> tuple:
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError as exc:
        raise InvalidParams(f"expected comma-separated numbers, got {text!r}") from exc


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    if isinstance(value, (list, tuple)):
        return ";".join(_fmt(v) for v in value)
    return str(value)


def _emit(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_payload(args, payload: dict) -> None:
    if args.format == "json":
        _emit(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        lines = ["key,value"]
        for key in sorted(payload):
            lines.append(f"{key},{_fmt(payload[key])}")
        _emit(args, "\n".join(lines) + "\n")


def _emit_table(args, header, rows) -> None:
    if args.format == "json":
        payload = [dict(zip(header, row)) for row in rows]
        _emit(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        _emit(args, "\n".join(lines) + "\n")


def _cmd_divergence(args) -> int:
    gen = _build_generator(args)
    value = divergence(gen, float(args.x), float(args.y))
    _emit_payload(
        args,
        {
            "family": gen.name,
            "x": float(args.x),
            "y": float(args.y),
            "divergence": value,
        },
    )
    return 0


def _cmd_lda(args) -> int:
    gen = _build_generator(args)
    values = _values(args.x)
    gammas = _values(args.gammas) if args.gammas else (1.0,) * len(values)
    inputs = WeightedInputs(values, gammas)
    mean = bregman_mean(gen, inputs)
    payload = {
        "family": gen.name,
        "inputs": list(values),
        "gammas": list(gammas),
        "mean": mean,
        "arithmetic_mean": arithmetic_mean(inputs),
        "dual_coordinate": gen.u(mean),
    }
    if args.prices:
        prices = _values(args.prices)
        payload["price_weighted_target"] = right_cost_minimizer(
            gen, inputs, prices=prices
        )
    _emit_payload(args, payload)
    return 0


def _cmd_demand(args) -> int:
    gen = _build_generator(args)
    prices = _values(args.prices)
    gammas = _values(args.gammas) if args.gammas else (1.0,) * len(prices)
    if (args.w is None) == (args.mu_target is None):
        raise InvalidParams("exactly one of --w and --mu-target is required")
    econ = Economy(
        prices,
        gammas,
        output_price=args.p,
        income=args.w,
        target_output=args.mu_target,
    )
    if args.w is not None:
        sol = marshallian_demand(gen, econ)
        program = "output-max"
    else:
        sol = hicksian_demand(gen, econ)
        program = "expenditure-min"
    _emit_payload(
        args,
        {
            "family": gen.name,
            "program": program,
            "bundle": list(sol.bundle),
            "objective": sol.objective,
            "on_expansion_path": sol.on_expansion_path,
            "residual": sol.residual,
            "mode": sol.mode,
        },
    )
    return 0


def _cmd_path(args) -> int:
    gen = _build_generator(args)
    start = _values(args.start)
    end = _values(args.end)
    gammas = _values(args.gammas) if args.gammas else None
    trace = trace_path(gen, start, end, weights=gammas, samples=args.samples)
    header, rows = trace_rows(trace)
    if args.format == "json":
        payload = {
            "family": gen.name,
            "weights": list(trace.weights),
            "columns": list(header),
            "rows": [list(r) for r in rows],
            "total_cost": trace.cumulative_cost[-1],
        }
        _emit(args, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        _emit_table(args, header, rows)
    if args.plot:
        from .plots import render_path_figure

        render_path_figure(trace, args.plot)
    return 0


def _cmd_decompose(args) -> int:
    gen = _build_generator(args)
    values = _values(args.x)
    gammas = _values(args.gammas) if args.gammas else (1.0,) * len(values)
    target = (float(args.c),) * len(values)
    pivot = pivot_bundle(gen, values, target, gammas, side=args.via)
    dec = triangle_decompose(gen, values, target, pivot, gammas)
    _emit_payload(
        args,
        {
            "family": gen.name,
            "pivot": pivot[0],
            "pivot_side": args.via,
            "total": dec.total,
            "term1": dec.term1,
            "term2": dec.term2,
            "delta": dec.delta,
            "via": dec.via,
        },
    )
    if args.plot:
        from .plots import render_decomposition_figure

        render_decomposition_figure(dec, args.plot)
    return 0


def _cmd_exhaustivity(args) -> int:
    cells = property_matrix()
    header = ("family", "column", "verdict", "residual", "note")
    rows = [
        (c.family, c.column, c.verdict, c.residual, c.note) for c in cells
    ]
    _emit_table(args, header, rows)
    return 0


def _cmd_verify(args) -> int:
    from .verify import run_all

    results = run_all(seed=args.seed)
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
    good = sum(r.passed for r in results)
    lines.append(f"{good}/{len(results)} checks passed")
    _emit(args, "\n".join(lines) + "\n")
    return 0 if good == len(results) else 5


def _add_generator_options(sub) -> None:
    sub.add_argument("--family", help="generator family name")
    sub.add_argument(
        "--params",
        action="append",
        metavar="NAME=VALUE",
        help="generator parameter, repeatable",
    )
    sub.add_argument("--spec", help="JSON file with a generator config")


def _add_output_options(sub, default_format="json") -> None:
    sub.add_argument(
        "--format", choices=("json", "csv"), default=default_format
    )
    sub.add_argument("--out", help="write the report to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bregecon",
        description="Divergence aggregates, demands, and transition reports",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("divergence", help="pointwise divergence")
    _add_generator_options(p)
    _add_output_options(p)
    p.add_argument("--x", required=True, type=float)
    p.add_argument("--y", required=True, type=float)
    p.set_defaults(handler=_cmd_divergence)

    p = subs.add_parser("lda", help="weighted generator mean")
    _add_generator_options(p)
    _add_output_options(p)
    p.add_argument("--x", required=True, help="comma-separated inputs")
    p.add_argument("--gammas", help="comma-separated weights")
    p.add_argument("--prices", help="comma-separated prices")
    p.set_defaults(handler=_cmd_lda)

    p = subs.add_parser("demand", help="demand under a budget or output floor")
    _add_generator_options(p)
    _add_output_options(p)
    p.add_argument("--prices", required=True, help="comma-separated prices")
    p.add_argument("--gammas", help="comma-separated weights")
    p.add_argument("--p", type=float, default=1.0, help="output price")
    p.add_argument("--w", type=float, help="income (output maximization)")
    p.add_argument(
        "--mu-target",
        dest="mu_target",
        type=float,
        help="output floor (expenditure minimization)",
    )
    p.set_defaults(handler=_cmd_demand)

    p = subs.add_parser("path", help="trace a straight transition")
    _add_generator_options(p)
    _add_output_options(p)
    p.add_argument("--from", dest="start", required=True)
    p.add_argument("--to", dest="end", required=True)
    p.add_argument("--gammas")
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--plot", help="also render a PNG figure to this path")
    p.set_defaults(handler=_cmd_path)

    p = subs.add_parser("decompose", help="split a transition cost")
    _add_generator_options(p)
    _add_output_options(p)
    p.add_argument("--x", required=True, help="comma-separated start bundle")
    p.add_argument("--c", required=True, type=float, help="target level")
    p.add_argument("--gammas")
    p.add_argument("--via", choices=("left", "right"), default="left")
    p.add_argument("--plot", help="also render a PNG figure to this path")
    p.set_defaults(handler=_cmd_decompose)

    p = subs.add_parser("exhaustivity", help="production-family property matrix")
    _add_output_options(p, default_format="csv")
    p.set_defaults(handler=_cmd_exhaustivity)

    p = subs.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", help="write the report to this file")
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.handler(args)
    except _CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except _CONVERGENCE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def entry() -> None:
    raise SystemExit(main(sys.argv[1:]))
