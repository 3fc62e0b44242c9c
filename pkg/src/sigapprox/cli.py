"""Command-line front end.

Exit codes: 0 success / certificate pass, 1 validation failure, 2 usage or
parse error, 3 numeric / domain error.  Reports go to stdout, diagnostics
to stderr.  All floats are printed with shortest round-trip representation,
so identical flags produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Optional

from . import engine, export
from .expressions import ExprError, EvalDomainError, FunctionSpec
from .limits import boundary_residual, sigmoid_saturation_slope
from .sigmoid import (
    MAX_DERIVATIVE_ORDER,
    sigmoid_nth_derivative,
)
from .stirling import stirling2, stirling_row

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

GRAMMAR_HELP = (
    "expression grammar: expr := term (('+'|'-') term)*; "
    "term := factor (('*'|'/') factor)*; "
    "factor := '-' factor | base ('^' factor)?; "
    "base := number | 'x' | 'pi' | ident '(' expr ')' | '(' expr ')'; "
    "functions: abs, sin, cos, exp, ln, sqrt; "
    "'^' exponents must be constant; no implicit multiplication"
)


class UsageError(Exception):
    pass


def _fmt(x: Any) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _emit(lines: list[tuple[str, Any]], as_json: bool) -> None:
    if as_json:
        print(json.dumps({k: v for k, v in lines}))
    else:
        for key, value in lines:
            print(f"{key} = {_fmt(value)}")


def _build_spec(args: argparse.Namespace) -> FunctionSpec:
    if args.a >= args.b:
        raise UsageError(f"need --a < --b, got {args.a!r} >= {args.b!r}")
    if args.eps <= 0.0:
        raise UsageError("--eps must be positive")
    if args.lipschitz is not None and args.lipschitz <= 0.0:
        raise UsageError("--lipschitz must be positive")
    if args.sup is not None and args.sup < 0.0:
        raise UsageError("--sup must be nonnegative")
    if args.delta is not None and args.delta <= 0.0:
        raise UsageError("--delta must be positive")
    try:
        return FunctionSpec.from_text(
            args.fn,
            args.a,
            args.b,
            lipschitz=args.lipschitz,
            sup_bound=args.sup,
            modulus_override=args.delta,
        )
    except EvalDomainError:
        raise
    except ExprError as exc:
        raise UsageError(f"cannot parse --fn: {exc}") from exc


def _recipe_lines(recipe: engine.Recipe) -> list[tuple[str, Any]]:
    return [
        ("epsilon", recipe.epsilon),
        ("M_f", recipe.m_f),
        ("M_f_source", recipe.m_f_source),
        ("M_sigma", recipe.m_sigma),
        ("L", recipe.lipschitz),
        ("L_source", recipe.lipschitz_source),
        ("eta", recipe.eta),
        ("delta", recipe.delta),
        ("N", recipe.n),
        ("h", recipe.h),
        ("w", recipe.w),
    ]


def cmd_recipe(args: argparse.Namespace) -> int:
    spec = _build_spec(args)
    recipe = engine.compute_recipe(spec, args.eps)
    _emit(_recipe_lines(recipe), args.json)
    return EXIT_OK


def cmd_approximate(args: argparse.Namespace) -> int:
    spec = _build_spec(args)
    recipe = engine.compute_recipe(spec, args.eps)
    g = engine.build_approximant(spec, recipe)
    grid = args.grid if args.grid is not None else max(10_001, 10 * recipe.n)
    if grid < 2:
        raise UsageError("--grid must be at least 2")
    report = engine.validate(g, spec, args.eps, grid)
    if args.out_network:
        doc = export.to_network_document(g, recipe, spec)
        export.write_network_document(doc, args.out_network)
    if args.out_samples:
        export.write_samples(g, spec, grid, args.out_samples)
    lines = _recipe_lines(recipe) + [
        ("grid_size", report.grid_size),
        ("sup_error", report.sup_error),
        ("argmax_x", report.argmax_x),
        ("target_epsilon", report.target_epsilon),
        ("pass", report.passed),
    ]
    _emit(lines, args.json)
    return EXIT_OK if report.passed else EXIT_VALIDATION_FAILED


def _fd_oracle(n: int, x: float) -> float:
    # Richardson-extrapolated central difference of the closed-form order
    # n-1 derivative; a convenience cross-check, not the test oracle.
    def diff(h: float) -> float:
        return (
            sigmoid_nth_derivative(n - 1, x + h) - sigmoid_nth_derivative(n - 1, x - h)
        ) / (2.0 * h)

    h = 1e-3
    return (4.0 * diff(h / 2.0) - diff(h)) / 3.0


def cmd_derivative(args: argparse.Namespace) -> int:
    if args.n < 0 or args.n > MAX_DERIVATIVE_ORDER:
        raise UsageError(f"--n must lie in 0..{MAX_DERIVATIVE_ORDER}")
    value = sigmoid_nth_derivative(args.n, args.x)
    lines: list[tuple[str, Any]] = [("n", args.n), ("x", args.x), ("value", value)]
    if args.check and args.n >= 1:
        oracle = _fd_oracle(args.n, args.x)
        denom = max(abs(value), abs(oracle), 1e-300)
        lines.append(("oracle", oracle))
        lines.append(("rel_error", abs(value - oracle) / denom))
    _emit(lines, args.json)
    return EXIT_OK


def cmd_stirling(args: argparse.Namespace) -> int:
    if args.n < 0 or (args.k is not None and args.k < 0):
        raise UsageError("--n and --k must be nonnegative")
    if args.k is not None:
        value: Any = stirling2(args.n, args.k)
        lines = [("n", args.n), ("k", args.k), ("value", value)]
    else:
        row = ",".join(str(v) for v in stirling_row(args.n))
        lines = [("n", args.n), ("row", row)]
    _emit(lines, args.json)
    return EXIT_OK


def cmd_saturation(args: argparse.Namespace) -> int:
    if args.n < 3:
        raise UsageError("--n must be at least 3")
    if args.h <= 0.0:
        raise UsageError("--h must be positive")
    slope = sigmoid_saturation_slope(args.h, args.n)
    lines = [
        ("h", slope.h),
        ("n", args.n),
        ("omega", slope.omega),
        ("tol", slope.tol),
        ("residual", boundary_residual(slope)),
    ]
    _emit(lines, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigapprox",
        description=(
            "Certified single-hidden-layer sigmoid approximation of "
            "continuous functions on an interval. " + GRAMMAR_HELP
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_fn_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--fn", required=True, help="target function of x")
        p.add_argument("--a", type=float, required=True, help="left endpoint")
        p.add_argument("--b", type=float, required=True, help="right endpoint")
        p.add_argument("--eps", type=float, required=True, help="target sup error")
        p.add_argument("--lipschitz", type=float, help="Lipschitz bound for f")
        p.add_argument("--sup", type=float, help="bound on sup |f|")
        p.add_argument("--delta", type=float, help="explicit continuity modulus")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p_recipe = sub.add_parser("recipe", help="print the certified parameters")
    add_fn_flags(p_recipe)
    p_recipe.set_defaults(func=cmd_recipe)

    p_approx = sub.add_parser(
        "approximate", help="build, validate and optionally export the network"
    )
    add_fn_flags(p_approx)
    p_approx.add_argument("--grid", type=int, help="validation grid size")
    p_approx.add_argument("--out-network", help="write the network document (JSON)")
    p_approx.add_argument("--out-samples", help="write sample rows (CSV)")
    p_approx.add_argument(
        "--threads",
        type=int,
        default=1,
        help="worker count for validation (output is identical for any value)",
    )
    p_approx.set_defaults(func=cmd_approximate)

    p_deriv = sub.add_parser("derivative", help="nth derivative of the sigmoid")
    p_deriv.add_argument("--n", type=int, required=True)
    p_deriv.add_argument("--x", type=float, required=True)
    p_deriv.add_argument(
        "--check", action="store_true", help="also print a finite-difference check"
    )
    p_deriv.add_argument("--json", action="store_true")
    p_deriv.set_defaults(func=cmd_derivative)

    p_stir = sub.add_parser(
        "stirling", help="Stirling numbers of the second kind (exact)"
    )
    p_stir.add_argument("--n", type=int, required=True)
    p_stir.add_argument("--k", type=int)
    p_stir.add_argument("--json", action="store_true")
    p_stir.set_defaults(func=cmd_stirling)

    p_sat = sub.add_parser(
        "saturation", help="sufficient slope for sigmoid saturation"
    )
    p_sat.add_argument("--h", type=float, required=True, help="collar half-width")
    p_sat.add_argument("--n", type=int, required=True, help="partition size N")
    p_sat.add_argument("--json", action="store_true")
    p_sat.set_defaults(func=cmd_saturation)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EvalDomainError, engine.RecipeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
