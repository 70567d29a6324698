"""Command line front-end.

Exit codes: 0 success, 1 a property or probe found a violation, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import forms, logpair, valuation
from .errors import AbhyankarError
from .expr import parse_form, parse_function
from .genseries import (
    SeriesVariableFrame,
    format_series,
    formal_partial,
    parse_series,
    series_invert,
    series_residue,
    series_value,
)
from .logpair import Divisor
from .ordgroup import CompositionLayout, format_element, parse_element
from .specfiles import dump_valuation, load_pair, load_valuation

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def _function_or_form(args, nu):
    if args.form:
        return parse_form(args.form, nu.ctx)
    if args.expr:
        return parse_function(args.expr, nu.ctx)
    raise AbhyankarError("one of --expr or --form is required")


def cmd_value(args) -> tuple[Any, int]:
    nu = load_valuation(args.spec)
    return format_element(valuation.value(nu, parse_function(args.expr, nu.ctx))), EXIT_OK


def cmd_form_value(args):
    nu = load_valuation(args.spec)
    return format_element(forms.valuate_form(parse_form(args.form, nu.ctx), nu)), EXIT_OK


def cmd_residue(args):
    nu = load_valuation(args.spec)
    obj = _function_or_form(args, nu)
    if isinstance(obj, forms.TopForm):
        res = forms.poincare_residue(obj, nu)
        return str(res), EXIT_OK
    return str(valuation.residue(nu, obj)), EXIT_OK


def cmd_discrepancy(args):
    pair, nu = load_pair(args.pair), load_valuation(args.spec)
    return format_element(logpair.log_discrepancy(pair, nu)), EXIT_OK


def cmd_lct(args):
    pair, nu = load_pair(args.pair), load_valuation(args.spec)
    H = Divisor([(1, parse_function(args.H, pair.ctx))])
    return str(logpair.lct(pair, H, nu)), EXIT_OK


def cmd_decompose(args):
    pair, nu = load_pair(args.pair), load_valuation(args.spec)
    dec = logpair.decompose_discrepancy(pair, nu)
    if args.format == "json":
        return {
            "discrepancy": format_element(dec.discrepancy),
            "coefficients": {t: str(n) for t, n in zip(dec.basis_vars, dec.coefficients)},
        }, EXIT_OK
    lines = [f"a = {format_element(dec.discrepancy)}"]
    lines += [f"{t}: {n}" for t, n in zip(dec.basis_vars, dec.coefficients)]
    return "\n".join(lines), EXIT_OK


def cmd_different(args):
    pair, nu = load_pair(args.pair), load_valuation(args.spec)
    return str(logpair.different(pair, nu)), EXIT_OK


def cmd_adjunction(args):
    pair, nu, mu = load_pair(args.pair), load_valuation(args.spec), load_valuation(args.inner)
    rep = logpair.adjunction_identity_check(pair, nu, mu)
    out = {
        "ambient": format_element(rep.ambient),
        "center": format_element(rep.center_embedded),
        "equal": rep.equal,
    }
    if args.format != "json":
        out = "\n".join([f"a(X,D,nu o mu) = {out['ambient']}", f"a(Z,D_Z,mu)   = {out['center']}",
                         f"equal: {'yes' if rep.equal else 'no'}"])
    return out, EXIT_OK if rep.equal else EXIT_VIOLATION


def cmd_probe(args):
    pair = load_pair(args.pair)
    rep = logpair.probe_global(pair, args.mode, args.samples, args.seed)
    if args.format == "json":
        out = {
            "mode": rep.mode, "samples": rep.samples, "seed": rep.seed,
            "violations": [{"valuation": nu.as_mapping(), "discrepancy": format_element(a)}
                           for nu, a in rep.violations],
        }
    else:
        lines = [f"mode: {rep.mode}", f"samples: {rep.samples}", f"seed: {rep.seed}",
                 f"violations: {len(rep.violations)}"]
        for nu, a in rep.violations:
            lines.append(f"  - a = {format_element(a)} at {dump_valuation(nu)}")
        out = "\n".join(lines)
    return out, EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_series(args):
    s = parse_series(args.series)
    if args.op == "value":
        return format_element(series_value(s)), EXIT_OK
    if args.op == "invert":
        cutoff = parse_element(args.cutoff) if args.cutoff else None
        return format_series(series_invert(s, args.terms, cutoff)), EXIT_OK
    if args.op == "partial":
        frame = SeriesVariableFrame.standard(s.dimension)
        return format_series(formal_partial(s, frame, args.index)), EXIT_OK
    if args.op == "residue":
        front, back = (int(x) for x in args.layout.split(","))
        return format_series(series_residue(s, CompositionLayout(front, back))), EXIT_OK
    raise AbhyankarError(f"unknown series operation {args.op!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abhyankar", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        p.set_defaults(func=func)
        return p

    p = add("value", cmd_value, "value of a rational function")
    p.add_argument("--spec", required=True)
    p.add_argument("--expr", required=True)

    p = add("form-value", cmd_form_value, "log value of a top form")
    p.add_argument("--spec", required=True)
    p.add_argument("--form", required=True)

    p = add("residue", cmd_residue, "residue of a value-0 function or Poincare residue of a form")
    p.add_argument("--spec", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--expr")
    g.add_argument("--form")

    for name, func, help_ in (
        ("discrepancy", cmd_discrepancy, "log discrepancy a(X,D,nu)"),
        ("decompose", cmd_decompose, "write a(X,D,nu) in the basis weights"),
        ("different", cmd_different, "different of the boundary on the center of an lc place"),
    ):
        p = add(name, func, help_)
        p.add_argument("--pair", required=True)
        p.add_argument("--spec", required=True)

    p = add("lct", cmd_lct, "log canonical threshold at a rank-one place")
    p.add_argument("--pair", required=True)
    p.add_argument("--H", required=True)
    p.add_argument("--spec", required=True)

    p = add("adjunction-check", cmd_adjunction, "compare a(X,D,nu o mu) with a(Z,D_Z,mu)")
    p.add_argument("--pair", required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--inner", required=True)

    p = add("probe", cmd_probe, "sample places and look for klt/lc violations")
    p.add_argument("--pair", required=True)
    p.add_argument("--mode", choices=("klt", "lc"), default="klt")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    p = add("series", cmd_series, "generalized power series operations")
    p.add_argument("--series", required=True)
    p.add_argument("--op", choices=("value", "invert", "partial", "residue"), required=True)
    p.add_argument("--terms", type=int, default=8)
    p.add_argument("--cutoff")
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--layout", default="1,1")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        result, code = args.func(args)
    except AbhyankarError as exc:
        print(f"error{exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OSError) as exc:
        print(f"error[cli.InputError] {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.format == "json":
        payload = result if isinstance(result, dict) else {"result": result}
        print(json.dumps({"command": args.command, **payload}, sort_keys=True))
    else:
        print(result)
    return code


if __name__ == "__main__":
    sys.exit(main())
