"""Command-line front end.

Subcommands: index, chern, winding, verify, convergence.  Every subcommand
reads a symbol file (except verify, which generates its own cases), prints a
human-readable summary on standard output, and optionally writes a
structured document to --out in the chosen --format.

Exit statuses: 0 success (and, for index/winding/verify, agreement), and
1 computed-but-disagreeing, 2 parse failure, 3 symbol rejected as
non-invertible on its manifold, 4 numerical failure (unstabilized kernel,
failed residual validation, undersampled winding, non-integral Chern value).
No output document is written on a parse failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import NumericsError, ParseError, SymbolError
from .kernel import DEFAULT_RESIDUAL_TOL, DEFAULT_TOL
from .reports import (compute_index_report, convergence_table,
                      convergence_text, convergence_to_csv,
                      convergence_to_dict, final_delta, index_report_text,
                      index_report_to_dict)
from .symbols import LaurentSymbol, det_laurent, require_invertible
from .symbol_io import atomic_write_text, load_symbol
from .topology import chern_s1, chern_s3, winding_argument, winding_roots
from .verify import (run_verify, verify_report_csv, verify_report_json,
                     verify_report_text)


def _dict_to_csv(doc: dict, prefix: str = "") -> list[str]:
    rows: list[str] = []
    for key, value in doc.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_dict_to_csv(value, prefix=f"{name}_"))
        elif isinstance(value, (list, tuple)):
            if len(value) == 2 and all(isinstance(x, float) for x in value):
                rows.append(f"{name}_re,{value[0]!r}")
                rows.append(f"{name}_im,{value[1]!r}")
            else:
                rows.append(f"{name},{' '.join(str(x) for x in value)}")
        elif isinstance(value, bool):
            rows.append(f"{name},{str(value).lower()}")
        else:
            rows.append(f"{name},{value}")
    return rows


def _render(doc: dict, text: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        return "field,value\n" + "\n".join(_dict_to_csv(doc)) + "\n"
    return text


def _emit(args, doc: dict, text: str, renderer=None) -> None:
    """Text summary to stdout; structured document to --out (or stdout)."""
    render = renderer if renderer is not None else _render
    sys.stdout.write(text)
    if args.out:
        atomic_write_text(args.out, render(doc, text, args.format))
    elif args.format != "text":
        sys.stdout.write(render(doc, text, args.format))


def _add_common(sub, *, trunc=False, tols=False, grid=False, nodes=False, seed=False):
    if trunc:
        sub.add_argument("--trunc", type=int, default=None,
                         help="base truncation size (domain degrees on S1, bands on S3)")
    if tols:
        sub.add_argument("--tol", type=float, default=DEFAULT_TOL,
                         help="relative singular-value threshold for kernel detection")
        sub.add_argument("--residual-tol", type=float, default=DEFAULT_RESIDUAL_TOL,
                         help="residual bound for kernel candidates on the larger truncation")
    if grid:
        sub.add_argument("--grid", type=int, default=512,
                         help="circle quadrature / winding grid size")
    if nodes:
        sub.add_argument("--theta-nodes", type=int, default=24,
                         help="Gauss-Legendre nodes in theta for S3 quadrature")
        sub.add_argument("--phi-nodes", type=int, default=24,
                         help="trapezoid nodes in each phi angle for S3 quadrature")
    if seed:
        sub.add_argument("--seed", type=int, default=0, help="randomness seed")
    sub.add_argument("--out", default=None, help="write the structured document here")
    sub.add_argument("--format", choices=("json", "csv", "text"), default="json",
                     help="format of the structured document (default json)")


def _cmd_index(args) -> int:
    symbol = load_symbol(args.file)
    report = compute_index_report(
        symbol, trunc=args.trunc, tol=args.tol, residual_tol=args.residual_tol,
        grid=args.grid, theta_nodes=args.theta_nodes, phi_nodes=args.phi_nodes)
    _emit(args, index_report_to_dict(report), index_report_text(report))
    return 0 if report.agreement else 1


def _cmd_chern(args) -> int:
    symbol = load_symbol(args.file)
    require_invertible(symbol)
    if isinstance(symbol, LaurentSymbol):
        ch = chern_s1(symbol, grid=args.grid)
    else:
        ch = chern_s3(symbol, theta_nodes=args.theta_nodes, phi_nodes=args.phi_nodes)
    doc = {
        "manifold": "S1" if isinstance(symbol, LaurentSymbol) else "S3",
        "rank": symbol.rank,
        "value": [ch.value.real, ch.value.imag],
        "refined": [ch.refined.real, ch.refined.imag],
        "rounded": ch.rounded,
        "doubling_defect": ch.doubling_defect,
        "integrality_defect": ch.integrality_defect,
        "resolution": list(ch.resolution),
    }
    text = (f"chern value         {ch.refined.real:+.12f} {ch.refined.imag:+.3e} i\n"
            f"rounded             {ch.rounded}\n"
            f"doubling defect     {ch.doubling_defect:.3e}\n"
            f"integrality defect  {ch.integrality_defect:.3e}\n")
    _emit(args, doc, text)
    return 0


def _cmd_winding(args) -> int:
    symbol = load_symbol(args.file)
    if not isinstance(symbol, LaurentSymbol):
        raise ParseError("winding is defined for circle symbols only; "
                         "this file holds a three-sphere symbol")
    scalar = symbol if symbol.rank == 1 else det_laurent(symbol)
    w_arg = winding_argument(scalar, grid=args.grid)
    w_roots = winding_roots(scalar)
    agreement = w_arg == w_roots
    doc = {
        "rank": symbol.rank,
        "via_determinant": symbol.rank > 1,
        "argument": w_arg,
        "roots": w_roots,
        "agreement": agreement,
    }
    text = (f"winding (argument)  {w_arg}\n"
            f"winding (roots)     {w_roots}\n"
            f"agreement           {'yes' if agreement else 'NO'}\n")
    _emit(args, doc, text)
    return 0 if agreement else 1


def _cmd_verify(args) -> int:
    report = run_verify(seed=args.seed, tol=args.tol, residual_tol=args.residual_tol)

    def render(doc, text, fmt):
        if fmt == "json":
            return verify_report_json(report)
        if fmt == "csv":
            return verify_report_csv(report)
        return text

    _emit(args, {}, verify_report_text(report), renderer=render)
    return 0 if report.all_passed else 1


def _cmd_convergence(args) -> int:
    symbol = load_symbol(args.file)
    rows = convergence_table(symbol, grid=args.grid,
                             theta_nodes=args.theta_nodes, phi_nodes=args.phi_nodes)

    def render(doc, text, fmt):
        if fmt == "json":
            return json.dumps(convergence_to_dict(rows), indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            return convergence_to_csv(rows)
        return text

    _emit(args, {}, convergence_text(rows), renderer=render)
    return 0 if final_delta(rows) < args.tol else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toeplitz-lab",
        description="Fredholm indices of Toeplitz operators on the Hardy spaces "
                    "of S1 and S3: analytic (stabilized truncation) and "
                    "topological (winding / odd Chern character) routes.")
    commands = parser.add_subparsers(dest="command", required=True)

    p_index = commands.add_parser(
        "index", help="both index routes for one symbol file, with agreement verdict")
    p_index.add_argument("file", help="symbol file (JSON)")
    _add_common(p_index, trunc=True, tols=True, grid=True, nodes=True)
    p_index.set_defaults(func=_cmd_index)

    p_chern = commands.add_parser(
        "chern", help="odd Chern character quadrature with refinement defects")
    p_chern.add_argument("file", help="symbol file (JSON)")
    _add_common(p_chern, grid=True, nodes=True)
    p_chern.set_defaults(func=_cmd_chern)

    p_wind = commands.add_parser(
        "winding", help="both winding oracles (argument tracking and root counting)")
    p_wind.add_argument("file", help="symbol file (JSON, circle symbols)")
    _add_common(p_wind, grid=True)
    p_wind.set_defaults(func=_cmd_winding)

    p_verify = commands.add_parser(
        "verify", help="seeded property suite tying the analytic and topological routes")
    _add_common(p_verify, tols=True, seed=True)
    p_verify.set_defaults(func=_cmd_verify)

    p_conv = commands.add_parser(
        "convergence", help="Chern quadrature along a doubling resolution ladder")
    p_conv.add_argument("file", help="symbol file (JSON)")
    _add_common(p_conv, grid=True, nodes=True)
    p_conv.add_argument("--tol", type=float, default=1e-6,
                        help="required final delta of the ladder (exit 1 above it)")
    p_conv.set_defaults(func=_cmd_convergence)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SymbolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def entry() -> None:
    sys.exit(main())
