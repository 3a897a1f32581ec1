"""Command-line interface.

Exit codes: 0 success, 1 usage/parse/precondition error, 2 measure undefined
(UVAT on a clique), 3 size guard exceeded, 4 verification sweep found failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence, TextIO

from . import FORMAT_VERSION, __version__
from .biclique import PreconditionError, bcbs_decision, max_balanced_biclique
from .graph import GraphFormatError, co_bipartite_complement, parse_bipartite, parse_edge_list
from .measures import (
    MeasureError,
    SizeGuardError,
    UndefinedMeasureError,
    greedy_uvat,
    uvat_exact,
    vat_exact,
)
from .reduction import ExtractionError, SolverContractError, approx_bcbs_via_uvat, plant_biclique_instance
from .sweep import MODES, all_reducible_bipartite, random_bipartite_population, run_sweep

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNDEFINED = 2
EXIT_SIZE_GUARD = 3
EXIT_FAILURES = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit 2, which is reserved
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _emit(record: dict, fmt: str, out: TextIO) -> None:
    if fmt == "json":
        out.write(json.dumps(record, sort_keys=True) + "\n")
        return
    for key in sorted(record):
        value = record[key]
        if isinstance(value, dict) and set(value) == {"num", "den"}:
            value = f"{value['num']}/{value['den']}"
        out.write(f"{key}: {value}\n")


def cmd_compute(args: argparse.Namespace, out: TextIO) -> int:
    g = parse_edge_list(_read(args.input))
    if args.measure == "vat":
        if args.solver != "exact":
            raise UsageError("VAT only has the exact solver")
        result = vat_exact(g, allow_large=args.allow_large)
    elif args.solver == "greedy":
        result = greedy_uvat(g)
    else:
        result = uvat_exact(g, allow_large=args.allow_large)
    _emit(result.to_dict(), args.format, out)
    return EXIT_OK


def cmd_complement(args: argparse.Namespace, out: TextIO) -> int:
    b = parse_bipartite(_read(args.input))
    try:
        gbar, _ = co_bipartite_complement(b)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    n = b.n1
    out.write(f"# co-bipartite complement: V1 = 0..{n - 1}, V2 = {n}..{2 * n - 1}\n")
    out.write(gbar.to_text())
    return EXIT_OK


def cmd_biclique(args: argparse.Namespace, out: TextIO) -> int:
    b = parse_bipartite(_read(args.input))
    if args.k is not None:
        w = bcbs_decision(b, args.k, allow_large=args.allow_large)
        record = {"k": args.k, "exists": w is not None, "witness": None if w is None else w.to_dict()}
    else:
        k, w = max_balanced_biclique(b, allow_large=args.allow_large)
        record = {"k": k, "witness": None if w is None else w.to_dict()}
    _emit(record, args.format, out)
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace, out: TextIO) -> int:
    b = parse_bipartite(_read(args.input))
    solver = uvat_exact if args.solver == "exact" else greedy_uvat
    alpha = args.alpha
    if alpha is None and args.solver == "exact":
        alpha = Fraction(1)
    report = approx_bcbs_via_uvat(b, solver, alpha, exact=not args.skip_exact)
    _emit(report.to_dict(), args.format, out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    if args.exhaustive:
        population = list(all_reducible_bipartite(args.n))
    else:
        if args.seed is None:
            raise UsageError("random sweeps need an explicit --seed")
        population = random_bipartite_population([args.n], args.trials, args.seed)
    summary = run_sweep(args.mode, population, workers=args.workers)
    if args.jsonl:
        for rec in summary.records:
            out.write(json.dumps(rec, sort_keys=True) + "\n")
    _emit(summary.to_dict(), args.format, out)
    return EXIT_OK if summary.failed == 0 else EXIT_FAILURES


def cmd_gen(args: argparse.Namespace, out: TextIO) -> int:
    b = plant_biclique_instance(args.n, args.k, args.p, args.seed)
    out.write(f"# planted n={args.n} k={args.k} p={args.p} seed={args.seed}\n")
    out.write(b.to_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vattool", description="Exact VAT/UVAT, balanced bicliques and their reduction.")
    parser.add_argument(
        "--version", action="version", version=f"vattool {__version__} (format {FORMAT_VERSION})"
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser, with_input: bool = True) -> None:
        if with_input:
            p.add_argument("input", nargs="?", help="input file ('-' or omitted: stdin)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--allow-large", action="store_true", help="lift the exact-solver size guard")

    p = sub.add_parser("compute", help="compute VAT or UVAT of an edge-list graph")
    common(p)
    p.add_argument("--measure", choices=("vat", "uvat"), required=True)
    p.add_argument("--solver", choices=("exact", "greedy"), default="exact")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("complement", help="co-bipartite complement of a bipartite file")
    common(p)
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("biclique", help="maximum balanced biclique or k x k decision")
    common(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--max", action="store_true", help="maximum balanced biclique (default)")
    group.add_argument("--k", type=int, help="decide whether a k x k biclique exists")
    p.set_defaults(func=cmd_biclique)

    p = sub.add_parser("reduce", help="estimate MAX-BCBS through a UVAT solver on the complement")
    common(p)
    p.add_argument("--solver", choices=("exact", "greedy"), default="exact")
    p.add_argument("--alpha", type=_fraction, help="solver approximation factor (omit if unknown)")
    p.add_argument("--skip-exact", action="store_true", help="do not compute the exact k for comparison")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="sweep a reduction check over an instance population")
    common(p, with_input=False)
    p.add_argument("--mode", choices=MODES, required=True)
    p.add_argument("--n", type=int, required=True, help="side size")
    p.add_argument("--exhaustive", action="store_true", help="all bipartite graphs on n + n vertices")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--jsonl", action="store_true", help="stream one record per instance before the summary")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a planted-biclique bipartite instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=float, default=0.0)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UndefinedMeasureError as exc:
        print(f"vattool: measure undefined: {exc}", file=sys.stderr)
        return EXIT_UNDEFINED
    except SizeGuardError as exc:
        print(f"vattool: size guard: {exc}", file=sys.stderr)
        return EXIT_SIZE_GUARD
    except (GraphFormatError, UsageError, PreconditionError, MeasureError, ExtractionError) as exc:
        print(f"vattool: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverContractError as exc:
        print(f"vattool: solver contract violated: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
