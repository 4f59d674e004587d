"""Command-line entry point.

Exit codes: 0 success, 1 domain error, 2 resource limit, 3 usage error.
Machine output is JSON with exact integers and rationals written as strings.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import catalog
from .braid import DEFAULT_BUDGET, BraidWord, coloring_count, dominant_coloring_count
from .errors import EmptyQuandle, GroupTooLarge, InvalidTable, QuandleError, ResourceError
from .invariants import SUBQUANDLE_CAP, dim_q, exp_q, inn_group, pi0, subquandles
from .polyfit import fit_hilbert, genfunc, threshold
from .quandle import Quandle, dumps, load
from .series import dominant_series, graded_series
from .statistics import burnside_exact, covariance, moment, monte_carlo_mean

EXIT_OK, EXIT_DOMAIN, EXIT_RESOURCE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def resolve(path: str) -> Quandle:
    """A JSON file, or ``catalog:NAME`` for a built-in quandle."""
    if path.startswith("catalog:"):
        return catalog.builtin(path.split(":", 1)[1]).quandle
    try:
        return load(path)
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidTable(f"{path} is not valid JSON: {exc.msg}") from exc


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _cmd_validate(args, out):
    q = resolve(args.quandle)
    _emit({"valid": True, "name": q.name, "size": q.size}, out)


def _cmd_invariants(args, out):
    q = resolve(args.quandle)
    lattice = subquandles(q)
    try:
        inn = str(inn_group(q, cap=args.group_cap).order())
    except GroupTooLarge:
        inn = "cap-exceeded"
    try:
        exp = exp_q(q)
    except EmptyQuandle:
        exp = None
    _emit(
        {
            "pi0": pi0(q),
            "exp": exp,
            "dim": dim_q(q, lattice),
            "subquandles": [hex(m) for m in lattice],
            "inn_order": inn,
        },
        out,
    )


def _series(args, q):
    if args.dominant:
        return dominant_series(q, args.max_degree, budget=args.budget)
    return graded_series(q, args.max_degree, budget=args.budget)


def _cmd_series(args, out):
    s = _series(args, resolve(args.quandle))
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "value"])
        for n, v in enumerate(s.values):
            w.writerow([n, v])
        out.write(buf.getvalue())
    else:
        _emit(s.to_dict(), out)


def _fit(args, q):
    s = _series(args, q)
    expected = args.expected_degree
    if expected is None and not args.no_dim_check and q.size <= SUBQUANDLE_CAP:
        expected = (len(pi0(q)) if args.dominant else dim_q(q)) - 1
    poly, cert = fit_hilbert(s, expected, min_surplus=args.min_surplus)
    return s, poly, cert, genfunc(s, poly, cert.threshold)


def _cmd_hilbert(args, out):
    s, poly, cert, g = _fit(args, resolve(args.quandle))
    d = poly.to_dict()
    _emit(
        {
            "poly_binomial": d["binomial"],
            "poly_monomial_over_denominator": d["monomial_over_denominator"],
            "poly_text": poly.monomial_str(),
            "threshold": threshold(g),
            "certificate": cert.to_dict(),
            "truncated": s.truncated,
        },
        out,
    )


def _cmd_genfunc(args, out):
    _, _, _, g = _fit(args, resolve(args.quandle))
    _emit({**g.to_dict(), "text": str(g)}, out)


def _cmd_color(args, out):
    q = resolve(args.quandle)
    word = BraidWord.parse(args.word, args.strands)
    fn = dominant_coloring_count if args.dominant else coloring_count
    count = fn(q, word, budget=args.budget)
    if args.format == "json":
        _emit({"strands": args.strands, "word": str(word), "dominant": args.dominant, "count": str(count)}, out)
    else:
        out.write(f"{count}\n")


def _cmd_avg(args, out):
    q = resolve(args.quandle)
    if args.samples is None:
        _emit(burnside_exact(q, args.strands, cap=args.group_cap).to_dict(), out)
    else:
        est = monte_carlo_mean(q, args.strands, args.samples, args.walk, args.seed, budget=args.budget)
        _emit(est.to_dict(), out)


def _cmd_moments(args, out):
    q = resolve(args.quandle)
    n = args.strands
    if args.with_quandle:
        joint, cov = covariance(q, resolve(args.with_quandle), n, budget=args.budget)
        _emit({"strands": n, "joint_mean": str(joint), "covariance": str(cov)}, out)
        return
    values = {k: moment(q, n, k, budget=args.budget) for k in sorted({1, args.k})}
    result = {"strands": n, "k": args.k, "moment": str(values[args.k]), "mean": str(values[1])}
    if args.k >= 2:
        second = values[2] if 2 in values else moment(q, n, 2, budget=args.budget)
        result["variance"] = str(second - values[1] ** 2)
    _emit(result, out)


def _table_markdown(rows) -> str:
    lines = [
        "| size | Q | P_Q | P_Q^dom | eta_Q | dim | agrees with print |",
        "|---|---|---|---|---|---|---|",
    ]
    for row in rows:
        c = row.computed
        bad = [d.field for d in row.report if not d.matches]
        agree = "yes" if not bad else "no: " + ", ".join(bad)
        lines.append(
            f"| {row.entry.size} | {row.entry.name} | {c.poly.monomial_str()} | {c.poly_dom.monomial_str()} "
            f"| {c.eta} | {c.dim} | {agree} |"
        )
    notes = [d for row in rows for d in row.report if d.flagged or not d.matches]
    if notes:
        lines.append("")
        for d in notes:
            verdict = "confirmed" if d.matches else "differs"
            lines.append(f"- {d.name} {d.field}: printed {d.published}, computed {d.computed} ({verdict})")
    return "\n".join(lines) + "\n"


def _cmd_table(args, out):
    rows = catalog.reproduce_table(max_degree=args.max_degree)
    if args.format == "json":
        _emit(
            [
                {
                    "name": r.entry.name,
                    "size": r.entry.size,
                    "computed": r.computed.to_dict(),
                    "comparison": [d.to_dict() for d in r.report],
                }
                for r in rows
            ],
            out,
        )
    else:
        out.write(_table_markdown(rows))


def _cmd_enumerate(args, out):
    classes = catalog.enumerate_quandles(args.order)
    listing = []
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    for i, q in enumerate(classes):
        name = f"order{args.order}_{i}"
        match = catalog.identify(q)
        listing.append({"name": name, "matches": match, "table": q.rows()})
        if args.out:
            with open(os.path.join(args.out, f"{name}.json"), "w") as fh:
                fh.write(dumps(q.renamed(name)) + "\n")
    _emit({"order": args.order, "classes": len(classes), "quandles": listing}, out)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="state budget (packed tuples)")
    common.add_argument("--format", choices=["json", "csv", "md"], default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)

    parser = _Parser(prog="quandle-hilbert", description=__doc__.splitlines()[0], parents=[common])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("validate", _cmd_validate, "check the quandle axioms")
    p.add_argument("quandle")

    p = add("invariants", _cmd_invariants, "pi0, exp, dim, sub-quandles, |Inn|")
    p.add_argument("quandle")
    p.add_argument("--group-cap", type=int, default=10**6)

    for name, fn, text in (
        ("series", _cmd_series, "graded cardinalities"),
        ("hilbert", _cmd_hilbert, "certified Hilbert polynomial"),
        ("genfunc", _cmd_genfunc, "rational generating function"),
    ):
        p = add(name, fn, text)
        p.add_argument("quandle")
        p.add_argument("--max-degree", type=int, required=True)
        p.add_argument("--dominant", action="store_true")
        if name != "series":
            p.add_argument("--expected-degree", type=int, default=None)
            p.add_argument("--no-dim-check", action="store_true")
            p.add_argument("--min-surplus", type=int, default=3)

    p = add("color", _cmd_color, "colorings of a braid closure")
    p.add_argument("quandle")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--word", default="")
    p.add_argument("--dominant", action="store_true")

    p = add("avg", _cmd_avg, "expected coloring count")
    p.add_argument("quandle")
    p.add_argument("--strands", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--samples", type=int)
    p.add_argument("--walk", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--group-cap", type=int, default=10**6)

    p = add("moments", _cmd_moments, "moments and covariances via product quandles")
    p.add_argument("quandle")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--with", dest="with_quandle", default=None)

    p = add("table", _cmd_table, "reproduce the order <= 4 table")
    p.add_argument("--max-degree", type=int, default=None)

    p = add("enumerate", _cmd_enumerate, "all quandles of an order up to isomorphism")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--out", default=None)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    args.budget = getattr(args, "budget", DEFAULT_BUDGET)
    args.quiet = getattr(args, "quiet", False)
    args.format = getattr(args, "format", None)
    if args.format == "csv" and args.command != "series":
        err.write("quandle-hilbert: error: --format csv applies to series only\n")
        return EXIT_USAGE
    if args.format is None:
        args.format = "md" if args.command == "table" else ("text" if args.command == "color" else "json")
    try:
        args.func(args, out)
    except UsageError as exc:
        if not args.quiet:
            err.write(f"quandle-hilbert: error: {exc}\n")
        return EXIT_USAGE
    except ResourceError as exc:
        _emit(exc.to_dict(), out)
        return EXIT_RESOURCE
    except QuandleError as exc:
        _emit(exc.to_dict(), out)
        return EXIT_DOMAIN
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
