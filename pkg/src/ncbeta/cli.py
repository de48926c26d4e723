"""Command-line interface: evaluate, invert, batch, selftest.

Exit codes: 0 success, 2 usage or I/O error, 3 evaluation failure,
4 infeasible inversion target.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

from .asymptotic import eval_erfc_uniform, eval_large_z, eval_saddle
from .dispatch import evaluate, explain
from .errors import DomainError, EvaluationError
from .inversion import InversionProblem, invert
from .kummer_series import eval_kummer_series
from .params import EvalPoint, ProbabilityPair, ShapeParams
from .series import eval_series

BATCH_HEADER = ["p", "q", "x", "y", "value", "complement", "method", "err_est"]


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _eval_with_method(sp, pt, method: str, tol: float, terms: int) -> ProbabilityPair:
    if method == "auto":
        return evaluate(sp, pt, tol=tol)
    if method == "series":
        return eval_series(sp, pt, tol=max(tol, 1e-15))
    if method == "kummer":
        return eval_kummer_series(sp, pt)
    if method == "large-z":
        return eval_large_z(sp, pt, n_terms=terms if terms > 0 else 5)
    if method == "saddle":
        return eval_saddle(sp, pt, k_terms=min(terms, 2) if terms > 0 else 2)
    return eval_erfc_uniform(sp, pt, k_terms=min(terms, 2) if terms > 0 else 2)


def cmd_eval(args) -> int:
    try:
        sp, pt = ShapeParams(args.p, args.q), EvalPoint(args.x, args.y)
        if args.method == "explain":
            choice = explain(sp, pt)
            print(f"{choice.route} {choice.primary_target} {choice.rationale}")
            return 0
        pair = _eval_with_method(sp, pt, args.method, args.tol, args.terms)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EvaluationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    value = pair.bbar if args.complement else pair.b
    print(f"{_fmt(value)} {pair.method} {pair.err_est:.3g}")
    return 0


def cmd_invert(args) -> int:
    try:
        sp = ShapeParams(args.p, args.q)
        fixed = args.y if args.unknown == "x" else args.x
        if fixed is None:
            print(f"error: --{'y' if args.unknown == 'x' else 'x'} is required", file=sys.stderr)
            return 2
        problem = InversionProblem(unknown=args.unknown, sp=sp, fixed=fixed, z=args.z, tol=args.tol)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        result = invert(problem)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except EvaluationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(f"{_fmt(result.value)} {result.iterations} {result.residual:.3g}")
    return 0


def _batch_field(row, key):
    v = row.get(key, "")
    if v is None or str(v).strip() == "":
        return math.nan
    return float(v)


def cmd_batch(args) -> int:
    try:
        fin = open(args.infile, newline="")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    with fin:
        sample = fin.read(512)
        fin.seek(0)
        has_header = any(ch.isalpha() for ch in sample.split("\n", 1)[0])
        if has_header:
            reader = csv.DictReader(fin)
        else:
            reader = csv.DictReader(fin, fieldnames=["p", "q", "x", "y", "z"])
        rows = list(reader)
    out_rows = []
    for row in rows:
        out_rows.append(_batch_row(row, args.op, args.tol))
    try:
        fout = open(args.outfile, "w", newline="")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    with fout:
        writer = csv.writer(fout)
        writer.writerow(BATCH_HEADER)
        writer.writerows(out_rows)
    return 0


def _batch_row(row, op: str, tol: float):
    try:
        p = _batch_field(row, "p")
        q = _batch_field(row, "q")
        x = _batch_field(row, "x")
        y = _batch_field(row, "y")
        z = _batch_field(row, "z")
        sp = ShapeParams(p, q)
        if op == "eval":
            pair = evaluate(sp, EvalPoint(x, y), tol=tol)
            return [p, q, x, y, _fmt(pair.b), _fmt(pair.bbar), pair.method, f"{pair.err_est:.3g}"]
        if op == "invert-x":
            res = invert(InversionProblem(unknown="x", sp=sp, fixed=y, z=z, tol=tol))
            return [p, q, _fmt(res.value), y, _fmt(z), _fmt(1.0 - z), res.seed_path, f"{res.residual:.3g}"]
        if op == "invert-y":
            res = invert(InversionProblem(unknown="y", sp=sp, fixed=x, z=z, tol=tol))
            return [p, q, x, _fmt(res.value), _fmt(z), _fmt(1.0 - z), res.seed_path, f"{res.residual:.3g}"]
        raise DomainError(f"unknown batch op {op!r}")
    except (DomainError, EvaluationError, ValueError) as exc:
        msg = str(exc).replace(",", ";").replace("\n", " ")
        return [row.get("p", ""), row.get("q", ""), row.get("x", ""), row.get("y", ""), "", "", f"error: {msg}", ""]


def cmd_selftest(args) -> int:
    from .selftest import run_suite

    try:
        results = run_suite(args.suite)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    failed = 0
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        line = f"{tag} {res.name}"
        if res.detail:
            line += f" :: {res.detail}"
        print(line)
        if not res.passed:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncbeta",
        description="Noncentral beta and noncentral F cumulative distributions: "
        "evaluation and inversion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate the CDF and its complement at a point")
    pe.add_argument("--p", type=float, required=True, help="first shape parameter (> 0)")
    pe.add_argument("--q", type=float, required=True, help="second shape parameter (> 0)")
    pe.add_argument("--x", type=float, required=True, help="noncentrality (>= 0)")
    pe.add_argument("--y", type=float, required=True, help="quantile in [0, 1]")
    pe.add_argument("--tol", type=float, default=1e-12, help="target relative accuracy")
    pe.add_argument(
        "--method",
        choices=["auto", "series", "kummer", "large-z", "saddle", "erfc", "explain"],
        default="auto",
        help="evaluation route (auto dispatches; explain prints the choice)",
    )
    pe.add_argument("--terms", type=int, default=0, help="expansion terms for the asymptotic routes")
    pe.add_argument("--complement", action="store_true", help="print the complement instead")
    pe.set_defaults(func=cmd_eval)

    pi = sub.add_parser("invert", help="solve B(x, y) = z for x or y")
    pi.add_argument("--unknown", choices=["x", "y"], required=True)
    pi.add_argument("--p", type=float, required=True)
    pi.add_argument("--q", type=float, required=True)
    pi.add_argument("--x", type=float, default=None, help="fixed noncentrality (when solving for y)")
    pi.add_argument("--y", type=float, default=None, help="fixed quantile (when solving for x)")
    pi.add_argument("--z", type=float, required=True, help="target probability in (0, 1)")
    pi.add_argument("--tol", type=float, default=1e-10)
    pi.set_defaults(func=cmd_invert)

    pb = sub.add_parser("batch", help="process a CSV of rows independently")
    pb.add_argument("--in", dest="infile", required=True, help="input CSV (p,q,x,y[,z])")
    pb.add_argument("--out", dest="outfile", required=True, help="output CSV")
    pb.add_argument("--op", choices=["eval", "invert-x", "invert-y"], default="eval")
    pb.add_argument("--tol", type=float, default=1e-12)
    pb.set_defaults(func=cmd_batch)

    ps = sub.add_parser("selftest", help="run the built-in verification suites")
    ps.add_argument("--suite", choices=["tables", "invariants", "all"], default="all")
    ps.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
