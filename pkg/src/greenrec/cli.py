"""Command-line front end.

    greenrec solve  PROBLEM.json
    greenrec green  PROBLEM.json --kind retarded --m 2 [--strategy ratio|recursion|cc]
    greenrec basis  PROBLEM.json --i 0
    greenrec verify PROBLEM.json [--seed 0] [--cases 20] [--jobs 1]

Tables go to stdout as TSV with a header row (``--format json`` gives an
array of row objects).  Exit status: 0 success, 1 a failed residual or
verification check, 2 bad input or a recurrence invalid on the range.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import numerics
from .errors import GreenRecError
from .greens import CC, KINDS, RECURSION, STRATEGIES, greens_table
from .problem import ProblemDocument
from .recurrence import canonical_basis, canonical_set, validate_spec
from .solver import SolveRequest, solve_full
from .verify import describe_counterexample, run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


class InputError(GreenRecError):
    pass


def _emit(out, header, rows, fmt):
    if fmt == "json":
        objs = [dict(zip(header, row)) for row in rows]
        out.write(json.dumps(objs, indent=1) + "\n")
        return
    out.write("\t".join(header) + "\n")
    for row in rows:
        out.write("\t".join(str(v) for v in row) + "\n")


def _render(values):
    return [numerics.render_scalar(v) for v in values]


def _require_valid(spec, lo, hi):
    report = validate_spec(spec, lo, hi)
    if not report.ok:
        raise InputError(f"recurrence invalid on [{lo}, {hi}]: {report.summary()}")


def cmd_solve(args, out):
    doc = ProblemDocument.load(args.problem)
    doc.check_solve_range()
    spec = doc.spec()
    _require_valid(spec, doc.lo, doc.hi)
    result = solve_full(SolveRequest(spec, doc.forcing_expr(), doc.initial_values(), doc.lo, doc.hi))
    rows = [[n, *_render((f, c, p))] for n, f, c, p in zip(
        result.full.indices(), result.full.values,
        result.complementary.values, result.particular.values)]
    _emit(out, ["n", "f", "C", "P"], rows, args.format)
    if not result.ok:
        bad = [n for n, v in result.residual.items() if v != 0]
        print(f"residual check failed at n={bad[0] if bad else '?'}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_green(args, out):
    doc = ProblemDocument.load(args.problem)
    spec = doc.spec()
    if args.strategy == CC and spec.constant is None:
        raise InputError("strategy cc needs constant_coefficients in the problem file")
    d, m = doc.order, args.m
    # the columns and determinant rows touch [m-d+1, m+d] beyond the printed range
    lo, hi = min(doc.lo, m - d + 1, 0), max(doc.hi, m + d, d - 1)
    _require_valid(spec, lo, hi)
    fset = canonical_set(spec, lo, hi) if args.strategy == "ratio" else None
    table = greens_table(spec, args.kind, m, doc.lo, doc.hi, args.strategy, fset)
    rows = [[n, numerics.render_scalar(v)] for n, v in table.entries.items()]
    _emit(out, ["n", "G"], rows, args.format)
    return EXIT_OK


def cmd_basis(args, out):
    doc = ProblemDocument.load(args.problem)
    spec = doc.spec()
    d = doc.order
    if not 0 <= args.i < d:
        raise InputError(f"--i must lie in [0, {d - 1}]")
    lo, hi = min(doc.lo, 0), max(doc.hi, d - 1)
    _require_valid(spec, lo, hi)
    window = canonical_basis(spec, args.i, lo, hi).restrict(doc.lo, doc.hi)
    rows = [[n, numerics.render_scalar(v)] for n, v in window.items()]
    _emit(out, ["n", f"B{args.i}"], rows, args.format)
    return EXIT_OK


def cmd_verify(args, out):
    doc = ProblemDocument.load(args.problem)
    doc.check_solve_range()
    _require_valid(doc.spec(mode=numerics.EXACT), doc.lo, doc.hi)
    if args.cases < 0:
        raise InputError("--cases must be non-negative")
    results = run_suite(doc, seed=args.seed, cases=args.cases, jobs=args.jobs)
    rows = [[r.case, r.check, "pass" if r.passed else "FAIL", r.detail] for r in results]
    _emit(out, ["case", "check", "status", "detail"], rows, args.format)
    failed = [r for r in results if not r.passed]
    if failed:
        out.write(describe_counterexample(failed[0], doc.order) + "\n")
        return EXIT_FAILED
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="greenrec",
        description="Solve inhomogeneous linear difference equations with Green's functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("problem", help="problem file (JSON)")
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.set_defaults(func=func)
        return p

    add("solve", cmd_solve, "print f(n), C(n), P(n) over the problem range")
    p = add("green", cmd_green, "print one Green's function column G(n, m)")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--strategy", choices=STRATEGIES, default=RECURSION)
    p = add("basis", cmd_basis, "print a canonical basis solution B_i(n)")
    p.add_argument("--i", type=int, required=True)
    p = add("verify", cmd_verify, "run oracle-equivalence and residual checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=20)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for random cases")
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except GreenRecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
