"""Property checks run by ``greenrec verify``: solver vs oracle, residuals, Green's columns."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import numerics
from .greens import ADVANCED, CC, KINDS, RATIO, RECURSION, RETARDED, greens_table
from .oracle import compare_windows, greens_residual, oracle_solve, random_spec, residual_window
from .recurrence import canonical_set
from .solver import SolveRequest, solve_constant_coeff, solve_full

MAX_SOURCES = 7


@dataclass(frozen=True)
class CheckResult:
    case: str
    check: str
    passed: bool
    detail: str = ""


def _sources(lo, hi):
    """Up to MAX_SOURCES evenly spaced source indices in [lo, hi]."""
    cands = list(range(lo, hi + 1))
    if len(cands) <= MAX_SOURCES:
        return cands
    step = (len(cands) - 1) / (MAX_SOURCES - 1)
    return sorted({cands[round(k * step)] for k in range(MAX_SOURCES)})


def _mismatch(report, a_name, a, b_name, b):
    n = report.first_mismatch
    return (f"n={n} {a_name}={numerics.render_scalar(a[n])} "
            f"{b_name}={numerics.render_scalar(b[n])}")


def check_problem(label, spec, forcing, initial, lo, hi):
    """Run every check on one problem; returns a list of :class:`CheckResult`."""
    results = []
    d = spec.order
    request = SolveRequest(spec, forcing, tuple(initial), lo, hi)
    solved = solve_full(request)
    oracle = oracle_solve(spec, request.initial, forcing, lo, hi)
    rep = compare_windows(solved.full, oracle)
    results.append(CheckResult(label, "oracle_equivalence", rep.passed,
                               "" if rep.passed else _mismatch(rep, "solver", solved.full, "oracle", oracle)))
    if hi - lo >= d:
        rep = residual_window(spec, solved.full, forcing)
        results.append(CheckResult(label, "solution_residual", rep.passed,
                                   "" if rep.passed else f"nonzero residual at n={rep.first_mismatch}"))
    if spec.constant is not None:
        fast = solve_constant_coeff(request)
        rep = compare_windows(fast.full, solved.full)
        results.append(CheckResult(label, "constant_coeff_equivalence", rep.passed,
                                   "" if rep.passed else _mismatch(rep, "closed_form", fast.full, "solver", solved.full)))

    # every column and residual stays inside [lo, hi], where the equation was validated
    strategies = [RATIO, RECURSION] + ([CC] if spec.constant is not None else [])
    fset = canonical_set(spec, lo, hi)
    spans = {RETARDED: ((lo + d - 1, hi), (lo + d, hi)),
             ADVANCED: ((lo, hi - d), (lo, hi - d))}
    for kind in KINDS:
        (m_lo, m_hi), (res_lo, res_hi) = spans[kind]
        failures = []
        for m in _sources(m_lo, m_hi):
            tables = {s: greens_table(spec, kind, m, lo, hi, s, fset) for s in strategies}
            for s, table in tables.items():
                rep = greens_residual(spec, table, res_lo, res_hi)
                if not rep.passed:
                    failures.append(f"{s} m={m} n={rep.first_mismatch}")
            base = tables[RECURSION].entries
            for s, table in tables.items():
                rep = compare_windows(table.entries, base)
                if not rep.passed:
                    failures.append(f"{s}!=recursion m={m} n={rep.first_mismatch}")
        results.append(CheckResult(label, f"greens_{kind}", not failures, "; ".join(failures[:3])))
    return results


def check_random(seed, d, lo, hi):
    case = random_spec(seed, d)
    label = f"random seed={seed}"
    try:
        return check_problem(label, case.spec(), case.forcing, case.initial, lo, hi)
    except Exception as exc:  # surfaced as a failed check, not a crash
        return [CheckResult(label, "exception", False, f"{type(exc).__name__}: {exc}")]


def run_suite(doc, seed=0, cases=20, jobs=1):
    """Checks for the document's own problem followed by ``cases`` random problems.

    Random problems share the document's order and range.  Everything runs
    in exact mode.  Result order is deterministic regardless of ``jobs``.
    """
    spec = doc.spec(mode=numerics.EXACT)
    results = check_problem("file", spec, doc.forcing_expr(), doc.initial_values(), doc.lo, doc.hi)
    seeds = [seed + k for k in range(cases)]
    n = len(seeds)
    args = (seeds, [doc.order] * n, [doc.lo] * n, [doc.hi] * n)
    if jobs > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            batches = list(pool.map(check_random, *args))
    else:
        batches = list(map(check_random, *args))
    for batch in batches:
        results.extend(batch)
    return results


def describe_counterexample(result, order):
    """One or two lines naming the failed check and, for random cases, the problem."""
    text = f"counterexample: case={result.case} check={result.check} {result.detail}".rstrip()
    if result.case.startswith("random seed="):
        seed = int(result.case.split("=", 1)[1])
        text += f"\nproblem: {random_spec(seed, order).describe()}"
    return text
