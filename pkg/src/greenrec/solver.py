"""Complementary, particular and full solutions of the inhomogeneous equation.

With initial values f(k) = alpha_k for k = 0..d-1 the solution splits as
f = C + P, where C = sum_i alpha_i B_i carries the initial values and the
particular part P vanishes on [0, d-1].  Above that block P is a sum over
retarded Green's functions, below it a sum over advanced ones::

    P(n) = sum_{m=d}^{n}  G_r(n, m) r(m)        n >= d
    P(n) = sum_{m=n}^{-1} G_a(n, m) r(m + d)    n < 0
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

from . import numerics
from .errors import EvaluationError, InvalidSpecError, PreconditionError
from .exprlang import Expression
from .greens import (
    ADVANCED,
    RECURSION,
    RETARDED,
    GreensCache,
    green_weights,
)
from .recurrence import (
    FundamentalSet,
    RecurrenceSpec,
    SequenceWindow,
    canonical_basis,
    canonical_set,
    validate_spec,
)

Forcing = Union[str, Expression, Callable[[int], object]]

INCREMENTAL = "incremental"
SUMS = "sums"

FLOAT_RESIDUAL_RTOL = 1e-9


def as_forcing(forcing: Forcing) -> Callable[[int], object]:
    if isinstance(forcing, str):
        return Expression(forcing)
    if not callable(forcing):
        raise PreconditionError(f"forcing {forcing!r} is not callable")
    return forcing


class _ForcingValues:
    """Memoised forcing values, coerced to the spec's mode."""

    def __init__(self, forcing, mode):
        self.fn = as_forcing(forcing)
        self.mode = mode
        self.cache = {}

    def __call__(self, n):
        v = self.cache.get(n)
        if v is None:
            try:
                v = numerics.coerce(self.fn(n), self.mode)
            except ZeroDivisionError as exc:
                raise EvaluationError(f"forcing failed: {exc}", n) from exc
            self.cache[n] = v
        return v


@dataclass(frozen=True)
class SolveRequest:
    spec: RecurrenceSpec
    forcing: Forcing
    initial: tuple
    lo: int
    hi: int

    def __post_init__(self):
        d = self.spec.order
        initial = tuple(numerics.coerce(a, self.spec.mode) for a in self.initial)
        object.__setattr__(self, "initial", initial)
        if len(initial) != d:
            raise PreconditionError(f"expected {d} initial values, got {len(initial)}")
        if not (self.lo <= 0 and d - 1 <= self.hi):
            raise PreconditionError(
                f"range [{self.lo}, {self.hi}] must contain the initial block [0, {d - 1}]")


@dataclass(frozen=True)
class SolveResult:
    full: SequenceWindow
    complementary: SequenceWindow
    particular: SequenceWindow
    residual: Optional[SequenceWindow]  # None when the range holds no complete equation
    mode: str = numerics.EXACT

    @property
    def ok(self) -> bool:
        """True when the solution satisfies the equation on its range.

        Exact mode demands zero residuals; float mode allows a relative
        error of ``FLOAT_RESIDUAL_RTOL`` against the size of the solution.
        """
        if self.residual is None:
            return True
        if self.mode == numerics.EXACT:
            return all(v == 0 for v in self.residual.values)
        scale = max(1.0, max(abs(v) for v in self.full.values))
        return all(abs(v) <= FLOAT_RESIDUAL_RTOL * scale for v in self.residual.values)


def complementary(spec: RecurrenceSpec, initial: Sequence, n: int,
                  basis: Optional[FundamentalSet] = None):
    """C(n) = sum_i alpha_i B_i(n)."""
    d = spec.order
    if len(initial) != d:
        raise PreconditionError(f"expected {d} initial values, got {len(initial)}")
    if basis is None or not basis.canonical or not basis.lo <= n <= basis.hi:
        basis = canonical_set(spec, min(n, 0), max(n, d - 1))
    row = basis.row(n)
    total = numerics.zero(spec.mode)
    for a, b in zip(initial, row):
        total += numerics.coerce(a, spec.mode) * b
    return total


def particular_retarded(spec: RecurrenceSpec, fset: FundamentalSet, forcing: Forcing, n: int):
    """sum_{m=d}^{n} G_r(n, m) r(m), with G_r from determinant ratios over ``fset``."""
    d = spec.order
    if n < d - 1:
        raise PreconditionError(f"retarded particular sum needs n >= {d}, got {n}")
    r = _ForcingValues(forcing, spec.mode)
    total = numerics.zero(spec.mode)
    row = fset.row(n)
    for m in range(d, n + 1):
        w = green_weights(spec, fset, RETARDED, m)
        total += sum(wi * f for wi, f in zip(w, row)) * r(m)
    return total


def particular_advanced(spec: RecurrenceSpec, fset: FundamentalSet, forcing: Forcing, n: int):
    """sum_{m=n}^{-1} G_a(n, m) r(m+d), with G_a from determinant ratios over ``fset``."""
    d = spec.order
    if n > 0:
        raise PreconditionError(f"advanced particular sum needs n < 0, got {n}")
    r = _ForcingValues(forcing, spec.mode)
    total = numerics.zero(spec.mode)
    row = fset.row(n)
    for m in range(n, 0):
        w = green_weights(spec, fset, ADVANCED, m)
        total += sum(wi * f for wi, f in zip(w, row)) * r(m + d)
    return total


def _check_valid(spec, lo, hi):
    report = validate_spec(spec, lo, hi)
    if not report.ok:
        raise InvalidSpecError(report)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _particular_incremental(spec, fset, r, lo, hi):
    # G(n, m) = sum_i w_i(m) F_i(n) on the support, so each zone's sum
    # factors into F(n) . (running sum over m of w(m) r(.))
    d = spec.order
    zero = numerics.zero(spec.mode)
    values = {n: zero for n in range(max(lo, 0), min(hi, d - 1) + 1)}
    acc = [zero] * d
    for n in range(d, hi + 1):
        w = green_weights(spec, fset, RETARDED, n)
        rn = r(n)
        acc = [a + wi * rn for a, wi in zip(acc, w)]
        values[n] = _dot(acc, fset.row(n))
    acc = [zero] * d
    for n in range(-1, lo - 1, -1):
        w = green_weights(spec, fset, ADVANCED, n)
        rn = r(n + d)
        acc = [a + wi * rn for a, wi in zip(acc, w)]
        values[n] = _dot(acc, fset.row(n))
    return [values[n] for n in range(lo, hi + 1)]


def _particular_sums(spec, r, lo, hi, strategy, fset, cache):
    d = spec.order
    zero = numerics.zero(spec.mode)
    ret = {m: cache.get(spec, RETARDED, m, m, hi, strategy, fset) for m in range(d, hi + 1)}
    adv = {m: cache.get(spec, ADVANCED, m, lo, m, strategy, fset) for m in range(lo, 0)}
    out = []
    for n in range(lo, hi + 1):
        total = zero
        if n >= d:
            for m in range(d, n + 1):
                total += ret[m][n] * r(m)
        elif n < 0:
            for m in range(n, 0):
                total += adv[m][n] * r(m + d)
        out.append(total)
    return out


def _residuals(spec, full, r):
    d = spec.order
    lo, hi = full.lo + d, full.hi
    if lo > hi:
        return None
    vals = []
    for n in range(lo, hi + 1):
        c = spec.coefficients_at(n)
        vals.append(sum(c[i] * full[n - i] for i in range(d + 1)) - r(n))
    return SequenceWindow(lo, tuple(vals))


def _assemble(spec, request, fset, r, particular):
    lo, hi = request.lo, request.hi
    comp = [_dot(request.initial, fset.row(n)) for n in range(lo, hi + 1)]
    full = SequenceWindow(lo, tuple(c + p for c, p in zip(comp, particular)))
    return SolveResult(
        full=full,
        complementary=SequenceWindow(lo, tuple(comp)),
        particular=SequenceWindow(lo, tuple(particular)),
        residual=_residuals(spec, full, r),
        mode=spec.mode,
    )


def solve_full(request: SolveRequest, method: str = INCREMENTAL, strategy: str = RECURSION,
               cache: Optional[GreensCache] = None) -> SolveResult:
    """Full solution on ``[request.lo, request.hi]``.

    ``method="incremental"`` (default) evaluates the Green's sums through
    running sums of determinant-ratio weights, O(range * d^4).
    ``method="sums"`` evaluates the sums term by term from Green's columns
    built with ``strategy`` and kept in ``cache``.  Both give identical
    values in exact mode.
    """
    spec = request.spec
    lo, hi = request.lo, request.hi
    _check_valid(spec, lo, hi)
    fset = canonical_set(spec, lo, hi)
    r = _ForcingValues(request.forcing, spec.mode)
    if method == INCREMENTAL:
        particular = _particular_incremental(spec, fset, r, lo, hi)
    elif method == SUMS:
        particular = _particular_sums(
            spec, r, lo, hi, strategy, fset, cache if cache is not None else GreensCache())
    else:
        raise PreconditionError(f"unknown method {method!r}")
    return _assemble(spec, request, fset, r, particular)


def solve_constant_coeff(request: SolveRequest) -> SolveResult:
    """Full solution of a constant-coefficient equation via closed-form Green's functions.

    With B = B_{d-1}::

        P(n) =  sum_{i=0}^{n-d} r(n-i) B(d-1+i)       n >= d
        P(n) = -sum_{i=1}^{-n}  r(n+d+i-1) B(-i)      n < 0
    """
    spec = request.spec
    if spec.constant is None:
        raise PreconditionError("solve_constant_coeff needs a spec declared constant-coefficient")
    lo, hi = request.lo, request.hi
    _check_valid(spec, lo, hi)
    d = spec.order
    fset = canonical_set(spec, lo, hi)
    top = fset[d - 1]
    r = _ForcingValues(request.forcing, spec.mode)
    zero = numerics.zero(spec.mode)
    particular = []
    for n in range(lo, hi + 1):
        total = zero
        if n >= d:
            for i in range(n - d + 1):
                total += r(n - i) * top[d - 1 + i]
        elif n < 0:
            for i in range(1, -n + 1):
                total -= r(n + d + i - 1) * top[-i]
        particular.append(total)
    return _assemble(spec, request, fset, r, particular)


__all__ = [
    "INCREMENTAL", "SUMS", "SolveRequest", "SolveResult", "as_forcing",
    "complementary", "particular_advanced",
    "particular_retarded", "solve_constant_coeff", "solve_full",
]
