"""Linear difference equations with variable coefficients.

The equation of order ``d`` is

    c_0(n) f(n) + c_1(n) f(n-1) + ... + c_d(n) f(n-d) = r(n)

for integer ``n`` of either sign.  This module holds the equation
(:class:`RecurrenceSpec`), dense integer-indexed value blocks
(:class:`SequenceWindow`) and the homogeneous solutions built from them by
stepping the equation forwards (solve for f(n)) and backwards (solve for
f(n-d)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import numerics
from .errors import (
    DependenceError,
    DomainError,
    GreenRecError,
    PreconditionError,
    SingularCoefficientError,
    WindowIndexError,
)
from .exprlang import Expression


class RecurrenceSpec:
    """The coefficient functions c_0..c_d of a difference equation.

    ``coefficients`` holds ``d + 1`` providers; each is either an expression
    string, an :class:`~greenrec.exprlang.Expression`, or any callable
    ``n -> Scalar``.  ``constant`` optionally declares the equation to be of
    the constant-coefficient form ``f(n) - sum_l a_{d-l} f(n-l) = r(n)`` with
    ``constant = (a_0, ..., a_{d-1})``; the declaration is checked against the
    coefficients by :func:`validate_spec`, never inferred.

    Coefficient values are memoised per ``n``; the memo is only ever filled
    with ``dict.setdefault`` so concurrent readers see one consistent value.
    """

    def __init__(self, coefficients: Sequence, *, constant: Optional[Sequence] = None,
                 mode: str = numerics.EXACT):
        if len(coefficients) < 3:
            raise PreconditionError(
                f"order must be at least 2 (need >= 3 coefficients, got {len(coefficients)})"
            )
        if mode not in numerics.MODES:
            raise PreconditionError(f"unknown mode {mode!r}")
        providers = []
        for c in coefficients:
            if isinstance(c, str):
                c = Expression(c)
            if not callable(c):
                raise PreconditionError(f"coefficient {c!r} is not callable")
            providers.append(c)
        self._providers = tuple(providers)
        self.order = len(providers) - 1
        self.mode = mode
        if constant is not None:
            constant = tuple(numerics.coerce(a, numerics.EXACT) for a in constant)
            if len(constant) != self.order:
                raise PreconditionError(
                    f"expected {self.order} constant coefficients, got {len(constant)}"
                )
        self.constant = constant
        self._memo = {}

    @classmethod
    def constant_form(cls, a: Sequence, mode: str = numerics.EXACT) -> "RecurrenceSpec":
        """Build ``f(n) - a_{d-1} f(n-1) - ... - a_0 f(n-d) = r(n)``."""
        a = [numerics.coerce(x, numerics.EXACT) for x in a]
        d = len(a)
        coeffs = [_const(numerics.ONE)] + [_const(-a[d - l]) for l in range(1, d + 1)]
        return cls(coeffs, constant=a, mode=mode)

    @property
    def coefficient_texts(self):
        return [getattr(p, "text", None) for p in self._providers]

    def coefficients_at(self, n: int) -> tuple:
        """Return ``(c_0(n), ..., c_d(n))`` in this spec's mode."""
        vals = self._memo.get(n)
        if vals is None:
            mode = self.mode
            vals = tuple(numerics.coerce(p(n), mode) for p in self._providers)
            vals = self._memo.setdefault(n, vals)
        return vals

    def coefficient(self, i: int, n: int):
        return self.coefficients_at(n)[i]

    def __repr__(self):
        texts = self.coefficient_texts
        shown = texts if all(t is not None for t in texts) else f"<{self.order + 1} callables>"
        return f"RecurrenceSpec({shown!r}, constant={self.constant!r}, mode={self.mode!r})"


def _const(value):
    return lambda n: value


@dataclass(frozen=True)
class SequenceWindow:
    """Values of a sequence on the contiguous block ``[offset, offset+len-1]``.

    Lookups outside the block raise :class:`WindowIndexError`; nothing is
    ever zero-extended implicitly.
    """

    offset: int
    values: tuple

    def __post_init__(self):
        if not isinstance(self.values, tuple):
            object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise PreconditionError("a SequenceWindow cannot be empty")

    @classmethod
    def from_function(cls, lo: int, hi: int, fn: Callable[[int], object]) -> "SequenceWindow":
        return cls(lo, tuple(fn(n) for n in range(lo, hi + 1)))

    @property
    def lo(self) -> int:
        return self.offset

    @property
    def hi(self) -> int:
        return self.offset + len(self.values) - 1

    def __len__(self):
        return len(self.values)

    def __contains__(self, n):
        return self.lo <= n <= self.hi

    def __getitem__(self, n: int):
        k = n - self.offset
        if k < 0 or k >= len(self.values):
            raise WindowIndexError(n, self.lo, self.hi)
        return self.values[k]

    def indices(self) -> range:
        return range(self.lo, self.hi + 1)

    def items(self):
        return zip(self.indices(), self.values)

    def restrict(self, lo: int, hi: int) -> "SequenceWindow":
        if lo not in self or hi not in self or lo > hi:
            raise WindowIndexError(lo if lo not in self else hi, self.lo, self.hi)
        return SequenceWindow(lo, self.values[lo - self.offset:hi - self.offset + 1])


@dataclass(frozen=True)
class FundamentalSet:
    """``d`` homogeneous solutions F_0..F_{d-1} stored over a common range."""

    windows: tuple
    canonical: bool = False
    _rows: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.windows)

    @property
    def lo(self) -> int:
        return self.windows[0].lo

    @property
    def hi(self) -> int:
        return self.windows[0].hi

    def __getitem__(self, i: int) -> SequenceWindow:
        return self.windows[i]

    def row(self, n: int) -> tuple:
        """``(F_0(n), ..., F_{d-1}(n))``."""
        r = self._rows.get(n)
        if r is None:
            r = self._rows.setdefault(n, tuple(w[n] for w in self.windows))
        return r


@dataclass
class Violation:
    n: int
    reason: str

    def __str__(self):
        return f"n={self.n}: {self.reason}"


@dataclass
class ValidationReport:
    lo: int
    hi: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def summary(self, limit: int = 5) -> str:
        if self.ok:
            return f"valid on [{self.lo}, {self.hi}]"
        shown = "; ".join(str(v) for v in self.violations[:limit])
        more = len(self.violations) - limit
        return shown + (f"; ... {more} more" if more > 0 else "")


def validate_spec(spec: RecurrenceSpec, lo: int, hi: int) -> ValidationReport:
    """Check every ``n`` in ``[lo, hi]`` for evaluable coefficients with c_0, c_d nonzero.

    A declared constant-coefficient form is also checked against the
    coefficient values on the range.
    """
    if lo > hi:
        raise PreconditionError(f"empty range [{lo}, {hi}]")
    report = ValidationReport(lo, hi)
    d = spec.order
    if spec.constant is not None:
        if spec.constant[0] == 0:
            report.violations.append(Violation(lo, "declared a_0 is zero"))
        expected = [1] + [-spec.constant[d - l] for l in range(1, d + 1)]
    for n in range(lo, hi + 1):
        try:
            c = spec.coefficients_at(n)
        except (DomainError, GreenRecError, ZeroDivisionError) as exc:
            report.violations.append(Violation(n, f"coefficient evaluation failed: {exc}"))
            continue
        if c[0] == 0:
            report.violations.append(Violation(n, "c_0 vanishes"))
        if c[d] == 0:
            report.violations.append(Violation(n, f"c_{d} vanishes"))
        if spec.constant is not None:
            bad = [i for i in range(d + 1) if c[i] != expected[i]]
            if bad:
                report.violations.append(Violation(
                    n, f"coefficients {bad} disagree with the declared constant coefficients"))
    return report


def step_forward(spec: RecurrenceSpec, history: Sequence, rhs, n: int):
    """Solve the equation at ``n`` for f(n), given ``history = f(n-d), ..., f(n-1)``."""
    c = spec.coefficients_at(n)
    d = spec.order
    if c[0] == 0:
        raise SingularCoefficientError(0, n)
    acc = rhs
    for i in range(1, d + 1):
        acc -= c[i] * history[d - i]
    return acc / c[0]


def step_backward(spec: RecurrenceSpec, future: Sequence, rhs, n: int):
    """Solve the equation at ``n`` for f(n-d), given ``future = f(n-d+1), ..., f(n)``."""
    c = spec.coefficients_at(n)
    d = spec.order
    if c[d] == 0:
        raise SingularCoefficientError(d, n)
    acc = rhs
    for i in range(d):
        acc -= c[i] * future[d - 1 - i]
    return acc / c[d]


def extend_homogeneous(spec: RecurrenceSpec, start: int, seed: Sequence, lo: int, hi: int) -> SequenceWindow:
    """Homogeneous solution with ``f(start + k) = seed[k]``, stepped out to ``[lo, hi]``.

    ``[start, start + d - 1]`` must lie inside ``[lo, hi]``.
    """
    d = spec.order
    if len(seed) != d:
        raise PreconditionError(f"need {d} seed values, got {len(seed)}")
    if start < lo or start + d - 1 > hi:
        raise PreconditionError(
            f"seed block [{start}, {start + d - 1}] not inside range [{lo}, {hi}]")
    zero = numerics.zero(spec.mode)
    seed = [numerics.coerce(v, spec.mode) for v in seed]
    up = list(seed)
    for n in range(start + d, hi + 1):
        up.append(step_forward(spec, up[-d:], zero, n))
    down = []  # values at start-1, start-2, ... (reversed)
    block = list(seed)
    for k in range(start - 1, lo - 1, -1):
        v = step_backward(spec, block, zero, k + d)
        down.append(v)
        block = [v] + block[:-1]
    down.reverse()
    return SequenceWindow(lo, tuple(down + up))


def canonical_basis(spec: RecurrenceSpec, i: int, lo: int, hi: int) -> SequenceWindow:
    """B_i on ``[lo, hi]``: the homogeneous solution with B_i(k) = delta_{i,k} for k < d."""
    d = spec.order
    if not 0 <= i < d:
        raise PreconditionError(f"basis index {i} outside [0, {d - 1}]")
    one, zero = numerics.coerce(1, spec.mode), numerics.zero(spec.mode)
    seed = [one if k == i else zero for k in range(d)]
    return extend_homogeneous(spec, 0, seed, lo, hi)


def canonical_set(spec: RecurrenceSpec, lo: int, hi: int) -> FundamentalSet:
    return FundamentalSet(
        tuple(canonical_basis(spec, i, lo, hi) for i in range(spec.order)), canonical=True)


def fundamental_set(spec: RecurrenceSpec, initial_rows: Sequence[Sequence], lo: int, hi: int) -> FundamentalSet:
    """Fundamental solutions from their values at n = 0..d-1.

    ``initial_rows[i]`` is ``(F_i(0), ..., F_i(d-1))``.  A singular matrix
    of initial values raises :class:`DependenceError`.
    """
    d = spec.order
    if len(initial_rows) != d or any(len(r) != d for r in initial_rows):
        raise PreconditionError(f"initial_rows must be a {d}x{d} matrix")
    rows = [[numerics.coerce(v, spec.mode) for v in r] for r in initial_rows]
    if numerics.determinant(rows) == 0:
        raise DependenceError("initial values are linearly dependent")
    canonical = all(rows[i][k] == (1 if i == k else 0) for i in range(d) for k in range(d))
    windows = tuple(extend_homogeneous(spec, 0, r, lo, hi) for r in rows)
    return FundamentalSet(windows, canonical=canonical)
