"""Brute-force reference solutions and residual checks.

Nothing here touches Green's functions: :func:`oracle_solve` steps the
inhomogeneous equation directly from the initial values, and the residual
scans substitute a window back into the equation.  The only code shared
with the Green's-function path is the pair of step functions and the
scalar layer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from . import numerics
from .errors import PreconditionError
from .exprlang import Expression
from .greens import RETARDED, GreensTable
from .recurrence import RecurrenceSpec, SequenceWindow, step_backward, step_forward


@dataclass(frozen=True)
class OracleReport:
    window: SequenceWindow
    max_abs_residual: object
    first_mismatch: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.first_mismatch is None and self.max_abs_residual == 0

    def nonzero(self) -> list:
        return [n for n, v in self.window.items() if v != 0]


def _report(lo, values, mode):
    window = SequenceWindow(lo, tuple(values))
    worst = max((abs(v) for v in values), default=numerics.zero(mode))
    bad = next((n for n, v in window.items() if v != 0), None)
    return OracleReport(window, worst, bad)


def oracle_solve(spec: RecurrenceSpec, initial: Sequence, forcing, lo: int, hi: int) -> SequenceWindow:
    """f on ``[lo, hi]`` with f(k) = initial[k] for k < d, by direct recursion."""
    d = spec.order
    if len(initial) != d:
        raise PreconditionError(f"expected {d} initial values, got {len(initial)}")
    if lo > 0 or hi < d - 1:
        raise PreconditionError(f"range [{lo}, {hi}] must contain [0, {d - 1}]")
    if isinstance(forcing, str):
        forcing = Expression(forcing)
    mode = spec.mode
    f = {k: numerics.coerce(v, mode) for k, v in enumerate(initial)}
    for n in range(d, hi + 1):
        history = [f[n - d + j] for j in range(d)]
        f[n] = step_forward(spec, history, numerics.coerce(forcing(n), mode), n)
    for k in range(-1, lo - 1, -1):
        n = k + d
        future = [f[k + 1 + j] for j in range(d)]
        f[k] = step_backward(spec, future, numerics.coerce(forcing(n), mode), n)
    return SequenceWindow(lo, tuple(f[n] for n in range(lo, hi + 1)))


def residual_window(spec: RecurrenceSpec, window: SequenceWindow, forcing) -> OracleReport:
    """Residuals sum_i c_i(n) w(n-i) - r(n) wherever all d+1 points lie in ``window``."""
    d = spec.order
    if len(window) < d + 1:
        raise PreconditionError(f"window needs at least {d + 1} points")
    if isinstance(forcing, str):
        forcing = Expression(forcing)
    lo = window.lo + d
    values = []
    for n in range(lo, window.hi + 1):
        c = spec.coefficients_at(n)
        lhs = sum(c[i] * window[n - i] for i in range(d + 1))
        values.append(lhs - numerics.coerce(forcing(n), spec.mode))
    return _report(lo, values, spec.mode)


def greens_residual(spec: RecurrenceSpec, table: GreensTable, lo: int, hi: int) -> OracleReport:
    """Residual of the Green's defining equation minus delta_{m,n} for n in ``[lo, hi]``.

    Retarded columns are checked against sum_i c_i(n) G(n-i); advanced ones
    against the shifted sum_i c_i(n+d) G(n+d-i).  The table must cover the
    d guard points this needs.
    """
    d = spec.order
    m = table.m
    one, zero = numerics.coerce(1, spec.mode), numerics.zero(spec.mode)
    shift = 0 if table.kind == RETARDED else d
    values = []
    for n in range(lo, hi + 1):
        k = n + shift
        c = spec.coefficients_at(k)
        lhs = sum(c[i] * table[k - i] for i in range(d + 1))
        values.append(lhs - (one if n == m else zero))
    return _report(lo, values, spec.mode)


def compare_windows(a: SequenceWindow, b: SequenceWindow) -> OracleReport:
    """Pointwise ``a - b`` over the shared range."""
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        raise PreconditionError("windows do not overlap")
    diffs = [a[n] - b[n] for n in range(lo, hi + 1)]
    mode = numerics.FLOAT if any(isinstance(v, float) for v in diffs) else numerics.EXACT
    return _report(lo, diffs, mode)


# -- random problems -----------------------------------------------------------

DEFAULT_POOL = range(-5, 6)
_BASES = ("2", "-1", "3", "-2", "(1/2)", "(-1/3)")


@dataclass(frozen=True)
class RandomCase:
    seed: int
    coefficients: tuple  # expression texts c_0..c_d
    forcing: str
    initial: tuple
    constant: Optional[tuple] = None

    @property
    def order(self):
        return len(self.coefficients) - 1

    def spec(self, mode: str = numerics.EXACT) -> RecurrenceSpec:
        return RecurrenceSpec(list(self.coefficients), constant=self.constant, mode=mode)

    def describe(self) -> str:
        parts = [f"seed={self.seed}", "c=(" + ", ".join(self.coefficients) + ")",
                 f"r={self.forcing}",
                 "initial=(" + ", ".join(numerics.render_scalar(a) for a in self.initial) + ")"]
        if self.constant is not None:
            parts.append("a=(" + ", ".join(numerics.render_scalar(a) for a in self.constant) + ")")
        return " ".join(parts)


def _nonzero(rng, pool):
    return rng.choice([k for k in pool if k != 0])


def _rational(rng, pool, allow_zero=True):
    p = rng.choice(list(pool)) if allow_zero else _nonzero(rng, pool)
    q = rng.choice((1, 1, 2, 3))
    return numerics.exact((p, q))


def _text(value) -> str:
    return numerics.render_scalar(value)


def _edge_coefficient(rng, pool):
    # provably nonzero at every integer n
    if rng.random() < 0.5:
        return _text(_rational(rng, pool, allow_zero=False))
    k = _nonzero(rng, pool)
    b = rng.choice([v for v in range(-7, 8) if v % 2])
    return f"{k}*(2*n + {b})" if b > 0 else f"{k}*(2*n - {-b})"


def _inner_coefficient(rng, pool):
    if rng.random() < 0.5:
        return _text(_rational(rng, pool))
    return f"{rng.choice(list(pool))}*n + {_text(_rational(rng, pool))}"


def _random_forcing(rng, pool):
    parts = []
    kind = rng.choice(("poly", "geom", "mix"))
    if kind in ("poly", "mix"):
        deg = rng.randint(0, 2)
        terms = [f"{_text(_rational(rng, pool))}*n^{k}" for k in range(deg, 0, -1)]
        terms.append(_text(_rational(rng, pool)))
        parts.append(" + ".join(f"({t})" for t in terms))
    if kind in ("geom", "mix"):
        parts.append(f"({_nonzero(rng, pool)})*{rng.choice(_BASES)}^n")
    return " + ".join(parts)


def random_spec(seed: int, d: int, coeff_pool: Sequence[int] = DEFAULT_POOL) -> RandomCase:
    """A reproducible variable-coefficient problem of order ``d``.

    c_0 and c_d are nonzero constants or multiples of an odd affine form
    ``2n + b``, so they never vanish on the integers.
    """
    if d < 2:
        raise PreconditionError("order must be at least 2")
    rng = random.Random(seed)
    coeffs = [_edge_coefficient(rng, coeff_pool)]
    coeffs += [_inner_coefficient(rng, coeff_pool) for _ in range(d - 1)]
    coeffs.append(_edge_coefficient(rng, coeff_pool))
    forcing = _random_forcing(rng, coeff_pool)
    initial = tuple(_rational(rng, coeff_pool) for _ in range(d))
    return RandomCase(seed, tuple(coeffs), forcing, initial)


def random_constant_spec(seed: int, d: int, coeff_pool: Sequence[int] = DEFAULT_POOL) -> RandomCase:
    """A reproducible constant-coefficient problem f(n) - sum a_{d-l} f(n-l) = r(n)."""
    if d < 2:
        raise PreconditionError("order must be at least 2")
    rng = random.Random(seed)
    a = [_rational(rng, coeff_pool, allow_zero=False)]
    a += [_rational(rng, coeff_pool) for _ in range(d - 1)]
    coeffs = ["1"] + [_text(-a[d - l]) for l in range(1, d + 1)]
    forcing = _random_forcing(rng, coeff_pool)
    initial = tuple(_rational(rng, coeff_pool) for _ in range(d))
    return RandomCase(seed, tuple(coeffs), forcing, initial, constant=tuple(a))
