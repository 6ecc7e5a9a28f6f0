"""Retarded and advanced Green's functions of a linear difference equation.

For a source index ``m`` the retarded function satisfies

    sum_i c_i(n) G_r(n-i, m) = delta_{m,n}

and vanishes below ``m``; the advanced function satisfies the equation
shifted by ``d``,

    sum_i c_i(n+d) G_a(n+d-i, m) = delta_{m,n},

and vanishes above ``m``.  Three independent constructions are provided:

``ratio``
    a ratio of Casoratian-type determinants built from any fundamental set;
``recursion``
    seeding the ``d`` boundary values and stepping the homogeneous equation;
``cc``
    closed forms in terms of B_{d-1} for constant-coefficient equations.

Outside the support (n < m-d+1 retarded, n > m+d-1 advanced) both
functions are defined to be zero, which keeps the delta equation valid at
every integer n.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Optional, Sequence

from . import numerics
from .errors import (
    DegenerateBasisError,
    OrderDegeneracyError,
    PreconditionError,
    SingularCoefficientError,
)
from .recurrence import (
    FundamentalSet,
    RecurrenceSpec,
    SequenceWindow,
    canonical_basis,
    canonical_set,
    step_backward,
    step_forward,
)

RETARDED = "retarded"
ADVANCED = "advanced"
KINDS = (RETARDED, ADVANCED)

RATIO = "ratio"
RECURSION = "recursion"
CC = "cc"
STRATEGIES = (RATIO, RECURSION, CC)


@dataclass(frozen=True)
class GreensTable:
    """G(n, m) for one source index ``m`` over the range of ``entries``."""

    kind: str
    m: int
    entries: SequenceWindow
    strategy: str

    def __getitem__(self, n):
        return self.entries[n]

    @property
    def lo(self):
        return self.entries.lo

    @property
    def hi(self):
        return self.entries.hi


def _check_kind(kind):
    if kind not in KINDS:
        raise PreconditionError(f"kind must be one of {KINDS}, got {kind!r}")


# -- determinants --------------------------------------------------------------

def casoratian(fset: FundamentalSet, rows: Sequence[int], last_row_at: int):
    """Determinant with rows F(rows[0]), ..., F(rows[d-2]), F(last_row_at).

    ``F(k)`` denotes ``(F_0(k), ..., F_{d-1}(k))``; ``rows`` lists the d-1
    fixed row indices.
    """
    d = fset.order
    if len(rows) != d - 1:
        raise PreconditionError(f"expected {d - 1} fixed rows, got {len(rows)}")
    matrix = [fset.row(k) for k in rows] + [fset.row(last_row_at)]
    return numerics.determinant(matrix)


def _last_row_cofactors(fset: FundamentalSet, rows: Sequence[int]) -> list:
    """Cofactors K_i with casoratian(fset, rows, k) == sum_i K_i F_i(k) for all k."""
    d = fset.order
    fixed = [fset.row(k) for k in rows]
    cof = []
    for i in range(d):
        minor = [r[:i] + r[i + 1:] for r in fixed]
        sign = 1 if (d - 1 + i) % 2 == 0 else -1
        cof.append(sign * numerics.determinant(minor))
    return cof


def _retarded_rows(d, m):
    return list(range(m - d + 1, m))


def _advanced_rows(d, m):
    return list(range(m + d - 1, m, -1))


def _leading(spec, m):
    c0 = spec.coefficients_at(m)[0]
    if c0 == 0:
        raise SingularCoefficientError(0, m)
    return c0


def _trailing(spec, m):
    d = spec.order
    cd = spec.coefficients_at(m + d)[d]
    if cd == 0:
        raise SingularCoefficientError(d, m + d)
    return cd


def green_retarded(spec: RecurrenceSpec, fset: FundamentalSet, n: int, m: int):
    """G_r(n, m) as a ratio of determinants over ``fset``."""
    d = spec.order
    if n < m - d + 1:
        return numerics.zero(spec.mode)
    c0 = _leading(spec, m)
    rows = _retarded_rows(d, m)
    denom = casoratian(fset, rows, m)
    if denom == 0:
        raise DegenerateBasisError(m)
    return casoratian(fset, rows, n) / denom / c0


def green_advanced(spec: RecurrenceSpec, fset: FundamentalSet, n: int, m: int):
    """G_a(n, m) as a ratio of determinants over ``fset``."""
    d = spec.order
    if n > m + d - 1:
        return numerics.zero(spec.mode)
    cd = _trailing(spec, m)
    rows = _advanced_rows(d, m)
    denom = casoratian(fset, rows, m)
    if denom == 0:
        raise DegenerateBasisError(m)
    return casoratian(fset, rows, n) / denom / cd


def green_weights(spec: RecurrenceSpec, fset: FundamentalSet, kind: str, m: int) -> tuple:
    """Coefficients w with G(n, m) = sum_i w_i F_i(n) on the support of G.

    This is the determinant ratio expanded along its last row, so a whole
    column costs one set of cofactors plus a dot product per ``n``.
    """
    _check_kind(kind)
    d = spec.order
    if kind == RETARDED:
        scale, rows = _leading(spec, m), _retarded_rows(d, m)
    else:
        scale, rows = _trailing(spec, m), _advanced_rows(d, m)
    cof = _last_row_cofactors(fset, rows)
    at_m = fset.row(m)
    denom = sum(k * f for k, f in zip(cof, at_m))
    if denom == 0:
        raise DegenerateBasisError(m)
    denom *= scale
    return tuple(k / denom for k in cof)


# -- boundary recursion --------------------------------------------------------

def _recursion_values(spec, kind, m, lo, hi):
    d = spec.order
    zero = numerics.zero(spec.mode)
    values = {}
    if kind == RETARDED:
        start = m - d + 1
        col = [zero] * (d - 1) + [numerics.coerce(1, spec.mode) / _leading(spec, m)]
        for n in range(m + 1, hi + 1):
            col.append(step_forward(spec, col[-d:], zero, n))
        for k, v in enumerate(col):
            values[start + k] = v
    else:
        top = m + d - 1
        # col holds G(top), G(top-1), ... descending
        col = [zero] * (d - 1) + [numerics.coerce(1, spec.mode) / _trailing(spec, m)]
        for k in range(m - 1, lo - 1, -1):
            future = col[-1:-d - 1:-1]  # G(k+1), ..., G(k+d)
            col.append(step_backward(spec, future, zero, k + d))
        for j, v in enumerate(col):
            values[top - j] = v
    return values


def green_by_recursion(spec: RecurrenceSpec, kind: str, n: int, m: int):
    """G(n, m) by stepping the homogeneous equation away from its d boundary values."""
    _check_kind(kind)
    d = spec.order
    if kind == RETARDED and n < m - d + 1 or kind == ADVANCED and n > m + d - 1:
        return numerics.zero(spec.mode)
    return _recursion_values(spec, kind, m, min(n, m), max(n, m))[n]


# -- constant coefficients -----------------------------------------------------

def _check_cc(a, spec):
    a = tuple(numerics.coerce(x, numerics.EXACT) for x in a)
    if not a or a[0] == 0:
        raise OrderDegeneracyError("a_0 must be nonzero")
    if spec.constant is None:
        raise PreconditionError("spec is not declared constant-coefficient")
    if a != spec.constant:
        raise PreconditionError(f"constant coefficients {a} do not match the spec's {spec.constant}")


def _top_basis(spec, index, basis):
    d = spec.order
    if basis is None or index not in basis:
        basis = canonical_basis(spec, d - 1, min(0, index), max(d - 1, index))
    return basis[index]


def green_retarded_cc(a: Sequence, spec: RecurrenceSpec, n: int, m: int,
                      basis: Optional[SequenceWindow] = None):
    """G_r(n, m) = B_{d-1}(d-1+n-m); ``basis`` may supply a precomputed B_{d-1}."""
    _check_cc(a, spec)
    d = spec.order
    if n < m - d + 1:
        return numerics.zero(spec.mode)
    return _top_basis(spec, d - 1 + n - m, basis)


def green_advanced_cc(a: Sequence, spec: RecurrenceSpec, n: int, m: int,
                      basis: Optional[SequenceWindow] = None):
    """G_a(n, m) = -B_{d-1}(n-m-1); ``basis`` may supply a precomputed B_{d-1}."""
    _check_cc(a, spec)
    d = spec.order
    if n > m + d - 1:
        return numerics.zero(spec.mode)
    return -_top_basis(spec, n - m - 1, basis)


# -- tables --------------------------------------------------------------------

def greens_table(spec: RecurrenceSpec, kind: str, m: int, lo: int, hi: int,
                 strategy: str = RECURSION, fset: Optional[FundamentalSet] = None) -> GreensTable:
    """Column G(n, m) for n in ``[lo, hi]`` using ``strategy``.

    For ``ratio`` a fundamental set may be passed; it must cover the rows
    the determinants touch.  Otherwise the canonical basis is generated.
    """
    _check_kind(kind)
    if strategy not in STRATEGIES:
        raise PreconditionError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
    if lo > hi:
        raise PreconditionError(f"empty range [{lo}, {hi}]")
    d = spec.order
    zero = numerics.zero(spec.mode)
    if kind == RETARDED:
        s_lo, s_hi = m - d + 1, max(hi, m)
    else:
        s_lo, s_hi = min(lo, m), m + d - 1

    if strategy == RECURSION:
        vals = _recursion_values(spec, kind, m, s_lo, s_hi)
        entries = [vals.get(n, zero) for n in range(lo, hi + 1)]
    elif strategy == RATIO:
        if fset is None:
            fset = canonical_set(spec, min(lo, s_lo, 0), max(hi, s_hi, d - 1))
        w = green_weights(spec, fset, kind, m)
        entries = []
        for n in range(lo, hi + 1):
            if s_lo <= n <= s_hi:
                entries.append(sum(wi * f for wi, f in zip(w, fset.row(n))))
            else:
                entries.append(zero)
    else:
        if spec.constant is None:
            raise PreconditionError("strategy 'cc' needs a constant-coefficient spec")
        _check_cc(spec.constant, spec)
        if kind == RETARDED:
            idx = lambda n: d - 1 + n - m
            sign = 1
        else:
            idx = lambda n: n - m - 1
            sign = -1
        b_lo = min(0, idx(max(lo, s_lo)), idx(min(hi, s_hi)))
        b_hi = max(d - 1, idx(max(lo, s_lo)), idx(min(hi, s_hi)))
        basis = canonical_basis(spec, d - 1, b_lo, b_hi)
        entries = [sign * basis[idx(n)] if s_lo <= n <= s_hi else zero
                   for n in range(lo, hi + 1)]
    return GreensTable(kind, m, SequenceWindow(lo, tuple(entries)), strategy)


class GreensCache:
    """Thread-safe store of Green's columns keyed by (spec, kind, m, strategy, fset).

    A cached column is reused when it covers the requested range and rebuilt
    over the union of ranges otherwise.
    """

    def __init__(self):
        self._tables = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, spec, kind, m, lo, hi, strategy=RECURSION, fset=None) -> GreensTable:
        key = (id(spec), kind, m, strategy, id(fset) if fset is not None else None)
        with self._lock:
            entry = self._tables.get(key)
            if entry is not None and entry[0].lo <= lo and hi <= entry[0].hi:
                self.hits += 1
                return entry[0]
            self.misses += 1
        if entry is not None:
            lo, hi = min(lo, entry[0].lo), max(hi, entry[0].hi)
        table = greens_table(spec, kind, m, lo, hi, strategy, fset)
        with self._lock:
            # keep spec/fset alive so their ids stay unique while cached
            self._tables[key] = (table, spec, fset)
        return table

    def __len__(self):
        return len(self._tables)
