"""Scalar arithmetic.

Exact mode uses :class:`gmpy2.mpq`, GMP rationals that are always kept in
lowest terms with a positive denominator; they compare and hash equal to
:class:`fractions.Fraction` values.  Float mode uses builtin floats.
The mode is chosen once per computation (it lives on the recurrence) and
values are pushed into it with :func:`coerce`.
"""

import re
from fractions import Fraction
from typing import Union

from gmpy2 import mpq

from .errors import DomainError, ParseError

Scalar = Union[mpq, float]

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

ZERO = mpq(0)
ONE = mpq(1)

_SCALAR_RE = re.compile(r"(-?\d+)(?:/(\d+))?")


def exact(value) -> mpq:
    """Exact rational from an int, Fraction, mpq or (numerator, denominator)."""
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, tuple):
        return mpq(*value)
    return mpq(value)


def parse_scalar(text: str) -> mpq:
    """Parse ``-?digits`` or ``-?digits/digits`` into a reduced rational.

    >>> parse_scalar("3/6")
    mpq(1,2)
    """
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string, got {type(text).__name__}")
    match = _SCALAR_RE.fullmatch(text)
    if match is None:
        raise ParseError(f"malformed scalar {text!r}")
    num, den = match.groups()
    if den is None:
        return mpq(int(num))
    if int(den) == 0:
        raise DomainError(f"zero denominator in scalar {text!r}")
    return mpq(int(num), int(den))


def render_scalar(value: Scalar) -> str:
    """Render as ``p`` or ``p/q``; floats use ``repr``."""
    if isinstance(value, float):
        return repr(value)
    value = exact(value)
    if value.denominator == 1:
        return str(int(value.numerator))
    return f"{int(value.numerator)}/{int(value.denominator)}"


def scalar_pow(base: Scalar, exponent: int) -> Scalar:
    if exponent < 0 and base == 0:
        raise DomainError("zero raised to a negative power")
    if isinstance(base, float):
        return base ** exponent
    # rational ** negative int stays exact
    return exact(base) ** exponent


def coerce(value, mode: str = EXACT) -> Scalar:
    """Convert an int/Fraction/float into the representation used by ``mode``."""
    if mode == EXACT:
        if isinstance(value, float):
            raise DomainError("float value in exact mode")
        return value if type(value) is _MPQ else exact(value)
    if mode == FLOAT:
        return float(value)
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


_MPQ = type(ONE)


def zero(mode: str = EXACT) -> Scalar:
    return ZERO if mode == EXACT else 0.0


def determinant(matrix) -> Scalar:
    """Determinant of a square matrix by Gaussian elimination.

    Exact for rational entries (first nonzero pivot); floats use partial
    pivoting.  ``matrix`` is a sequence of rows and is not modified.
    """
    rows = [list(r) for r in matrix]
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if size == 0:
        return ONE
    is_float = any(isinstance(x, float) for r in rows for x in r)
    det = 1.0 if is_float else ONE
    for col in range(size):
        if is_float:
            pivot = max(range(col, size), key=lambda k: abs(rows[k][col]))
            if rows[pivot][col] == 0:
                return 0.0
        else:
            pivot = next((k for k in range(col, size) if rows[k][col] != 0), None)
            if pivot is None:
                return ZERO
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        p = rows[col][col]
        det *= p
        for k in range(col + 1, size):
            factor = rows[k][col]
            if factor == 0:
                continue
            factor = factor / p
            rk, rc = rows[k], rows[col]
            for j in range(col + 1, size):
                rk[j] -= factor * rc[j]
    return det
