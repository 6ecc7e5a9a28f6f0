"""A tiny expression language for coefficients c_i(n) and forcing terms r(n).

Grammar (whitespace is ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" unary)?
    atom   := INTEGER | "n" | "(" expr ")"

``^`` binds tighter than unary minus, so ``-2^2`` is ``-(2^2) = -4``, and it
is right-associative.  A power must have either a literal integer exponent
(``(n+1)^2``, ``n^-1``) or an n-free base (``2^n``, ``(1/2)^(n-1)``).
Evaluation is exact: every value is an exact rational (see ``numerics``).
Exponents larger than ``MAX_EXPONENT`` in magnitude are rejected unless the
base is 0, 1 or -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from .errors import DomainError, EvaluationError, ParseError
from .numerics import Scalar, exact


@dataclass(frozen=True)
class Num:
    value: Scalar


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: "Expr"


Expr = Union[Num, Var, Neg, BinOp, Pow]


def mentions_n(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, Num):
        return False
    if isinstance(e, Neg):
        return mentions_n(e.operand)
    if isinstance(e, BinOp):
        return mentions_n(e.left) or mentions_n(e.right)
    return mentions_n(e.base) or mentions_n(e.exponent)


def _literal_int(e: Expr):
    """Return the integer if ``e`` is a (possibly negated) integer literal."""
    sign = 1
    while isinstance(e, Neg):
        sign = -sign
        e = e.operand
    if isinstance(e, Num) and e.value.denominator == 1:
        return sign * e.value.numerator
    return None


# -- tokenizer / parser -------------------------------------------------------

_SINGLE = set("+-*/^()")


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch == "n":
            if i + 1 < len(text) and (text[i + 1].isalnum() or text[i + 1] == "_"):
                raise ParseError(f"unknown identifier starting with {ch!r}", i)
            tokens.append(("n", ch, i))
            i += 1
        elif ch in _SINGLE:
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2])
        self.pos += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        e = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return e

    def expr(self):
        e = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            e = BinOp(op, e, self.term())
        return e

    def term(self):
        e = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            e = BinOp(op, e, self.unary())
        return e

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] != "^":
            return base
        caret = self.take()
        exponent = self.unary()
        if mentions_n(base) and _literal_int(exponent) is None:
            raise ParseError(
                "power of an n-dependent base needs a literal integer exponent",
                caret[2],
            )
        return Pow(base, exponent)

    def atom(self):
        tok = self.peek()
        kind = tok[0]
        if kind == "int":
            self.take()
            return Num(exact(int(tok[1])))
        if kind == "n":
            self.take()
            return Var()
        if kind == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        what = "end of input" if kind == "end" else repr(tok[1])
        raise ParseError(f"expected a number, 'n' or '(', found {what}", tok[2])


def parse_expr(text: str) -> Expr:
    """Parse ``text`` into an expression tree.

    Raises :class:`ParseError` (with a character offset) on bad syntax.
    """
    if not isinstance(text, str):
        raise ParseError(f"expression must be a string, got {type(text).__name__}")
    return _Parser(text).parse()


# -- evaluation ---------------------------------------------------------------

MAX_EXPONENT = 100_000


def _power(base, exponent, n):
    if exponent.denominator != 1:
        raise EvaluationError(f"non-integer exponent {exponent}", n)
    if base == 0 and exponent < 0:
        raise EvaluationError("zero raised to a negative power", n)
    k = int(exponent.numerator)
    if abs(k) > MAX_EXPONENT:
        if base == 0 or base == 1:
            return base
        if base == -1:
            return base if k % 2 else -base
        raise EvaluationError(f"exponent {k} exceeds the limit {MAX_EXPONENT}", n)
    return base ** k


def eval_expr(e: Expr, n: int) -> Scalar:
    """Evaluate ``e`` at integer ``n`` exactly.

    Division by zero and ``0^negative`` raise :class:`EvaluationError`,
    which is a :class:`DomainError` carrying ``n``.
    """
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return exact(n)
    if isinstance(e, Neg):
        return -eval_expr(e.operand, n)
    if isinstance(e, Pow):
        return _power(eval_expr(e.base, n), eval_expr(e.exponent, n), n)
    a = eval_expr(e.left, n)
    b = eval_expr(e.right, n)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if b == 0:
        raise EvaluationError("division by zero", n)
    return a / b


def compile_expr(e: Expr) -> Callable[[int], Scalar]:
    """Turn a tree into a closure; same semantics as :func:`eval_expr`, faster."""
    if isinstance(e, Num):
        v = e.value
        return lambda n: v
    if isinstance(e, Var):
        return exact
    if isinstance(e, Neg):
        f = compile_expr(e.operand)
        return lambda n: -f(n)
    if isinstance(e, Pow):
        fb, fe = compile_expr(e.base), compile_expr(e.exponent)
        return lambda n: _power(fb(n), fe(n), n)
    fl, fr = compile_expr(e.left), compile_expr(e.right)
    if e.op == "+":
        return lambda n: fl(n) + fr(n)
    if e.op == "-":
        return lambda n: fl(n) - fr(n)
    if e.op == "*":
        return lambda n: fl(n) * fr(n)

    def divide(n):
        b = fr(n)
        if b == 0:
            raise EvaluationError("division by zero", n)
        return fl(n) / b

    return divide


# -- rendering ----------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}
_NEG_PREC = 3
_POW_PREC = 4
_ATOM_PREC = 5


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _NEG_PREC
    if isinstance(e, Pow):
        return _POW_PREC
    if isinstance(e, Num) and (e.value < 0 or e.value.denominator != 1):
        return 0
    return _ATOM_PREC


def _wrap(e: Expr, parens: bool) -> str:
    s = render_expr(e)
    return f"({s})" if parens else s


def render_expr(e: Expr) -> str:
    """Render with the minimum parentheses needed to reparse to the same tree."""
    if isinstance(e, Var):
        return "n"
    if isinstance(e, Num):
        v = e.value
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    if isinstance(e, Neg):
        return "-" + _wrap(e.operand, _prec(e.operand) < _NEG_PREC)
    if isinstance(e, Pow):
        base = _wrap(e.base, _prec(e.base) <= _POW_PREC)
        exponent = _wrap(e.exponent, _prec(e.exponent) < _NEG_PREC)
        return f"{base}^{exponent}"
    p = _PREC[e.op]
    left = _wrap(e.left, _prec(e.left) < p)
    right = _wrap(e.right, _prec(e.right) <= p)
    return f"{left} {e.op} {right}"


class Expression:
    """Parsed expression bundled with its source text and a compiled evaluator."""

    __slots__ = ("text", "tree", "_fn")

    def __init__(self, text: str):
        self.text = text
        self.tree = parse_expr(text)
        self._fn = compile_expr(self.tree)

    def __call__(self, n: int) -> Scalar:
        return self._fn(n)

    @property
    def is_constant(self) -> bool:
        return not mentions_n(self.tree)

    def __repr__(self):
        return f"Expression({self.text!r})"


__all__ = [
    "BinOp", "DomainError", "EvaluationError", "Expr", "Expression", "Neg",
    "Num", "ParseError", "Pow", "Var", "compile_expr", "eval_expr",
    "mentions_n", "parse_expr", "render_expr",
]
