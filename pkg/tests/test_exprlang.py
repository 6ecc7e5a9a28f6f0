import re
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from greenrec.errors import DomainError, EvaluationError, ParseError
from greenrec.exprlang import (
    MAX_EXPONENT, BinOp, Expression, Neg, Num, Pow, Var, compile_expr, eval_expr, parse_expr, render_expr,
)


def ev(text, n=0):
    return eval_expr(parse_expr(text), n)


class RefEvaluator:
    """Evaluates while it parses, straight from the text, with stdlib Fractions."""

    def __init__(self, text, n):
        self.toks = re.findall(r"\d+|n|[-+*/^()]", text)
        self.i = 0
        self.n = Fraction(n)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        self.i += 1
        return self.toks[self.i - 1]

    def run(self):
        v = self.sum()
        assert self.peek() is None
        return v

    def sum(self):
        v = self.product()
        while self.peek() in ("+", "-"):
            v = v + self.product() if self.next() == "+" else v - self.product()
        return v

    def product(self):
        v = self.signed()
        while self.peek() in ("*", "/"):
            if self.next() == "*":
                v *= self.signed()
            else:
                d = self.signed()
                if d == 0:
                    raise ZeroDivisionError
                v /= d
        return v

    def signed(self):
        if self.peek() == "-":
            self.next()
            return -self.signed()
        base = self.primary()
        if self.peek() == "^":
            self.next()
            e = self.signed()
            if e.denominator != 1 or (base == 0 and e < 0):
                raise ZeroDivisionError
            if abs(e) <= MAX_EXPONENT:
                return base ** int(e)
            if base in (0, 1):
                return base
            if base == -1:
                return Fraction(-1 if int(e) % 2 else 1)
            raise ZeroDivisionError
        return base

    def primary(self):
        t = self.next()
        if t == "(":
            v = self.sum()
            assert self.next() == ")"
            return v
        if t == "n":
            return self.n
        return Fraction(int(t))


@pytest.mark.parametrize("text, n, expected", [
    ("2*n - 1", 5, 9),
    ("(n+1)^2", 3, 16),
    ("2^n", -2, Fraction(1, 4)),
    ("-4*n", 2, -8),
    ("3", 17, 3),
    ("3", -4, 3),
    ("2+3*4", 0, 14),
    ("2*3^2", 0, 18),
    ("-2^2", 0, -4),
    ("2^3^2", 0, 512),
    ("(1/2)^(n-1)", 3, Fraction(1, 4)),
    ("n^-1", 4, Fraction(1, 4)),
    ("2^-n", 3, Fraction(1, 8)),
    ("1 - 2 - 3", 0, -4),
    ("12 / 3 / 2", 0, 2),
    ("  n  *  ( n - 1 ) / 2 ", 6, 15),
    ("--n", 3, 3),
])
def test_evaluation_fixtures(text, n, expected):
    assert ev(text, n) == expected
    assert Expression(text)(n) == expected


def test_minus_two_squared_parses_as_negated_power():
    assert parse_expr("-2^2") == Neg(Pow(Num(2), Num(2)))


def test_division_by_zero_reports_n():
    with pytest.raises(EvaluationError) as info:
        ev("n/ (n-1)", 1)
    assert info.value.n == 1
    assert isinstance(info.value, DomainError)


def test_zero_to_negative_power():
    with pytest.raises(DomainError):
        ev("0^-1")
    with pytest.raises(DomainError):
        ev("(n-2)^-1", 2)


def test_exponent_limit():
    assert ev("1^(10^9)") == 1
    assert ev("(-1)^(10^9 + 1)") == -1
    with pytest.raises(DomainError):
        ev("2^(10^9)")


def test_non_integer_exponent_at_eval():
    with pytest.raises(DomainError):
        ev("2^(1/2)")


@pytest.mark.parametrize("text, offset", [
    ("n^n", 1),
    ("(n+1)^(2*1)", 5),
    ("2 +", 3),
    ("2 $ 3", 2),
    ("(n + 1", 6),
    ("n m", 2),
    ("nn", 0),
    ("3 4", 2),
    (")", 0),
])
def test_parse_errors_carry_offset(text, offset):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.position == offset


def test_empty_expression():
    with pytest.raises(ParseError):
        parse_expr("   ")


def test_power_invariant_allows_literal_exponent_or_constant_base():
    parse_expr("(2*n+1)^-3")
    parse_expr("(-1)^n")
    parse_expr("(3/2)^(2*n - 1)")


@pytest.mark.parametrize("text", [
    "2*n - 1", "-(n+1)^2", "2^3^2", "(-2)^2", "n - (n - 1)", "n / (2 / n)", "-(-n)",
    "(1/2)^(n-1)", "n*-2", "2^-n", "(n^2)^3", "1 - -n",
])
def test_render_round_trip_fixtures(text):
    tree = parse_expr(text)
    assert parse_expr(render_expr(tree)) == tree


# random well-formed expressions, written out fully parenthesised

def _int_literal():
    return st.integers(0, 6).map(str)


const_exprs = st.recursive(
    _int_literal(),
    lambda inner: st.one_of(
        st.tuples(inner, st.sampled_from("+-*/"), inner).map(lambda t: f"({t[0]} {t[1]} {t[2]})"),
        inner.map(lambda s: f"(-{s})"),
    ),
    max_leaves=4,
)

exprs = st.recursive(
    st.one_of(_int_literal(), st.just("n")),
    lambda inner: st.one_of(
        st.tuples(inner, st.sampled_from("+-*/"), inner).map(lambda t: f"({t[0]} {t[1]} {t[2]})"),
        inner.map(lambda s: f"(-{s})"),
        st.tuples(inner, st.integers(-3, 3)).map(lambda t: f"({t[0]}^{t[1]})"),
        st.tuples(const_exprs, inner).map(lambda t: f"({t[0]}^({t[1]}))"),
    ),
    max_leaves=8,
)


def _both(text, n):
    try:
        mine = eval_expr(parse_expr(text), n)
    except DomainError:
        mine = "error"
    try:
        ref = RefEvaluator(text, n).run()
    except (ZeroDivisionError, OverflowError):
        ref = "error"
    return mine, ref


@settings(max_examples=300, deadline=None)
@given(exprs, st.integers(-4, 4))
def test_parse_evaluate_agrees_with_reference(text, n):
    try:
        mine, ref = _both(text, n)
    except (OverflowError, MemoryError):
        assume(False)
    assert mine == ref


@settings(max_examples=300, deadline=None)
@given(exprs)
def test_render_round_trip_random(text):
    tree = parse_expr(text)
    assert parse_expr(render_expr(tree)) == tree


@settings(max_examples=200, deadline=None)
@given(exprs, st.integers(-4, 4))
def test_compiled_matches_tree_walk(text, n):
    tree = parse_expr(text)
    try:
        expected = eval_expr(tree, n)
    except DomainError:
        with pytest.raises(DomainError):
            compile_expr(tree)(n)
        return
    assert compile_expr(tree)(n) == expected


def test_expression_wrapper():
    e = Expression("2^n")
    assert e.is_constant is False
    assert Expression("(1/2)^3").is_constant
    assert e(10) == 1024
    assert isinstance(parse_expr("n"), Var)
    assert isinstance(parse_expr("1+n"), BinOp)
