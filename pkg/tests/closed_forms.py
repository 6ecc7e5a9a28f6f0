"""Closed forms of the three worked examples, written out by hand."""

from fractions import Fraction


def ex1_particular(n):
    """Forced response of f(n) = 2f(n-1) - f(n-2) + n with f(0)=f(1)=0."""
    return Fraction(n * (n - 1) * (n + 4), 6)


def ex2_particular(n):
    """Same recurrence forced by 2^n."""
    return Fraction(2) ** (n + 2) - 4 - 4 * n


def ex3_particular(n):
    """(2n-1)f(n) - 4n f(n-1) + (2n+1) f(n-2) = 3 with f(0)=f(1)=0."""
    return Fraction(n * (n - 1), 2)


def ex3_retarded(n, m):
    return Fraction((n + 1) ** 2 - m ** 2, (2 * m - 1) * (2 * m + 1))


def ex3_advanced(n, m):
    return -Fraction((n + 1) ** 2 - (m + 2) ** 2, (2 * m + 3) * (2 * m + 5))
