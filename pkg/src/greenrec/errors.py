"""Exception hierarchy shared by every module."""


class GreenRecError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GreenRecError, ValueError):
    """Malformed scalar or expression text.

    ``position`` is the 0-based character offset of the offending token,
    or ``None`` when the whole string is rejected.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class DomainError(GreenRecError, ArithmeticError):
    """Arithmetic outside its domain: zero denominator, 0 to a negative power."""


class EvaluationError(DomainError):
    """An expression failed to evaluate at a particular ``n``."""

    def __init__(self, message, n=None):
        if n is not None:
            message = f"{message} at n={n}"
        super().__init__(message)
        self.n = n


class SingularCoefficientError(GreenRecError):
    """A leading (c_0) or trailing (c_d) coefficient vanished where it is divided by."""

    def __init__(self, index, n):
        super().__init__(f"coefficient c_{index} vanishes at n={n}")
        self.index = index
        self.n = n


class DependenceError(GreenRecError):
    """Supposed fundamental solutions are linearly dependent."""


class DegenerateBasisError(GreenRecError):
    """A Casoratian denominator is zero for the given source index ``m``."""

    def __init__(self, m):
        super().__init__(f"Casoratian denominator vanishes for m={m}")
        self.m = m


class OrderDegeneracyError(GreenRecError):
    """Constant coefficients with a_0 = 0 do not define a recurrence of order d."""


class PreconditionError(GreenRecError):
    """An operation was called on inputs outside its contract."""


class WindowIndexError(GreenRecError, IndexError):
    """Lookup outside the stored range of a SequenceWindow."""

    def __init__(self, n, lo, hi):
        super().__init__(f"index {n} outside window [{lo}, {hi}]")
        self.n = n
        self.lo = lo
        self.hi = hi


class InvalidSpecError(PreconditionError):
    """The recurrence failed validation on the requested range."""

    def __init__(self, report):
        super().__init__(f"recurrence invalid on [{report.lo}, {report.hi}]: {report.summary()}")
        self.report = report
        self.n = report.violations[0].n if report.violations else None
