"""Problem files: JSON documents describing one difference equation.

Example (the equation ``f(n) = 2 f(n-1) - f(n-2) + n``)::

    {
      "order": 2,
      "coefficients": ["1", "-2", "1"],
      "forcing": "n",
      "initial": ["0", "0"],
      "range": [-10, 20],
      "constant_coefficients": ["-1", "2"],
      "mode": "exact"
    }

Coefficients and the forcing term are expression strings in ``n``;
initial values and constant coefficients are scalar strings.  The last two
fields are optional.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import numerics
from .errors import GreenRecError
from .exprlang import Expression
from .recurrence import RecurrenceSpec

REQUIRED = ("order", "coefficients", "forcing", "initial", "range")
OPTIONAL = ("constant_coefficients", "mode")


class ProblemError(GreenRecError, ValueError):
    """A problem document is malformed; the message names the field."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class ProblemDocument:
    order: int
    coefficients: tuple
    forcing: str
    initial: tuple
    range: tuple
    constant_coefficients: Optional[tuple] = None
    mode: str = numerics.EXACT

    @property
    def lo(self) -> int:
        return self.range[0]

    @property
    def hi(self) -> int:
        return self.range[1]

    @classmethod
    def from_dict(cls, data) -> "ProblemDocument":
        if not isinstance(data, dict):
            raise ProblemError("document", "must be a JSON object")
        unknown = sorted(set(data) - set(REQUIRED) - set(OPTIONAL))
        if unknown:
            raise ProblemError(unknown[0], "unknown field")
        for key in REQUIRED:
            if key not in data:
                raise ProblemError(key, "missing required field")

        order = data["order"]
        if not isinstance(order, int) or isinstance(order, bool) or order < 2:
            raise ProblemError("order", "must be an integer >= 2")
        coefficients = _strings(data, "coefficients", order + 1)
        for i, text in enumerate(coefficients):
            _check_expr(f"coefficients[{i}]", text)
        forcing = data["forcing"]
        if not isinstance(forcing, str):
            raise ProblemError("forcing", "must be an expression string")
        _check_expr("forcing", forcing)
        initial = _strings(data, "initial", order)
        for i, text in enumerate(initial):
            _check_scalar(f"initial[{i}]", text)

        rng = data["range"]
        if (not isinstance(rng, list) or len(rng) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in rng)):
            raise ProblemError("range", "must be a pair of integers [lo, hi]")
        if rng[0] > rng[1]:
            raise ProblemError("range", f"lo={rng[0]} exceeds hi={rng[1]}")

        constant = data.get("constant_coefficients")
        if constant is not None:
            constant = _strings(data, "constant_coefficients", order)
            for i, text in enumerate(constant):
                _check_scalar(f"constant_coefficients[{i}]", text)
        mode = data.get("mode", numerics.EXACT)
        if mode not in numerics.MODES:
            raise ProblemError("mode", f"must be one of {list(numerics.MODES)}")
        return cls(order, coefficients, forcing, initial, tuple(rng), constant, mode)

    @classmethod
    def load(cls, path) -> "ProblemDocument":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ProblemError("file", f"cannot read {path}: {exc.strerror}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ProblemError("file", f"invalid JSON in {path}: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        out = {
            "order": self.order,
            "coefficients": list(self.coefficients),
            "forcing": self.forcing,
            "initial": list(self.initial),
            "range": list(self.range),
        }
        if self.constant_coefficients is not None:
            out["constant_coefficients"] = list(self.constant_coefficients)
        if self.mode != numerics.EXACT:
            out["mode"] = self.mode
        return out

    def spec(self, mode: Optional[str] = None) -> RecurrenceSpec:
        constant = None
        if self.constant_coefficients is not None:
            constant = [numerics.parse_scalar(a) for a in self.constant_coefficients]
        return RecurrenceSpec(list(self.coefficients), constant=constant, mode=mode or self.mode)

    def initial_values(self) -> tuple:
        return tuple(numerics.parse_scalar(a) for a in self.initial)

    def forcing_expr(self) -> Expression:
        return Expression(self.forcing)

    def check_solve_range(self):
        if not (self.lo <= 0 and self.order - 1 <= self.hi):
            raise ProblemError(
                "range", f"must contain the initial block [0, {self.order - 1}] for solve")


def _strings(data, key, length):
    value = data[key]
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ProblemError(key, "must be a list of strings")
    if len(value) != length:
        raise ProblemError(key, f"expected {length} entries, got {len(value)}")
    return tuple(value)


def _check_expr(field, text):
    try:
        Expression(text)
    except GreenRecError as exc:
        raise ProblemError(field, str(exc)) from exc


def _check_scalar(field, text):
    try:
        numerics.parse_scalar(text)
    except GreenRecError as exc:
        raise ProblemError(field, str(exc)) from exc
