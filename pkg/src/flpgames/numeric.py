"""Scalar coercion for the two arithmetic modes.

Exact mode works on :class:`fractions.Fraction`; float mode on ``float`` with
the absolute tolerance ``EPS``.  A collection of data is in float mode as soon
as one entry is a float, so the mode simply follows the input.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Number = Union[Fraction, float]

EPS = 1e-9


def parse_number(value) -> Number:
    """Turn ints, Fractions, ``"num/den"`` or decimal strings into a Number.

    Floats are kept as floats; everything else becomes an exact Fraction.
    """
    if isinstance(value, bool):
        raise TypeError(f"not a number: {value!r}")
    if isinstance(value, float):
        return value
    if isinstance(value, (Rational, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse number {value!r}") from exc
    raise TypeError(f"not a number: {value!r}")


def any_float(values: Iterable) -> bool:
    return any(isinstance(v, float) for v in values)


def coerce(values: Iterable, exact: bool) -> tuple:
    """Parse every value and convert to the requested mode."""
    kind = Fraction if exact else float
    return tuple(kind(parse_number(v)) for v in values)


def tolerance(exact: bool) -> Number:
    return Fraction(0) if exact else EPS


def dot(a, b):
    total = None
    for x, y in zip(a, b):
        if x and y:
            total = x * y if total is None else total + x * y
    if total is None:
        return 0.0 if any_float(a) or any_float(b) else Fraction(0)
    if isinstance(total, int):
        return Fraction(total)
    return total


def fmt(x) -> str:
    """Stable text form: ``"2/3"`` for Fractions, ``repr`` for floats."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return repr(float(x))
