"""Rational-string parsing and formatting for the JSON interfaces.

Rationals travel as strings ("3", "-7/2") so that every file round-trips
bit-exactly; floats are never accepted or emitted.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NormalVolError


def parse_rat(value) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise NormalVolError(f"expected a rational string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise NormalVolError(f"bad rational string {value!r}") from exc
    raise NormalVolError(f"expected a rational string, got {value!r}")


def format_rat(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
