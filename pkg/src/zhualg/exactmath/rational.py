"""Rational scalars.

All scalars are :class:`fractions.Fraction`; this module only adds the
string conversions used by the JSON formats ("p/q" or "n").
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = ["Fraction", "as_rational", "format_rational", "parse_rational"]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are rejected: nothing in the library may be rounded.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational string")
    if any(c in text for c in ".eE"):
        raise ValueError(f"decimal notation not accepted: {text!r}")
    return Fraction(text)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
