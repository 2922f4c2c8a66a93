"""Exact rational values and their text form.

Weights, lengths and distance demands are `fractions.Fraction` throughout the
core, so every comparison (feasibility, thresholds, optima) is exact.  Python
fractions already keep lowest terms with a positive denominator and use
arbitrary-precision integers, so arithmetic can never overflow or wrap.
Floating point only appears inside the LP layer.

Text form used by instance files: ``"p/q"``, or ``"p"`` alone for denominator 1.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError

Rational = Fraction


def parse_rational(text: str, *, field: str | None = None) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into an exact fraction.

    A zero denominator, a non-integer part, or a fractional denominator are
    parse errors, never silent coercions.
    """
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected rational string, got {type(text).__name__}", field=field)
    parts = text.strip().split("/")
    if len(parts) not in (1, 2):
        raise ParseError(f"malformed rational {text!r}", field=field)
    try:
        num = int(parts[0])
        den = int(parts[1]) if len(parts) == 2 else 1
    except ValueError:
        raise ParseError(f"malformed rational {text!r}", field=field) from None
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}", field=field)
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    """Canonical text form: lowest terms, ``"p"`` when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_integer(value: Fraction) -> bool:
    return Fraction(value).denominator == 1
