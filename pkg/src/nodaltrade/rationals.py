"""Parsing and formatting of exact rationals as "p/q" strings.

All machine-readable output renders numbers this way so that no consumer
ever sees a float.
"""

from fractions import Fraction

from .errors import InvalidInputError


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"malformed rational {text!r}: {exc}") from exc


def format_rational(value) -> str:
    """Render an int or Fraction as "p" or "p/q" in lowest terms."""
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"
