"""Exact rationals and their "p/q" string form used in all JSON I/O."""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or integer strings into a Fraction.

    Floats are rejected on purpose: exactness is part of the I/O contract.
    """
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string like '2/5', got {text!r}")
    s = text.strip()
    if "." in s or "e" in s or "E" in s:
        raise ValueError(f"rational {text!r} must be exact (no decimal/float forms)")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}: {exc}") from exc


def format_rational(q: Fraction) -> str:
    """Render a Fraction as "p/q", or just "p" for integers."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def in_unit_interval(q: Fraction) -> bool:
    return ZERO <= q <= ONE
