"""Exact rational helpers: parsing, wire formatting and square-root enclosures."""
from __future__ import annotations

import logging
import math
from collections.abc import Iterable
from fractions import Fraction

logger = logging.getLogger(__name__)

Rational = Fraction


class RationalParseError(ValueError):
    """Exception raised when a string cannot be read as an exact rational."""

    def __init__(self, text: object, error_msg: str) -> None:
        """Initialize with the offending input and the reason.

        Args:
            text: The value that failed to parse
            error_msg: Why it was rejected
        """
        self.text = text
        self.error_msg = error_msg
        super().__init__(f"Cannot read {text!r} as a rational: {error_msg}")


def parse_rational(value: str | int | Fraction) -> Fraction:
    """Read an exact rational from a wire value.

    Accepts integers, ``Fraction`` instances and strings such as ``"2/7"``,
    ``"-3"`` or ``"0.17"``. Floats are rejected so that no binary rounding
    can leak into the arithmetic.

    Args:
        value: The value to convert

    Returns:
        The value as a canonical Fraction

    Raises:
        RationalParseError: If the value is not an exact rational
    """
    if isinstance(value, bool):
        raise RationalParseError(value, "booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise RationalParseError(value, f"unsupported type {type(value).__name__}")

    text = value.strip()
    if not text:
        raise RationalParseError(value, "empty string")
    try:
        result = Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise RationalParseError(value, str(e)) from e
    return result


def format_rational(value: Fraction) -> str:
    """Canonical wire form of a rational, e.g. ``"2655/2744"`` or ``"5"``."""
    return str(value)


def format_decimal(value: Fraction, digits: int = 12) -> str:
    """Render a rational as a rounded decimal string.

    Decimals are advisory; the rational string stays the source of truth.

    Args:
        value: The rational to render
        digits: Number of digits after the decimal point

    Returns:
        Decimal rendering rounded half-to-even at the last digit
    """
    scaled = round(value * 10**digits)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def lcm_of_denominators(values: Iterable[Fraction]) -> int:
    """Least common multiple of the denominators of the given rationals."""
    return math.lcm(*(value.denominator for value in values))


def bits_for_tolerance(tol: Fraction) -> int:
    """Smallest k >= 1 with 2**-k <= tol.

    Raises:
        ValueError: If tol is not positive
    """
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    bits = 1
    while Fraction(1, 2**bits) > tol:
        bits += 1
    return bits


def exact_sqrt(value: Fraction) -> Fraction | None:
    """Return sqrt(value) when it is rational, otherwise None."""
    if value < 0:
        return None
    num_root = math.isqrt(value.numerator)
    den_root = math.isqrt(value.denominator)
    if num_root**2 == value.numerator and den_root**2 == value.denominator:
        return Fraction(num_root, den_root)
    return None


def sqrt_enclosure(value: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Enclose sqrt(value) between rationals with denominator 2**bits.

    Uses floor(sqrt(x)) == isqrt(floor(x)) on the scaled value, so the lower
    endpoint is rounded down and the upper endpoint up.

    Args:
        value: Non-negative rational
        bits: Binary precision of the endpoints

    Returns:
        (lo, hi) with lo <= sqrt(value) <= hi and hi - lo <= 2**-bits

    Raises:
        ValueError: If value is negative
    """
    if value < 0:
        raise ValueError(f"Cannot take the square root of {value}")
    root = exact_sqrt(value)
    if root is not None:
        return root, root

    scale = 1 << bits
    floor_scaled = (value.numerator * scale * scale) // value.denominator
    lo_num = math.isqrt(floor_scaled)
    return Fraction(lo_num, scale), Fraction(lo_num + 1, scale)
