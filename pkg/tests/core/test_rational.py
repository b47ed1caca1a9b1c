"""Tests for exact rational parsing, formatting and square-root enclosures."""
from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.rational import (
    RationalParseError,
    bits_for_tolerance,
    exact_sqrt,
    format_decimal,
    format_rational,
    lcm_of_denominators,
    parse_rational,
    sqrt_enclosure,
)


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("2/7", Fraction(2, 7)),
        ("-3", Fraction(-3)),
        ("0.17", Fraction(17, 100)),
        (" 6/4 ", Fraction(3, 2)),
        (5, Fraction(5)),
        (Fraction(1, 3), Fraction(1, 3)),
    ],
)
def test_parse_rational(text: str | int | Fraction, expected: Fraction) -> None:
    """Test that exact inputs parse to canonical fractions."""
    assert parse_rational(text) == expected


@pytest.mark.parametrize("bad", ["", "abc", "1/0", 0.5, True, None])
def test_parse_rational_rejects(bad: object) -> None:
    """Test that floats, booleans and malformed strings are rejected."""
    with pytest.raises(RationalParseError):
        parse_rational(bad)  # type: ignore[arg-type]


def test_parse_error_is_value_error() -> None:
    """Test that parse failures can be caught as ValueError."""
    with pytest.raises(ValueError, match="Cannot read"):
        parse_rational("x/y")


def test_format_rational() -> None:
    """Test the canonical wire form."""
    assert format_rational(Fraction(2655, 2744)) == "2655/2744"
    assert format_rational(Fraction(10, 2)) == "5"
    assert format_rational(Fraction(-1, 8)) == "-1/8"


def test_format_decimal() -> None:
    """Test rounded decimal renderings."""
    assert format_decimal(Fraction(1, 3), 6) == "0.333333"
    assert format_decimal(Fraction(2, 3), 6) == "0.666667"
    assert format_decimal(Fraction(-1, 8), 3) == "-0.125"
    assert format_decimal(Fraction(7, 2), 0) == "4"
    assert format_decimal(Fraction(2655, 2744), 4) == "0.9676"


def test_lcm_of_denominators() -> None:
    """Test the common denominator of a list of rationals."""
    values = [Fraction(1, 4), Fraction(5, 6), Fraction(3)]
    assert lcm_of_denominators(values) == 12


def test_bits_for_tolerance() -> None:
    """Test the smallest power of two below a tolerance."""
    assert bits_for_tolerance(Fraction(1, 8)) == 3
    assert bits_for_tolerance(Fraction(1, 10)) == 4
    assert bits_for_tolerance(Fraction(1)) == 1
    assert bits_for_tolerance(Fraction(1, 10**12)) == 40
    with pytest.raises(ValueError):
        bits_for_tolerance(Fraction(0))


def test_exact_sqrt() -> None:
    """Test rational square roots."""
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert exact_sqrt(Fraction(1, 9)) == Fraction(1, 3)
    assert exact_sqrt(Fraction(2)) is None
    assert exact_sqrt(Fraction(-4)) is None


def test_sqrt_enclosure_exact_square() -> None:
    """Test that perfect squares give a degenerate enclosure."""
    assert sqrt_enclosure(Fraction(1, 9), 10) == (Fraction(1, 3), Fraction(1, 3))


def test_sqrt_enclosure_rejects_negative() -> None:
    """Test that negative inputs are rejected."""
    with pytest.raises(ValueError):
        sqrt_enclosure(Fraction(-1), 10)


@settings(max_examples=100)
@given(
    value=st.fractions(min_value=0, max_value=100, max_denominator=1000),
    bits=st.integers(min_value=1, max_value=80),
)
def test_sqrt_enclosure_brackets(value: Fraction, bits: int) -> None:
    """Test that the enclosure brackets the root and meets the width."""
    lo, hi = sqrt_enclosure(value, bits)
    assert lo * lo <= value <= hi * hi
    assert hi - lo <= Fraction(1, 2**bits)
