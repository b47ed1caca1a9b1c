"""Tests for digit sets and multigeometric sequence specs."""
from __future__ import annotations

from fractions import Fraction

import pytest
from pydantic import ValidationError

from models.ratio import ExactRatio
from models.sigma import FiniteSigma, MultigeometricSpec, SigmaParseError


def test_parse_sorts_digits() -> None:
    """Test that digits are stored strictly increasing."""
    sigma = FiniteSigma.parse("5, 0, 3, 2")
    assert sigma.elements == (0, 2, 3, 5)
    assert sigma.size == 4
    assert sigma.minimum == 0
    assert sigma.maximum == 5
    assert str(sigma) == "{0,2,3,5}"


def test_rational_digits() -> None:
    """Test digit sets with fractional digits."""
    sigma = FiniteSigma.parse("0,1/2,3/4")
    assert not sigma.is_integral
    assert sigma.common_denominator == 4
    assert Fraction(1, 2) in sigma
    assert sigma.to_wire() == ["0", "1/2", "3/4"]


@pytest.mark.parametrize("text", ["0,0,1", "3", "", "0,x"])
def test_parse_rejects(text: str) -> None:
    """Test duplicates, singletons and malformed digits."""
    with pytest.raises(SigmaParseError):
        FiniteSigma.parse(text)


def test_of_rejects_duplicates() -> None:
    """Test that direct construction validates too."""
    with pytest.raises(ValidationError):
        FiniteSigma.of((1, 1))


def test_shift_and_scale() -> None:
    """Test affine images of a digit set."""
    sigma = FiniteSigma.of((0, 1, 3))
    assert sigma.shift(Fraction(2)).elements == (2, 3, 5)
    assert sigma.scale(Fraction(1, 3)).elements == (0, Fraction(1, 3), 1)
    with pytest.raises(ValueError):
        sigma.scale(Fraction(0))


def test_multigeometric_parse() -> None:
    """Test coefficients with and without a ratio."""
    spec = MultigeometricSpec.parse("6,5,4,3;1/14")
    assert spec.coefficients == (6, 5, 4, 3)
    assert spec.ratio == ExactRatio(value=Fraction(1, 14))
    assert spec.sigma().size == 15
    assert MultigeometricSpec.parse("3,2").ratio is None


@pytest.mark.parametrize("text", ["", "3,-2", "3,2;2", "a,b"])
def test_multigeometric_parse_rejects(text: str) -> None:
    """Test empty, non-positive and malformed specs."""
    with pytest.raises(SigmaParseError):
        MultigeometricSpec.parse(text)


def test_multigeometric_wire() -> None:
    """Test the wire form of a spec."""
    wire = MultigeometricSpec.parse("4,3,2;17/100").to_wire()
    assert wire["coefficients"] == ["4", "3", "2"]
    assert wire["ratio"]["value"] == "17/100"
