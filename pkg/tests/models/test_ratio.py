"""Tests for exact ratios, enclosures and three-valued comparisons."""
from __future__ import annotations

from fractions import Fraction

import pytest
from pydantic import ValidationError

from models.ratio import (
    Decision,
    Enclosure,
    ExactRatio,
    RatioEnclosure,
    as_ratio,
    at_least,
    greater_than,
    less_than,
    ratio_from_wire,
)


def test_exact_ratio() -> None:
    """Test an exact ratio and its wire form."""
    q = ExactRatio(value="1/14")
    assert q.lo == q.hi == Fraction(1, 14)
    assert q.width == 0
    assert q.to_wire() == {
        "kind": "exact",
        "value": "1/14",
        "decimal": "0.071428571429",
    }


@pytest.mark.parametrize("value", ["0", "1", "3/2", "-1/2"])
def test_exact_ratio_outside_unit_interval(value: str) -> None:
    """Test that ratios outside (0, 1) are rejected."""
    with pytest.raises(ValidationError):
        ExactRatio(value=value)


def test_ratio_enclosure() -> None:
    """Test an enclosure tagged with the root it encloses."""
    q = RatioEnclosure(lo="1/4", hi="3/10", root_of=(4, 3))
    assert q.width == Fraction(1, 20)
    wire = q.to_wire()
    assert wire["kind"] == "enclosure"
    assert wire["root_of"] == [4, 3]
    assert ratio_from_wire(wire) == q


@pytest.mark.parametrize(("lo", "hi"), [("0", "1/2"), ("1/2", "1"), ("1/2", "1/3")])
def test_ratio_enclosure_invalid(lo: str, hi: str) -> None:
    """Test that enclosures must satisfy 0 < lo <= hi < 1."""
    with pytest.raises(ValidationError):
        RatioEnclosure(lo=lo, hi=hi)


def test_enclosure_helpers() -> None:
    """Test width, exactness and membership of a general enclosure."""
    enclosure = Enclosure(lo=Fraction(-1, 2), hi=Fraction(1, 2))
    assert enclosure.width == 1
    assert enclosure.contains(Fraction(0))
    assert not enclosure.is_exact
    assert Enclosure.point(Fraction(3)).is_exact
    with pytest.raises(ValidationError):
        Enclosure(lo=Fraction(1), hi=Fraction(0))


def test_as_ratio() -> None:
    """Test wrapping of plain rationals."""
    assert as_ratio("1/2") == ExactRatio(value=Fraction(1, 2))
    q = RatioEnclosure(lo="1/4", hi="1/3")
    assert as_ratio(q) is q


def test_ratio_from_wire_unknown_kind() -> None:
    """Test that unknown wire kinds are rejected."""
    with pytest.raises(ValueError):
        ratio_from_wire({"kind": "interval", "lo": "1/4"})


def test_comparisons() -> None:
    """Test three-valued comparisons against enclosures."""
    q = RatioEnclosure(lo="1/5", hi="1/4")
    assert less_than(q, Fraction(1, 3)) is Decision.PROVEN
    assert less_than(q, Fraction(1, 5)) is Decision.REFUTED
    assert less_than(q, Fraction(9, 40)) is Decision.UNDECIDED
    assert at_least(q, Fraction(1, 5)) is Decision.PROVEN
    assert at_least(q, Fraction(9, 40)) is Decision.UNDECIDED
    assert greater_than(Fraction(1, 3), q) is Decision.PROVEN


def test_exact_comparisons_are_decided() -> None:
    """Test that comparisons of exact values never stay undecided."""
    q = ExactRatio(value=Fraction(1, 7))
    assert at_least(q, Fraction(1, 7)) is Decision.PROVEN
    assert less_than(q, Fraction(1, 7)) is Decision.REFUTED


def test_decision_negate() -> None:
    """Test that negation swaps proven and refuted."""
    assert Decision.PROVEN.negate() is Decision.REFUTED
    assert Decision.REFUTED.negate() is Decision.PROVEN
    assert Decision.UNDECIDED.negate() is Decision.UNDECIDED
