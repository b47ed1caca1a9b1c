"""Tests for the (a, b, c) condition triple search."""
from __future__ import annotations

from fractions import Fraction

import pytest
from pydantic import ValidationError

from models.sigma import FiniteSigma
from nullseq.witness import StarConditionWitness, star_condition_witness


def test_guthrie_nymann_witness(guthrie_nymann_sigma: FiniteSigma) -> None:
    """Test the triple (2, 1, −1) for {0, 2, 3, 5}."""
    witness = star_condition_witness(guthrie_nymann_sigma)
    assert witness == StarConditionWitness(a=2, b=1, c=-1)
    assert witness.holds_in(guthrie_nymann_sigma)
    assert witness.required_elements(4) == (2, 3, 2, 0, 5, 3)


def test_eight_digit_witness(example_sigma: FiniteSigma) -> None:
    """Test the triple for {0, 2, ..., 7, 9}."""
    witness = star_condition_witness(example_sigma)
    assert witness is not None
    assert (witness.a, witness.b, witness.c) == (2, 1, -1)
    assert witness.holds_in(example_sigma)


def test_ferens_witness(ferens_sigma: FiniteSigma) -> None:
    """Test the triple for {0, 3, ..., 15, 18}."""
    witness = star_condition_witness(ferens_sigma)
    assert witness is not None
    assert (witness.a, witness.b, witness.c) == (3, 3, -1)
    assert witness.holds_in(ferens_sigma)


def test_no_witness(consecutive_sigma: FiniteSigma) -> None:
    """Test that {0, 1, 2} has no triple."""
    assert star_condition_witness(consecutive_sigma) is None


def test_witness_wire() -> None:
    """Test exact string serialization."""
    witness = StarConditionWitness(a=Fraction(1, 2), b="3", c=0)
    assert witness.to_wire() == {"a": "1/2", "b": "3", "c": "0"}


def test_witness_rejects_equal_shifts() -> None:
    """Test that b and c must differ."""
    with pytest.raises(ValidationError):
        StarConditionWitness(a=0, b=1, c=1)


def test_holds_in_detects_missing_digit(guthrie_nymann_sigma: FiniteSigma) -> None:
    """Test that a triple from another set is rejected."""
    assert not StarConditionWitness(a=2, b=2, c=-1).holds_in(guthrie_nymann_sigma)
