"""Tests for the checks at ratios 1/(k+1) and 1/|Σ|."""
from __future__ import annotations

from fractions import Fraction

import pytest

from models.certificate import TheoremTag
from models.sigma import FiniteSigma
from sumsets.rational_ratio import (
    InvalidRatioFormError,
    full_sumset_check,
    t12_check,
)


@pytest.mark.parametrize("digits", [(0, 1, 2, 3), (0, 2, 3, 5)])
def test_no_violation_at_quarter(digits: tuple[int, ...]) -> None:
    """Test that |Σₙ|·4⁻ⁿ never drops below one up to depth 10."""
    report = t12_check(FiniteSigma.of(digits), Fraction(1, 4), 10)
    assert report.outcome == "no_violation"
    assert report.checked_depth == 10
    assert len(report.cardinalities) == 10
    assert report.certificate is None
    assert all(
        size >= 4**depth for depth, size in enumerate(report.cardinalities, start=1)
    )


def test_consecutive_cardinalities() -> None:
    """Test that {0, 1, 2, 3} at q = 1/4 enumerates base-4 integers."""
    report = t12_check(FiniteSigma.of(range(4)), Fraction(1, 4), 6)
    assert report.cardinalities == [4**depth for depth in range(1, 7)]


def test_zero_measure_at_fifteenth(ferens_sigma: FiniteSigma) -> None:
    """Test the depth-2 zero-measure certificate for the Ferens digits."""
    report = t12_check(ferens_sigma, Fraction(1, 15), 10)
    assert report.outcome == "zero_measure"
    assert report.checked_depth == 2
    assert report.cardinalities[0] == 15
    assert report.cardinalities[1] < 225
    assert report.certificate is not None
    assert report.certificate.bound < 1
    assert report.to_wire()["certificate"]["depth"] == 2


@pytest.mark.parametrize(
    ("digits", "q"),
    [
        ((0, Fraction(1, 2), 2), Fraction(1, 3)),
        ((0, 1, 2), Fraction(2, 5)),
        ((0, 1, 2), Fraction(1, 1)),
    ],
)
def test_t12_rejects_form(digits: tuple[Fraction | int, ...], q: Fraction) -> None:
    """Test that fractional digits and ratios other than 1/(k+1) are rejected."""
    with pytest.raises(InvalidRatioFormError):
        t12_check(FiniteSigma.of(digits), q, 3)


def test_t12_rejects_depth(consecutive_sigma: FiniteSigma) -> None:
    """Test that the depth must be positive."""
    with pytest.raises(ValueError):
        t12_check(consecutive_sigma, Fraction(1, 3), 0)


def test_collision_at_fifteenth(ferens_sigma: FiniteSigma) -> None:
    """Test the colliding strings (3, 15) and (4, 0) at q = 1/15."""
    report = full_sumset_check(ferens_sigma, 5)
    assert report.outcome == "collision"
    assert report.checked_depth == 2
    assert report.witness == ((3, 15), (4, 0))

    certificate = report.to_certificate()
    assert certificate is not None
    assert certificate.theorem_tag == TheoremTag.SUMSET_COLLISION
    assert certificate.witnesses["q"] == "1/15"
    assert certificate.witnesses["left"] == ["3", "15"]
    assert certificate.witnesses["right"] == ["4", "0"]


def test_no_collision_for_base_digits() -> None:
    """Test that {0, ..., s-1} at q = 1/s has unique expansions."""
    report = full_sumset_check(FiniteSigma.of(range(3)), 6)
    assert report.outcome == "no_collision"
    assert report.checked_depth == 6
    assert report.to_certificate() is None
    assert report.to_wire()["certificate"] is None


def test_full_sumset_check_rejects_fractions() -> None:
    """Test that the collision search needs integer digits."""
    with pytest.raises(InvalidRatioFormError):
        full_sumset_check(FiniteSigma.of((0, Fraction(1, 2), 1)), 3)
