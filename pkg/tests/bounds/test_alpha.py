"""Tests for the lower bound α̲(d)."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from bounds.alpha import (
    AlphaBranch,
    alpha_lower,
    alpha_lower_via_star,
    closed_form_applies,
    cubic,
)
from bounds.star import BoundsDomainError
from models.certificate import TheoremTag
from models.ratio import ExactRatio

TOL = Fraction(1, 10**9)


@pytest.mark.parametrize(
    ("d", "expected"),
    [
        (Fraction(1, 5), 0.32482),
        (Fraction(1, 4), 0.37097),
        (Fraction(1, 3), 0.42773),
    ],
)
def test_alpha_table(d: Fraction, expected: float) -> None:
    """Test tabulated values on the cubic branch."""
    bound = alpha_lower(d, TOL)
    assert bound.branch is AlphaBranch.CUBIC
    assert bound.value.hi - bound.value.lo <= TOL
    assert abs(float(bound.value.lo) - expected) < 5e-6


def test_alpha_exact_values() -> None:
    """Test α̲(1/9) = 1/4 and α̲(1/2) = 1/2 exactly."""
    ninth = alpha_lower(Fraction(1, 9), TOL)
    assert ninth.branch is AlphaBranch.CLOSED_FORM
    assert ninth.value == ExactRatio(value=Fraction(1, 4))

    half = alpha_lower(Fraction(1, 2), TOL)
    assert half.branch is AlphaBranch.CUBIC
    assert half.value == ExactRatio(value=Fraction(1, 2))


def test_closed_form_threshold() -> None:
    """Test the switch at 3 − 2√2 ≈ 0.1716."""
    assert closed_form_applies(Fraction(17, 100))
    assert not closed_form_applies(Fraction(172, 1000))


def test_closed_form_bracket() -> None:
    """Test that the closed-form enclosure brackets √d/(1+√d)."""
    d = Fraction(1, 7)
    bound = alpha_lower(d, TOL)
    lo, hi = bound.value.lo, bound.value.hi
    assert (lo / (1 - lo)) ** 2 <= d <= (hi / (1 - hi)) ** 2


@pytest.mark.parametrize(
    "d", [Fraction(1, 5), Fraction(1, 4), Fraction(1, 3), Fraction(9, 20)]
)
def test_cubic_branch_matches_cardano(d: Fraction) -> None:
    """Test the bisected root against the real root of the cubic."""
    bound = alpha_lower(d, TOL)
    assert cubic(d, bound.value.lo) <= 0 <= cubic(d, bound.value.hi)
    roots = np.roots([2, 4 - 2 * float(d), 3, 1])
    real = [y.real for y in roots if abs(y.imag) < 1e-9 and -1 < y.real < 0]
    assert len(real) == 1
    alpha = 1 + real[0]
    assert float(bound.value.lo) - 1e-9 <= alpha <= float(bound.value.hi) + 1e-9


@pytest.mark.parametrize(
    "d",
    [
        Fraction(1, 9),
        Fraction(1, 7),
        Fraction(1, 5),
        Fraction(1, 4),
        Fraction(1, 3),
        Fraction(1, 2),
    ],
)
def test_via_star_agrees(d: Fraction) -> None:
    """Test that the (*)-function search overlaps the direct enclosure."""
    tol = Fraction(1, 10**4)
    direct = alpha_lower(d, tol)
    searched = alpha_lower_via_star(d, tol)
    assert searched.lo <= direct.value.hi
    assert direct.value.lo <= searched.hi
    assert searched.hi - searched.lo <= tol


def test_alpha_monotone() -> None:
    """Test that α̲ increases with d."""
    grid = [Fraction(k, 40) for k in range(1, 21)]
    bounds = [alpha_lower(d, Fraction(1, 10**6)).value for d in grid]
    assert all(left.hi < right.lo for left, right in zip(bounds, bounds[1:]))


def test_alpha_certificate() -> None:
    """Test the certificate tag follows the branch."""
    assert (
        alpha_lower(Fraction(1, 9)).to_certificate().theorem_tag
        is TheoremTag.ALPHA_CLOSED_FORM
    )
    wire = alpha_lower(Fraction(1, 5)).to_wire()
    assert wire["branch"] == "Cubic"
    assert wire["certificate"]["theorem_tag"] == "alpha_cubic"
    assert wire["d"] == "1/5"


@pytest.mark.parametrize("d", [Fraction(0), Fraction(-1, 4), Fraction(3, 5)])
def test_alpha_domain(d: Fraction) -> None:
    """Test that d must lie in (0, 1/2]."""
    with pytest.raises(BoundsDomainError):
        alpha_lower(d)
    with pytest.raises(BoundsDomainError):
        alpha_lower_via_star(d)


def test_alpha_rejects_tolerance() -> None:
    """Test that the tolerance must be positive."""
    with pytest.raises(BoundsDomainError):
        alpha_lower(Fraction(1, 5), Fraction(0))
