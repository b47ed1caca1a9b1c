"""Tests for multigeometric digit sets and named sequence families."""
from __future__ import annotations

from fractions import Fraction

import pytest

from core.families import (
    KNOWN_SEQUENCES,
    ferens_like,
    ferens_like_total,
    guthrie_nymann_jones,
    is_ferens_like,
    known_sequence,
    sumset_of_multigeometric,
)
from models.sigma import FiniteSigma


def test_sumset_of_multigeometric() -> None:
    """Test that subset sums are merged into one digit set."""
    sigma = sumset_of_multigeometric((6, 5, 4, 3))
    expected = [0, *range(3, 16), 18]
    assert list(sigma) == [Fraction(value) for value in expected]


def test_sumset_rejects_bad_coefficients() -> None:
    """Test that empty and non-positive coefficient lists are rejected."""
    with pytest.raises(ValueError):
        sumset_of_multigeometric(())
    with pytest.raises(ValueError):
        sumset_of_multigeometric((3, 0))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_guthrie_nymann_jones_digits(m: int) -> None:
    """Test {0, 2, 3, ..., 2m+1, 2m+3}."""
    spec = guthrie_nymann_jones(m)
    assert spec.coefficients == (3,) + (2,) * m
    expected = [0, *range(2, 2 * m + 2), 2 * m + 3]
    assert list(spec.sigma()) == [Fraction(value) for value in expected]


def test_guthrie_nymann_jones_rejects_zero() -> None:
    """Test that the family starts at m = 1."""
    with pytest.raises(ValueError):
        guthrie_nymann_jones(0)


@pytest.mark.parametrize(("k", "m"), [(3, 1), (3, 3), (2, 2), (1, 4)])
def test_ferens_like_shape(k: int, m: int) -> None:
    """Test {0, k, k+1, ..., N-k, N} and its size."""
    spec = ferens_like(k, m)
    sigma = spec.sigma()
    total = ferens_like_total(k, m)
    assert spec.coefficients == tuple(Fraction(v) for v in range(k + m, k - 1, -1))
    assert sigma.maximum == total
    assert sigma.size == total - 2 * k + 3
    assert is_ferens_like(sigma)


def test_ferens_total() -> None:
    """Test N for the (6, 5, 4, 3) sequence."""
    assert ferens_like_total(3, 3) == 18


def test_is_ferens_like_affine(ferens_sigma: FiniteSigma) -> None:
    """Test that recognition survives translation and scaling."""
    assert is_ferens_like(ferens_sigma.shift(Fraction(5, 2)).scale(Fraction(2, 3)))


@pytest.mark.parametrize(
    "digits",
    [(0, 4, 5, 6, 7, 11), (0, 3, 4, 7), (0, 1, 2), (0, 2, 4, 6), (0, 2, 3, 4, 5, 7)],
)
def test_is_ferens_like_accepts(digits: tuple[int, ...]) -> None:
    """Test Ferens shapes, including ones no multigeometric sequence produces."""
    assert is_ferens_like(FiniteSigma.of(digits))


@pytest.mark.parametrize(
    "digits",
    [(0, 1), (0, 1, 3), (0, 1, 2, 4, 5), (0, 3, 4, 5, 9), (0, 2, 3, 4, 6, 7)],
)
def test_is_ferens_like_rejects(digits: tuple[int, ...]) -> None:
    """Test digit sets that are not of the Ferens shape."""
    assert not is_ferens_like(FiniteSigma.of(digits))


def test_known_sequences() -> None:
    """Test the registry of named sequences."""
    assert set(KNOWN_SEQUENCES) == {
        "guthrie-nymann",
        "jones",
        "ferens",
        "weinstein-shapiro",
    }
    jones = known_sequence("jones")
    assert jones.coefficients == (3, 2, 2, 2)
    assert jones.ratio is not None
    assert jones.ratio.lo == Fraction(19, 109)


def test_known_sequence_unknown() -> None:
    """Test that unknown names list the choices."""
    with pytest.raises(ValueError, match="ferens"):
        known_sequence("cantor")
