"""Multigeometric digit sets and the named families built from them."""
from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction

from core.rational import parse_rational
from models.ratio import ExactRatio
from models.sigma import FiniteSigma, MultigeometricSpec

logger = logging.getLogger(__name__)


def sumset_of_multigeometric(coeffs: Sequence[Fraction | int | str]) -> FiniteSigma:
    """All subset sums of the coefficients k₀, ..., k_m.

    Equal subset sums are merged; the achievement set only depends on the
    set of values.

    Args:
        coeffs: Positive rationals

    Returns:
        The digit set {Σ εⱼkⱼ : εⱼ ∈ {0, 1}}

    Raises:
        ValueError: If the list is empty or a coefficient is not positive
    """
    values = [parse_rational(coeff) for coeff in coeffs]
    if not values:
        raise ValueError("Coefficient list is empty")
    for value in values:
        if value <= 0:
            raise ValueError(f"Coefficients must be positive, got {value}")

    sums = {Fraction(0)}
    for value in values:
        sums |= {total + value for total in sums}
    logger.debug(
        "Built multigeometric digit set",
        extra={"coefficients": len(values), "digits": len(sums)},
    )
    return FiniteSigma.of(sums)


def guthrie_nymann_jones(m: int) -> MultigeometricSpec:
    """The sequence (3, 2, ..., 2) with m twos.

    Its digit set is {0, 2, 3, ..., 2m+1, 2m+3} with 2m+2 elements.

    Raises:
        ValueError: If m < 1
    """
    if m < 1:
        raise ValueError(f"Family rank must be at least 1, got {m}")
    return MultigeometricSpec(coefficients=(3,) + (2,) * m)


def ferens_like(k: int, m: int) -> MultigeometricSpec:
    """The sequence (k+m, k+m-1, ..., k).

    When m >= k or m == 1 the digit set is {0, k, k+1, ..., N-k, N} with
    N = (m+1)(2k+m)/2.

    Raises:
        ValueError: If k or m is below 1
    """
    if k < 1 or m < 1:
        raise ValueError(f"Need k >= 1 and m >= 1, got k={k}, m={m}")
    return MultigeometricSpec(coefficients=tuple(range(k + m, k - 1, -1)))


def ferens_like_total(k: int, m: int) -> int:
    """N = (m+1)(2k+m)/2, the largest digit of the Ferens-like digit set."""
    return (m + 1) * (2 * k + m) // 2


def is_ferens_like(sigma: FiniteSigma) -> bool:
    """Check whether Σ is an affine image of a Ferens-like digit set.

    The shape is {0, k, k+1, ..., N-k, N} in units of the smallest gap, for
    any integers k >= 1 and N >= 2k. Sets such as {0, 4, 5, 6, 7, 11} qualify
    even though no multigeometric sequence produces them.
    """
    if sigma.size < 3:
        return False
    elements = sigma.elements
    gaps = [right - left for left, right in zip(elements, elements[1:])]
    if gaps[0] != gaps[-1]:
        return False
    if sigma.size == 3:
        # {0, k, 2k} is {0, 1, 2} in units of k.
        return True
    unit = gaps[1]
    if any(gap != unit for gap in gaps[1:-1]):
        return False
    return (gaps[0] / unit).denominator == 1


KNOWN_SEQUENCES: dict[str, MultigeometricSpec] = {
    "guthrie-nymann": MultigeometricSpec(
        coefficients=(3, 2), ratio=ExactRatio(value=Fraction(1, 4))
    ),
    "jones": MultigeometricSpec(
        coefficients=(3, 2, 2, 2), ratio=ExactRatio(value=Fraction(19, 109))
    ),
    "ferens": MultigeometricSpec(
        coefficients=(7, 6, 5, 4, 3), ratio=ExactRatio(value=Fraction(2, 27))
    ),
    "weinstein-shapiro": MultigeometricSpec(
        coefficients=(8, 7, 6, 5, 4), ratio=ExactRatio(value=Fraction(1, 10))
    ),
}


def known_sequence(name: str) -> MultigeometricSpec:
    """Look up a named sequence.

    Raises:
        ValueError: If the name is not registered
    """
    try:
        return KNOWN_SEQUENCES[name]
    except KeyError as e:
        choices = ", ".join(sorted(KNOWN_SEQUENCES))
        raise ValueError(f"Unknown sequence {name!r}; choose one of: {choices}") from e
