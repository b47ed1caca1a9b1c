"""Gap statistics of finite digit sets: diameter, gaps, I(Σ), i(Σ) and d."""
from __future__ import annotations

import logging
from collections.abc import Iterator
from fractions import Fraction
from itertools import combinations
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from core.config import EnumerationBudgetError, get_settings
from core.rational import format_decimal, format_rational
from models.sigma import FiniteSigma

logger = logging.getLogger(__name__)


class GapStats(BaseModel):
    """Exact gap statistics of a finite digit set."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    diam: Fraction = Field(description="σ_s − σ₁")
    delta_min: Fraction = Field(description="Smallest adjacent gap δ(Σ)")
    delta_max: Fraction = Field(description="Largest adjacent gap Δ(Σ)")
    big_i: Fraction = Field(description="I(Σ) = Δ/(Δ + diam)")
    little_i: Fraction = Field(description="i(Σ), minimum of I over subsets")
    d: Fraction = Field(description="δ/diam")
    extreme_gap: bool = Field(
        description="Whether Δ(Σ) is the first or the last adjacent gap"
    )

    def to_wire(self) -> dict[str, Any]:
        """Serialize every statistic as an exact rational string."""
        return {
            "diam": format_rational(self.diam),
            "delta_min": format_rational(self.delta_min),
            "delta_max": format_rational(self.delta_max),
            "big_i": format_rational(self.big_i),
            "big_i_decimal": format_decimal(self.big_i),
            "little_i": format_rational(self.little_i),
            "little_i_decimal": format_decimal(self.little_i),
            "d": format_rational(self.d),
            "extreme_gap": self.extreme_gap,
        }


def interval_index(points: tuple[Fraction, ...] | list[Fraction]) -> Fraction:
    """I(B) = Δ(B)/(Δ(B) + diam B) for a sorted set of at least two points."""
    largest = max(right - left for left, right in zip(points, points[1:]))
    return largest / (largest + points[-1] - points[0])


def _hull_candidates(
    elements: tuple[Fraction, ...],
) -> Iterator[tuple[Fraction, int, int]]:
    # For fixed endpoints the hull Σ ∩ [a, b] has the smallest largest gap.
    for start in range(len(elements) - 1):
        largest = Fraction(0)
        for end in range(start + 1, len(elements)):
            largest = max(largest, elements[end] - elements[end - 1])
            yield largest / (largest + elements[end] - elements[start]), start, end


def little_i_witness(sigma: FiniteSigma) -> tuple[Fraction, Fraction]:
    """Endpoints a < b of the first hull Σ ∩ [a, b] attaining i(Σ)."""
    _, start, end = min(_hull_candidates(sigma.elements), key=lambda item: item[0])
    return sigma.elements[start], sigma.elements[end]


def gap_stats(sigma: FiniteSigma) -> GapStats:
    """Compute the gap statistics of a digit set.

    i(Σ) is the minimum over pairs a < b of I(Σ ∩ [a, b]), which equals the
    minimum over all subsets with at least two points.

    Args:
        sigma: The digit set

    Returns:
        GapStats with every field exact
    """
    elements = sigma.elements
    gaps = [right - left for left, right in zip(elements, elements[1:])]
    diam = elements[-1] - elements[0]
    delta_min = min(gaps)
    delta_max = max(gaps)
    little_i = min(value for value, _, _ in _hull_candidates(elements))

    stats = GapStats(
        diam=diam,
        delta_min=delta_min,
        delta_max=delta_max,
        big_i=delta_max / (delta_max + diam),
        little_i=little_i,
        d=delta_min / diam,
        extreme_gap=delta_max in (gaps[0], gaps[-1]),
    )
    logger.debug(
        "Computed gap statistics",
        extra={
            "size": sigma.size,
            "big_i": str(stats.big_i),
            "little_i": str(stats.little_i),
        },
    )
    return stats


def i_bruteforce(sigma: FiniteSigma) -> Fraction:
    """Exact i(Σ) by enumerating every subset with at least two points.

    Args:
        sigma: The digit set

    Returns:
        The minimum of I(B) over all subsets B of Σ with |B| >= 2

    Raises:
        EnumerationBudgetError: If |Σ| exceeds the configured brute-force limit
    """
    limit = get_settings().bruteforce_limit
    if sigma.size > limit:
        raise EnumerationBudgetError("i_bruteforce", 2**sigma.size, 2**limit)

    return min(
        interval_index(subset)
        for size in range(2, sigma.size + 1)
        for subset in combinations(sigma.elements, size)
    )


def progression_bound(sigma: FiniteSigma) -> Fraction:
    """Upper bound 1/L on i(Σ) from the longest equally spaced run of digits.

    A run of L consecutive digits with a common gap has I = 1/L.
    """
    elements = sigma.elements
    longest = 2
    run = 2
    for index in range(2, len(elements)):
        step = elements[index] - elements[index - 1]
        if step == elements[index - 1] - elements[index - 2]:
            run += 1
        else:
            run = 2
        longest = max(longest, run)
    return Fraction(1, longest)
