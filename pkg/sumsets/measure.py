"""Zero-measure certificates and interval-cover upper bounds for K(Σ;q)."""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from core.rational import format_decimal, format_rational
from models.certificate import Certificate, TheoremTag
from models.sigma import FiniteSigma
from sumsets.enumerate import DigitString, ScaledSumset, SumsetEnumerator

logger = logging.getLogger(__name__)


class SumsetReport(BaseModel):
    """Size of Σₙ and the first pair of colliding digit strings, if any."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    depth: int = Field(description="n")
    cardinality: int = Field(description="|Σₙ|")
    bound: Fraction = Field(description="|Σₙ|·qⁿ")
    first_collision: tuple[DigitString, DigitString] | None = Field(
        default=None, description="Two distinct digit strings with equal value"
    )

    def to_wire(self) -> dict[str, Any]:
        """Serialize with exact rational strings."""
        collision = None
        if self.first_collision is not None:
            collision = [
                [format_rational(digit) for digit in string]
                for string in self.first_collision
            ]
        return {
            "depth": self.depth,
            "cardinality": self.cardinality,
            "bound": format_rational(self.bound),
            "bound_decimal": format_decimal(self.bound),
            "first_collision": collision,
        }


class NullCertificate(BaseModel):
    """|Σₙ|·qⁿ < 1 at depth n, so K(Σ;q) has Lebesgue measure zero."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    sigma: FiniteSigma = Field(description="The digit set")
    q: Fraction = Field(description="The exact ratio")
    depth: int = Field(description="Smallest qualifying n")
    cardinality: int = Field(description="|Σₙ|")
    bound: Fraction = Field(description="|Σₙ|·qⁿ, strictly below one")

    def to_certificate(self) -> Certificate:
        """Wrap as a replayable certificate."""
        return Certificate(
            theorem_tag=TheoremTag.NULL_SUMSET,
            witnesses={
                "sigma": self.sigma.to_wire(),
                "q": format_rational(self.q),
                "depth": self.depth,
                "cardinality": self.cardinality,
                "bound": format_rational(self.bound),
            },
        )

    def to_wire(self) -> dict[str, Any]:
        """Serialize the certificate plus a decimal rendering of the bound."""
        return {
            "depth": self.depth,
            "cardinality": self.cardinality,
            "bound": format_rational(self.bound),
            "bound_decimal": format_decimal(self.bound),
            "certificate": self.to_certificate().to_wire(),
        }


class CoverReport(BaseModel):
    """Exact length of the depth-n interval cover of K(Σ;q)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    depth: int = Field(description="n")
    interval_count: int = Field(description="Connected components of the cover")
    total_length: Fraction = Field(description="Length of the union of cover intervals")
    diam_k: Fraction = Field(description="diam K = diam(Σ)/(1−q)")

    def to_wire(self) -> dict[str, Any]:
        """Serialize with exact rational strings."""
        return {
            "depth": self.depth,
            "interval_count": self.interval_count,
            "total_length": format_rational(self.total_length),
            "total_length_decimal": format_decimal(self.total_length),
            "diam_k": format_rational(self.diam_k),
        }


def _bound(level: ScaledSumset, q: Fraction) -> Fraction:
    return level.cardinality * q**level.depth


def null_certificate(
    sigma: FiniteSigma, q: Fraction, max_depth: int
) -> NullCertificate | None:
    """Find the smallest n <= max_depth with |Σₙ|·qⁿ < 1.

    Args:
        sigma: The digit set
        q: Exact ratio in (0, 1)
        max_depth: Deepest level to try

    Returns:
        The certificate, or None when no depth up to max_depth qualifies

    Raises:
        EnumerationBudgetError: If a level would exceed the configured cap
    """
    if max_depth < 1:
        raise ValueError(f"max_depth must be at least 1, got {max_depth}")
    enumerator = SumsetEnumerator(sigma, q)
    for level in enumerator.levels(max_depth):
        bound = _bound(level, q)
        if bound < 1:
            logger.info(
                "Found null certificate",
                extra={"depth": level.depth, "cardinality": level.cardinality},
            )
            return NullCertificate(
                sigma=sigma,
                q=q,
                depth=level.depth,
                cardinality=level.cardinality,
                bound=bound,
            )
    logger.info(f"No null certificate for {sigma} at q={q} up to depth {max_depth}")
    return None


def sumset_report(sigma: FiniteSigma, q: Fraction, n: int) -> SumsetReport:
    """Cardinality of Σₙ, the bound |Σₙ|·qⁿ and the first collision up to depth n."""
    if n < 1:
        raise ValueError(f"Depth must be at least 1, got {n}")
    enumerator = SumsetEnumerator(sigma, q, keep_history=True)
    level = enumerator.step()
    while level.depth < n:
        level = enumerator.step()
    return SumsetReport(
        depth=level.depth,
        cardinality=level.cardinality,
        bound=_bound(level, q),
        first_collision=enumerator.first_collision(),
    )


def _cover_parts(
    sigma: FiniteSigma, q: Fraction, n: int
) -> tuple[ScaledSumset, int, int]:
    if n < 1:
        raise ValueError(f"Depth must be at least 1, got {n}")
    enumerator = SumsetEnumerator(sigma, q)
    level = enumerator.step()
    while level.depth < n:
        level = enumerator.step()
    p, r = q.numerator, q.denominator
    # Interval length qⁿ·diam K in units of 1/((r-p)·scale).
    span = p**n * int((sigma.maximum - sigma.minimum) * enumerator.lcm)
    return level, span, r - p


def cover_length(sigma: FiniteSigma, q: Fraction, n: int) -> CoverReport:
    """Exact length of ⋃_{x∈Σₙ} [x, x + qⁿ·diam K].

    The union covers K(Σ;q) = Σₙ + qⁿK, so its length bounds λ(K) from above.

    Args:
        sigma: The digit set
        q: Exact ratio in (0, 1)
        n: Depth, at least 1

    Returns:
        CoverReport with the exact union length and component count
    """
    level, span, gap_scale = _cover_parts(sigma, q, n)
    points = level.values.tolist()
    gaps = [
        (int(right) - int(left)) * gap_scale
        for left, right in zip(points, points[1:])
    ]
    covered = sum(min(gap, span) for gap in gaps) + span
    components = 1 + sum(1 for gap in gaps if gap > span)
    total = Fraction(covered, gap_scale * level.scale)
    report = CoverReport(
        depth=n,
        interval_count=components,
        total_length=total,
        diam_k=(sigma.maximum - sigma.minimum) / (1 - q),
    )
    logger.debug(
        "Computed cover length",
        extra={"depth": n, "components": components, "total": str(total)},
    )
    return report


def cover_intervals(
    sigma: FiniteSigma, q: Fraction, n: int
) -> list[tuple[Fraction, Fraction]]:
    """Merged depth-n cover intervals of K(Σ;q) in its own coordinates."""
    level, span, gap_scale = _cover_parts(sigma, q, n)
    offset = q**n * sigma.minimum / (1 - q)
    length = Fraction(span, gap_scale * level.scale)
    values = [Fraction(int(value), level.scale) for value in level.values.tolist()]

    intervals: list[tuple[Fraction, Fraction]] = []
    start = values[0]
    end = values[0] + length
    for value in values[1:]:
        if value > end:
            intervals.append((start + offset, end + offset))
            start = value
        end = value + length
    intervals.append((start + offset, end + offset))
    return intervals
