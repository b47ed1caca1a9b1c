"""Checks for integer digit sets at ratios of the form 1/(k+1)."""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from core.rational import format_rational
from models.certificate import Certificate, TheoremTag
from models.sigma import FiniteSigma
from sumsets.enumerate import DigitString, SumsetEnumerator
from sumsets.measure import NullCertificate

logger = logging.getLogger(__name__)


class InvalidRatioFormError(ValueError):
    """Exception raised when a digit set or ratio does not have the required form."""


class RationalRatioReport(BaseModel):
    """Outcome of the bounded search for |Σₙ|·qⁿ < 1 at q = 1/(k+1)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    outcome: Literal["zero_measure", "no_violation"] = Field(
        description=(
            "zero_measure with a certificate, or no_violation up to checked_depth"
        )
    )
    checked_depth: int = Field(description="Deepest level examined")
    cardinalities: list[int] = Field(description="|Σₙ| for n = 1..checked_depth")
    certificate: NullCertificate | None = Field(
        default=None, description="Present when outcome is zero_measure"
    )

    def to_wire(self) -> dict[str, Any]:
        """Serialize the outcome and per-depth cardinalities."""
        return {
            "outcome": self.outcome,
            "checked_depth": self.checked_depth,
            "cardinalities": self.cardinalities,
            "certificate": self.certificate.to_wire() if self.certificate else None,
        }


class CollisionReport(BaseModel):
    """Outcome of the search for equal digit-string sums at q = 1/|Σ|."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    outcome: Literal["collision", "no_collision"] = Field(
        description="collision with a witness, or no_collision up to checked_depth"
    )
    checked_depth: int = Field(description="Deepest level examined")
    sigma: FiniteSigma = Field(description="The digit set")
    witness: tuple[DigitString, DigitString] | None = Field(
        default=None, description="Two distinct digit strings with equal sum"
    )

    def to_certificate(self) -> Certificate | None:
        """Certificate that the two strings collide, or None."""
        if self.witness is None:
            return None
        left, right = self.witness
        return Certificate(
            theorem_tag=TheoremTag.SUMSET_COLLISION,
            witnesses={
                "sigma": self.sigma.to_wire(),
                "q": format_rational(Fraction(1, self.sigma.size)),
                "depth": self.checked_depth,
                "left": [format_rational(digit) for digit in left],
                "right": [format_rational(digit) for digit in right],
            },
        )

    def to_wire(self) -> dict[str, Any]:
        """Serialize the outcome and the replayable certificate."""
        certificate = self.to_certificate()
        return {
            "outcome": self.outcome,
            "checked_depth": self.checked_depth,
            "certificate": certificate.to_wire() if certificate else None,
        }


def _require_integral(sigma: FiniteSigma) -> None:
    if not sigma.is_integral:
        raise InvalidRatioFormError(f"Digit set {sigma} must consist of integers")


def t12_check(sigma: FiniteSigma, q: Fraction, max_depth: int) -> RationalRatioReport:
    """Search for |Σₙ|·qⁿ < 1 with integer digits and q = 1/(k+1).

    For such inputs λ(K) > 0 holds exactly when |Σₙ|·qⁿ >= 1 for every n, so a
    violation is a zero-measure certificate while the positive side can only
    be reported up to the searched depth.

    Args:
        sigma: Integer digit set
        q: Ratio 1/(k+1) with k >= 1
        max_depth: Deepest level to try

    Returns:
        RationalRatioReport with the certificate or the per-depth cardinalities

    Raises:
        InvalidRatioFormError: If Σ is not integral or q has the wrong form
        EnumerationBudgetError: If a level would exceed the configured cap
    """
    _require_integral(sigma)
    if q.numerator != 1 or q.denominator < 2:
        raise InvalidRatioFormError(f"Ratio must be 1/(k+1) with k >= 1, got {q}")
    if max_depth < 1:
        raise ValueError(f"max_depth must be at least 1, got {max_depth}")

    cardinalities: list[int] = []
    enumerator = SumsetEnumerator(sigma, q)
    for level in enumerator.levels(max_depth):
        cardinalities.append(level.cardinality)
        bound = level.cardinality * q**level.depth
        if bound < 1:
            certificate = NullCertificate(
                sigma=sigma,
                q=q,
                depth=level.depth,
                cardinality=level.cardinality,
                bound=bound,
            )
            return RationalRatioReport(
                outcome="zero_measure",
                checked_depth=level.depth,
                cardinalities=cardinalities,
                certificate=certificate,
            )
    return RationalRatioReport(
        outcome="no_violation", checked_depth=max_depth, cardinalities=cardinalities
    )


def full_sumset_check(sigma: FiniteSigma, max_depth: int) -> CollisionReport:
    """Look for two digit strings with equal sum at q = 1/|Σ|.

    A collision means |Σₙ| < |Σ|ⁿ, hence λ(K) = 0 and K contains no interval.

    Args:
        sigma: Integer digit set
        max_depth: Deepest level to try

    Returns:
        CollisionReport with the smallest-depth witness, or no_collision

    Raises:
        InvalidRatioFormError: If Σ is not integral
        EnumerationBudgetError: If a level would exceed the configured cap
    """
    _require_integral(sigma)
    if max_depth < 1:
        raise ValueError(f"max_depth must be at least 1, got {max_depth}")

    enumerator = SumsetEnumerator(sigma, Fraction(1, sigma.size), keep_history=True)
    for level in enumerator.levels(max_depth):
        witness = enumerator.first_collision()
        if witness is not None:
            logger.info(
                "Found sumset collision",
                extra={"depth": level.depth, "digits": sigma.size},
            )
            return CollisionReport(
                outcome="collision",
                checked_depth=level.depth,
                sigma=sigma,
                witness=witness,
            )
    return CollisionReport(outcome="no_collision", checked_depth=max_depth, sigma=sigma)
