"""Search for the triple (a, b, c) behind the decreasing null-measure sequence."""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any

from pydantic import field_validator, model_validator
from pydantic.dataclasses import dataclass

from core.rational import format_rational, parse_rational
from models.ratio import EXACT_CONFIG
from models.sigma import FiniteSigma

logger = logging.getLogger(__name__)


@dataclass(frozen=True, config=EXACT_CONFIG)
class StarConditionWitness:
    """Numbers a, b, c with b ≠ c and {a, a+1, b+1, c+1, b+s, c+s} ⊆ Σ.

    Attributes:
        a: Digit with a+1 also a digit
        b: Larger of the two shifted values
        c: Smaller of the two shifted values
    """

    a: Fraction
    b: Fraction
    c: Fraction

    @field_validator("a", "b", "c", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> Fraction:
        return parse_rational(value)

    @model_validator(mode="after")
    def _distinct(self) -> StarConditionWitness:
        if self.b == self.c:
            raise ValueError(f"b and c must differ, both are {self.b}")
        return self

    def required_elements(self, s: int) -> tuple[Fraction, ...]:
        """The six values that must all be digits when |Σ| = s."""
        return (self.a, self.a + 1, self.b + 1, self.c + 1, self.b + s, self.c + s)

    def holds_in(self, sigma: FiniteSigma) -> bool:
        """Re-check membership of all six values in Σ."""
        return all(value in sigma for value in self.required_elements(sigma.size))

    def to_wire(self) -> dict[str, str]:
        return {
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "c": format_rational(self.c),
        }


def star_condition_witness(sigma: FiniteSigma) -> StarConditionWitness | None:
    """Lexicographically smallest (a, b, c) with b > c satisfying the condition.

    Every required value lies in Σ, so a ranges over digits with a+1 ∈ Σ and
    b, c over {x − 1} ∩ {x − s}; the search is exhaustive.

    Args:
        sigma: The digit set

    Returns:
        The witness, or None when no triple exists
    """
    s = sigma.size
    firsts = [value for value in sigma if value + 1 in sigma]
    shifted = sorted({value - 1 for value in sigma} & {value - s for value in sigma})
    if not firsts or len(shifted) < 2:
        logger.debug(f"No condition triple for {sigma}")
        return None

    # With b > c the smallest pair is (second smallest, smallest).
    witness = StarConditionWitness(a=firsts[0], b=shifted[1], c=shifted[0])
    logger.debug("Found condition triple", extra=witness.to_wire())
    return witness
