"""Digit sets and multigeometric sequence specifications."""
from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from functools import cached_property
from fractions import Fraction
from typing import Any

from pydantic import field_validator
from pydantic.dataclasses import dataclass

from core.rational import (
    RationalParseError,
    format_rational,
    lcm_of_denominators,
    parse_rational,
)
from models.ratio import EXACT_CONFIG, RatioValue, as_ratio

logger = logging.getLogger(__name__)


class SigmaParseError(ValueError):
    """Exception raised when a digit set or sequence spec cannot be read."""

    def __init__(self, text: str, error_msg: str) -> None:
        """Initialize with the input text and the reason.

        Args:
            text: The text that failed to parse
            error_msg: Why it was rejected
        """
        self.text = text
        self.error_msg = error_msg
        super().__init__(f"Invalid digit set {text!r}: {error_msg}")


@dataclass(frozen=True, config=EXACT_CONFIG)
class FiniteSigma:
    """A finite digit set Σ of exact rationals, stored strictly increasing.

    Attributes:
        elements: The digits σ₁ < σ₂ < ... < σ_s, with s >= 2
    """

    elements: tuple[Fraction, ...]

    @field_validator("elements", mode="before")
    @classmethod
    def _normalize(cls, value: Any) -> tuple[Fraction, ...]:
        digits = sorted(parse_rational(item) for item in value)
        for left, right in zip(digits, digits[1:]):
            if left == right:
                raise ValueError(f"Duplicate digit {left}")
        if len(digits) < 2:
            raise ValueError(f"Need at least two digits, got {len(digits)}")
        return tuple(digits)

    @classmethod
    def of(cls, values: Iterable[Fraction | int | str]) -> FiniteSigma:
        """Build a digit set from any iterable of rationals."""
        return cls(elements=tuple(values))

    @classmethod
    def parse(cls, text: str) -> FiniteSigma:
        """Parse a comma-separated list such as ``"0,2,3,5"`` or ``"1/2,3/4"``.

        Raises:
            SigmaParseError: If any item is malformed or the set is invalid
        """
        items = [item.strip() for item in text.split(",") if item.strip()]
        try:
            return cls.of(parse_rational(item) for item in items)
        except (RationalParseError, ValueError) as e:
            raise SigmaParseError(text, str(e)) from e

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.elements)

    def __contains__(self, value: object) -> bool:
        return value in self._lookup

    @cached_property
    def _lookup(self) -> frozenset[Fraction]:
        return frozenset(self.elements)

    @property
    def size(self) -> int:
        """Number of digits s = |Σ|."""
        return len(self.elements)

    @property
    def minimum(self) -> Fraction:
        """Smallest digit σ₁."""
        return self.elements[0]

    @property
    def maximum(self) -> Fraction:
        """Largest digit σ_s."""
        return self.elements[-1]

    @property
    def is_integral(self) -> bool:
        """True when every digit is an integer."""
        return all(value.denominator == 1 for value in self.elements)

    @property
    def common_denominator(self) -> int:
        """lcm of the digit denominators."""
        return lcm_of_denominators(self.elements)

    def shift(self, offset: Fraction) -> FiniteSigma:
        """Translate every digit by ``offset``."""
        return FiniteSigma.of(value + offset for value in self.elements)

    def scale(self, factor: Fraction) -> FiniteSigma:
        """Multiply every digit by a positive ``factor``.

        Raises:
            ValueError: If factor is not positive
        """
        if factor <= 0:
            raise ValueError(f"Scale factor must be positive, got {factor}")
        return FiniteSigma.of(value * factor for value in self.elements)

    def to_wire(self) -> list[str]:
        """Digits as exact rational strings."""
        return [format_rational(value) for value in self.elements]

    def __str__(self) -> str:
        return "{" + ",".join(self.to_wire()) + "}"


@dataclass(frozen=True, config=EXACT_CONFIG)
class MultigeometricSpec:
    """A multigeometric sequence (k₀, ..., k_m; q).

    Attributes:
        coefficients: Positive rationals k₀, ..., k_m
        ratio: The common ratio q, or None when only the digit set matters
    """

    coefficients: tuple[Fraction, ...]
    ratio: RatioValue | None = None

    @field_validator("coefficients", mode="before")
    @classmethod
    def _positive(cls, value: Any) -> tuple[Fraction, ...]:
        coefficients = tuple(parse_rational(item) for item in value)
        if not coefficients:
            raise ValueError("Coefficient list is empty")
        for coefficient in coefficients:
            if coefficient <= 0:
                raise ValueError(f"Coefficients must be positive, got {coefficient}")
        return coefficients

    @classmethod
    def parse(cls, text: str) -> MultigeometricSpec:
        """Parse ``"k0,k1,...,km;q"``; the ``;q`` part is optional.

        Raises:
            SigmaParseError: If the text is malformed
        """
        head, _, tail = text.partition(";")
        items = [item.strip() for item in head.split(",") if item.strip()]
        try:
            ratio = as_ratio(tail.strip()) if tail.strip() else None
            return cls(coefficients=tuple(items), ratio=ratio)
        except (RationalParseError, ValueError) as e:
            raise SigmaParseError(text, str(e)) from e

    def sigma(self) -> FiniteSigma:
        """The digit set Σ of all subset sums of the coefficients."""
        from core.families import sumset_of_multigeometric

        return sumset_of_multigeometric(list(self.coefficients))

    def to_wire(self) -> dict[str, Any]:
        """Serialize coefficients and ratio."""
        return {
            "coefficients": [format_rational(value) for value in self.coefficients],
            "ratio": self.ratio.to_wire() if self.ratio is not None else None,
        }
