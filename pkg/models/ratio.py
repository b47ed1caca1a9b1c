"""Contraction ratios as exact rationals or certified rational enclosures."""
from __future__ import annotations

import logging
from enum import Enum
from fractions import Fraction
from typing import Any, Literal, Protocol, Union

from pydantic import ConfigDict, field_validator, model_validator
from pydantic.dataclasses import dataclass

from core.rational import format_decimal, format_rational, parse_rational

logger = logging.getLogger(__name__)

EXACT_CONFIG = ConfigDict(arbitrary_types_allowed=True)


class Decision(str, Enum):
    """Outcome of a comparison that may involve an enclosure."""

    PROVEN = "proven"
    REFUTED = "refuted"
    UNDECIDED = "undecided"

    def negate(self) -> Decision:
        """Swap PROVEN and REFUTED; UNDECIDED stays UNDECIDED."""
        if self is Decision.PROVEN:
            return Decision.REFUTED
        if self is Decision.REFUTED:
            return Decision.PROVEN
        return Decision.UNDECIDED


class Bounded(Protocol):
    """Anything carrying rational lower and upper bounds."""

    @property
    def lo(self) -> Fraction: ...

    @property
    def hi(self) -> Fraction: ...


@dataclass(frozen=True, config=EXACT_CONFIG)
class Enclosure:
    """A closed rational interval proven to contain some real number.

    Attributes:
        lo: Lower endpoint
        hi: Upper endpoint
    """

    lo: Fraction
    hi: Fraction

    @field_validator("lo", "hi", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> Fraction:
        return parse_rational(value)

    @model_validator(mode="after")
    def _ordered(self) -> Enclosure:
        if self.lo > self.hi:
            raise ValueError(
                f"Enclosure endpoints out of order: [{self.lo}, {self.hi}]"
            )
        return self

    @classmethod
    def point(cls, value: Fraction) -> Enclosure:
        """Degenerate enclosure of an exactly known value."""
        return cls(lo=value, hi=value)

    @property
    def width(self) -> Fraction:
        """Width hi - lo."""
        return self.hi - self.lo

    @property
    def is_exact(self) -> bool:
        """True when the enclosure is a single point."""
        return self.lo == self.hi

    def contains(self, value: Fraction) -> bool:
        """Check whether a rational lies in [lo, hi]."""
        return self.lo <= value <= self.hi

    def to_wire(self) -> dict[str, Any]:
        """Serialize with exact endpoints plus an advisory decimal."""
        return {
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "decimal": format_decimal((self.lo + self.hi) / 2),
        }


@dataclass(frozen=True, config=EXACT_CONFIG)
class ExactRatio:
    """An exactly known contraction ratio q in (0, 1)."""

    value: Fraction

    @field_validator("value", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> Fraction:
        return parse_rational(value)

    @field_validator("value")
    @classmethod
    def _in_unit_interval(cls, value: Fraction) -> Fraction:
        if not 0 < value < 1:
            raise ValueError(f"Ratio must lie in (0, 1), got {value}")
        return value

    @property
    def kind(self) -> Literal["exact"]:
        """Wire discriminator."""
        return "exact"

    @property
    def lo(self) -> Fraction:
        """Lower bound (the value itself)."""
        return self.value

    @property
    def hi(self) -> Fraction:
        """Upper bound (the value itself)."""
        return self.value

    @property
    def width(self) -> Fraction:
        """Always zero."""
        return Fraction(0)

    def to_wire(self) -> dict[str, Any]:
        """Serialize as ``{"kind": "exact", "value": ..., "decimal": ...}``."""
        return {
            "kind": "exact",
            "value": format_rational(self.value),
            "decimal": format_decimal(self.value),
        }


@dataclass(frozen=True, config=EXACT_CONFIG)
class RatioEnclosure:
    """A contraction ratio known only through a certified enclosure.

    Attributes:
        lo: Lower endpoint, strictly positive
        hi: Upper endpoint, strictly below one
        root_of: ``(s, n)`` when the enclosed number is the positive root of
            x + x**2 + ... + x**(n-1) = 1/(s-1)
    """

    lo: Fraction
    hi: Fraction
    root_of: tuple[int, int] | None = None

    @field_validator("lo", "hi", mode="before")
    @classmethod
    def _coerce(cls, value: Any) -> Fraction:
        return parse_rational(value)

    @model_validator(mode="after")
    def _inside_unit_interval(self) -> RatioEnclosure:
        if not 0 < self.lo <= self.hi < 1:
            raise ValueError(
                "Ratio enclosure must satisfy 0 < lo <= hi < 1,"
                f" got [{self.lo}, {self.hi}]"
            )
        return self

    @property
    def kind(self) -> Literal["enclosure"]:
        """Wire discriminator."""
        return "enclosure"

    @property
    def width(self) -> Fraction:
        """Width hi - lo."""
        return self.hi - self.lo

    def to_wire(self) -> dict[str, Any]:
        """Serialize with exact endpoints plus an advisory decimal."""
        wire: dict[str, Any] = {
            "kind": "enclosure",
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "decimal": format_decimal((self.lo + self.hi) / 2),
        }
        if self.root_of is not None:
            wire["root_of"] = list(self.root_of)
        return wire


RatioValue = Union[ExactRatio, RatioEnclosure]


def as_ratio(value: RatioValue | Fraction | str | int) -> RatioValue:
    """Wrap a plain rational as an ExactRatio; ratio values pass through."""
    if isinstance(value, (ExactRatio, RatioEnclosure)):
        return value
    return ExactRatio(value=parse_rational(value))


def ratio_from_wire(data: dict[str, Any]) -> RatioValue:
    """Rebuild a ratio from its wire form.

    Raises:
        ValueError: If the payload is malformed
    """
    kind = data.get("kind")
    if kind == "exact":
        return ExactRatio(value=data["value"])
    if kind == "enclosure":
        root_of = data.get("root_of")
        return RatioEnclosure(
            lo=data["lo"],
            hi=data["hi"],
            root_of=tuple(root_of) if root_of is not None else None,
        )
    raise ValueError(f"Unknown ratio kind: {kind!r}")


def _bounds(value: Bounded | Fraction) -> tuple[Fraction, Fraction]:
    if isinstance(value, Fraction):
        return value, value
    return value.lo, value.hi


def less_than(left: Bounded | Fraction, right: Bounded | Fraction) -> Decision:
    """Decide left < right using only the bounds of each side."""
    left_lo, left_hi = _bounds(left)
    right_lo, right_hi = _bounds(right)
    if left_hi < right_lo:
        return Decision.PROVEN
    if left_lo >= right_hi:
        return Decision.REFUTED
    return Decision.UNDECIDED


def at_least(left: Bounded | Fraction, right: Bounded | Fraction) -> Decision:
    """Decide left >= right using only the bounds of each side."""
    return less_than(left, right).negate()


def greater_than(left: Bounded | Fraction, right: Bounded | Fraction) -> Decision:
    """Decide left > right using only the bounds of each side."""
    return less_than(right, left)
