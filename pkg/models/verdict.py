"""Structural verdicts on K(Σ;q): certified facts plus an optional trichotomy label."""
from __future__ import annotations

import logging
from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, Field, ValidationError, model_validator

from models.certificate import Certificate, TheoremTag

logger = logging.getLogger(__name__)


class FactKind(str, Enum):
    """Structural facts the classifier can certify."""

    IS_INTERVAL = "IsInterval"
    NOT_INTERVAL = "NotInterval"
    CONTAINS_INTERVAL = "ContainsInterval"
    NOT_FINITE_UNION = "NotFiniteUnionOfIntervals"
    ZERO_MEASURE_CANTOR = "ZeroMeasureCantor"
    AE_POSITIVE_WINDOW = "AePositiveWindowMember"


class Trichotomy(str, Enum):
    """The three possible shapes of an achievement set."""

    FINITE_UNION = "FiniteUnionOfIntervals"
    CANTOR_SET = "CantorSet"
    CANTORVAL = "Cantorval"


# Pairs of facts that can never hold together.
EXCLUSIVE_KINDS: tuple[tuple[FactKind, FactKind], ...] = (
    (FactKind.IS_INTERVAL, FactKind.NOT_INTERVAL),
    (FactKind.IS_INTERVAL, FactKind.NOT_FINITE_UNION),
    (FactKind.IS_INTERVAL, FactKind.ZERO_MEASURE_CANTOR),
    (FactKind.CONTAINS_INTERVAL, FactKind.ZERO_MEASURE_CANTOR),
)


class VerdictFormatError(ValueError):
    """Exception raised when a verdict document does not have the wire shape."""


class Fact(BaseModel):
    """A structural fact together with the certificate that proves it."""

    kind: FactKind = Field(description="Which fact holds")
    certificate: Certificate = Field(description="Re-checkable witness")

    def to_wire(self) -> dict[str, Any]:
        """Flatten into ``{"kind", "theorem_tag", "witnesses"}``."""
        return {
            "kind": self.kind.value,
            "theorem_tag": self.certificate.theorem_tag.value,
            "witnesses": self.certificate.witnesses,
        }


class Verdict(BaseModel):
    """Certified facts about K(Σ;q) and the trichotomy label they imply.

    Attributes:
        facts: At most one fact per kind, in emission order
        trichotomy: Label implied by the facts, if any
        caveat: True when the label relies on a trichotomy not known to hold for Σ
    """

    facts: list[Fact] = Field(default_factory=list, description="Certified facts")
    trichotomy: Optional[Trichotomy] = Field(
        default=None, description="Finite union, Cantor set or Cantorval"
    )
    caveat: bool = Field(
        default=False, description="Label assumes the trichotomy applies to Σ"
    )

    @model_validator(mode="after")
    def _consistent(self) -> Verdict:
        kinds = [fact.kind for fact in self.facts]
        if len(set(kinds)) != len(kinds):
            raise ValueError("A verdict holds at most one fact of each kind")
        present = set(kinds)
        for left, right in EXCLUSIVE_KINDS:
            if left in present and right in present:
                raise ValueError(f"Contradictory facts: {left.value} and {right.value}")
        required = {
            Trichotomy.FINITE_UNION: {FactKind.IS_INTERVAL},
            Trichotomy.CANTOR_SET: {FactKind.ZERO_MEASURE_CANTOR},
            Trichotomy.CANTORVAL: {
                FactKind.CONTAINS_INTERVAL,
                FactKind.NOT_FINITE_UNION,
            },
        }
        if self.trichotomy is not None and not required[self.trichotomy] <= present:
            label = self.trichotomy.value
            raise ValueError(f"Label {label} is not implied by the facts")
        if self.caveat and self.trichotomy is None:
            raise ValueError("A caveat needs a trichotomy label")
        return self

    @property
    def kinds(self) -> frozenset[FactKind]:
        """Set of fact kinds present."""
        return frozenset(fact.kind for fact in self.facts)

    def has(self, kind: FactKind) -> bool:
        """Check whether a fact of the given kind is present."""
        return kind in self.kinds

    def fact(self, kind: FactKind) -> Fact | None:
        """The fact of the given kind, or None."""
        for fact in self.facts:
            if fact.kind is kind:
                return fact
        return None

    @property
    def certificates(self) -> list[Certificate]:
        """Certificates of every fact, in order."""
        return [fact.certificate for fact in self.facts]

    def to_wire(self) -> dict[str, Any]:
        """Serialize as ``{"facts": [...], "trichotomy": ..., "caveat": ...}``."""
        return {
            "facts": [fact.to_wire() for fact in self.facts],
            "trichotomy": self.trichotomy.value if self.trichotomy else None,
            "caveat": self.caveat,
        }

    @classmethod
    def from_wire(cls, document: dict[str, Any]) -> Verdict:
        """Rebuild a verdict from its wire form, enforcing the wire shape.

        Raises:
            VerdictFormatError: If keys are missing or unknown, or values are invalid
        """
        if not isinstance(document, dict):
            raise VerdictFormatError(
                f"Verdict must be an object, got {type(document).__name__}"
            )
        expected = {"facts", "trichotomy", "caveat"}
        if set(document) != expected:
            raise VerdictFormatError(
                f"Verdict keys must be {sorted(expected)}, got {sorted(document)}"
            )
        facts_wire = document["facts"]
        if not isinstance(facts_wire, list):
            raise VerdictFormatError("facts must be a list")

        try:
            facts = []
            for item in facts_wire:
                if not isinstance(item, dict) or set(item) != {
                    "kind",
                    "theorem_tag",
                    "witnesses",
                }:
                    raise VerdictFormatError(f"Malformed fact: {item!r}")
                facts.append(
                    Fact(
                        kind=FactKind(item["kind"]),
                        certificate=Certificate(
                            theorem_tag=TheoremTag(item["theorem_tag"]),
                            witnesses=item["witnesses"],
                        ),
                    )
                )
            trichotomy = document["trichotomy"]
            return cls(
                facts=facts,
                trichotomy=Trichotomy(trichotomy) if trichotomy is not None else None,
                caveat=document["caveat"],
            )
        except VerdictFormatError:
            raise
        except (ValidationError, ValueError) as e:
            raise VerdictFormatError(f"Invalid verdict document: {e}") from e
