"""Machine-checkable certificates attached to every reported fact."""
from __future__ import annotations

from enum import Enum
from typing import Any

from pydantic import BaseModel, Field


class TheoremTag(str, Enum):
    """Which criterion a certificate instantiates."""

    INTERVAL_THRESHOLD = "interval_threshold"
    NOT_INTERVAL = "not_interval"
    CONTAINS_INTERVAL = "contains_interval"
    NOT_FINITE_UNION = "not_finite_union"
    NULL_SUMSET = "null_sumset"
    SUMSET_COLLISION = "sumset_collision"
    QN_COLLAPSE = "qn_collapse"
    AE_WINDOW = "ae_window"
    ALPHA_CLOSED_FORM = "alpha_closed_form"
    ALPHA_CUBIC = "alpha_cubic"
    QN_ROOT_BRACKET = "qn_root_bracket"


class Certificate(BaseModel):
    """A theorem tag plus the numbers needed to re-check its hypotheses.

    Witness values are JSON-native: rationals as exact strings, integers as
    integers, digit sets as lists of strings.
    """

    theorem_tag: TheoremTag = Field(
        description="Criterion this certificate instantiates"
    )
    witnesses: dict[str, Any] = Field(description="Numbers the replay re-evaluates")

    def to_wire(self) -> dict[str, Any]:
        """Serialize as ``{"theorem_tag": ..., "witnesses": {...}}``."""
        return {"theorem_tag": self.theorem_tag.value, "witnesses": self.witnesses}
