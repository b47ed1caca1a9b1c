"""q-axis diagrams: labelled segments and boundary marks built from a sweep."""
from __future__ import annotations

import logging
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from classify.engine import AeWindow
from classify.sweep import SweepCell
from core.rational import format_decimal, format_rational
from models.verdict import FactKind, Trichotomy

logger = logging.getLogger(__name__)

DIAGRAM_SCHEMA = "diagram/v1"


class DiagramError(ValueError):
    """Exception raised when sweep cells cannot form a diagram."""


class SegmentLabel(str, Enum):
    """What is known about K(Σ;q) on a segment."""

    ZERO_MEASURE = "C0"
    AE_POSITIVE = "lambda+"
    CANTORVAL = "MC"
    INTERVAL = "I"
    UNKNOWN = "unknown"

    @property
    def symbol(self) -> str:
        """Display form used in rendered diagrams."""
        return {
            SegmentLabel.ZERO_MEASURE: "C₀",
            SegmentLabel.AE_POSITIVE: "λ⁺",
            SegmentLabel.CANTORVAL: "MC",
            SegmentLabel.INTERVAL: "I",
            SegmentLabel.UNKNOWN: "?",
        }[self]


class MarkStyle(str, Enum):
    """How a boundary point is drawn."""

    SOLID = "solid"
    HOLLOW = "hollow"
    BOLD = "bold"


class Segment(BaseModel):
    """A labelled stretch of the q-axis."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    lo: Fraction
    hi: Fraction
    label: SegmentLabel
    lo_closed: bool = False
    hi_closed: bool = False

    def to_wire(self) -> dict[str, Any]:
        return {
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "label": self.label.value,
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
        }


class Mark(BaseModel):
    """A boundary point drawn on the axis."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    q: Fraction
    style: MarkStyle
    caption: str

    def to_wire(self) -> dict[str, Any]:
        return {
            "q": format_rational(self.q),
            "style": self.style.value,
            "caption": self.caption,
        }


class DiagramSpec(BaseModel):
    """Segments, marks and the optional λ⁺ annotation band of one diagram."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    segments: list[Segment] = Field(default_factory=list)
    marks: list[Mark] = Field(default_factory=list)
    window: Optional[tuple[Fraction, Fraction]] = Field(
        default=None, description="a.e. positive-measure band, annotation only"
    )

    @model_validator(mode="after")
    def _well_formed(self) -> DiagramSpec:
        for segment in self.segments:
            if not 0 <= segment.lo < segment.hi <= 1:
                raise ValueError(
                    f"Segment [{segment.lo}, {segment.hi}] is not inside [0, 1]"
                )
        for left, right in zip(self.segments, self.segments[1:]):
            if right.lo < left.hi:
                raise ValueError(f"Segments overlap at {right.lo}")
        for mark in self.marks:
            if not 0 < mark.q < 1:
                raise ValueError(f"Mark at {mark.q} is not in (0, 1)")
        return self

    @property
    def boundaries(self) -> list[Fraction]:
        """Points where the label changes, in increasing order."""
        return [mark.q for mark in self.marks]

    def to_wire(self) -> dict[str, Any]:
        """Versioned JSON sidecar content."""
        window = None
        if self.window is not None:
            window = {
                "lo": format_rational(self.window[0]),
                "hi": format_rational(self.window[1]),
                "annotation": "a.e. positive measure",
            }
        return {
            "schema": DIAGRAM_SCHEMA,
            "segments": [segment.to_wire() for segment in self.segments],
            "marks": [mark.to_wire() for mark in self.marks],
            "window": window,
        }


def label_for(cell: SweepCell) -> SegmentLabel:
    """Label of a cell; certified labels win over the λ⁺ annotation."""
    verdict = cell.verdict
    if verdict.has(FactKind.ZERO_MEASURE_CANTOR):
        return SegmentLabel.ZERO_MEASURE
    if verdict.has(FactKind.IS_INTERVAL):
        return SegmentLabel.INTERVAL
    if verdict.trichotomy is Trichotomy.CANTORVAL:
        return SegmentLabel.CANTORVAL
    if verdict.has(FactKind.AE_POSITIVE_WINDOW):
        return SegmentLabel.AE_POSITIVE
    return SegmentLabel.UNKNOWN


def _check_cells(cells: list[SweepCell]) -> None:
    for left, right in zip(cells, cells[1:]):
        touching = left.hi == right.lo and left.hi_closed and right.lo_closed
        if right.lo < left.hi or touching:
            raise DiagramError(
                f"Sweep cells {left.interval_text()} and "
                f"{right.interval_text()} overlap"
            )


def _labelled_pieces(cells: list[SweepCell]) -> list[Segment]:
    pieces: list[Segment] = []
    for cell in cells:
        label = label_for(cell)
        if pieces and pieces[-1].label is label and pieces[-1].hi == cell.lo:
            pieces[-1] = pieces[-1].model_copy(
                update={"hi": cell.hi, "hi_closed": cell.hi_closed}
            )
            continue
        pieces.append(
            Segment(
                lo=cell.lo,
                hi=cell.hi,
                label=label,
                lo_closed=cell.lo_closed,
                hi_closed=cell.hi_closed,
            )
        )
    return pieces


def _label_at(pieces: list[Segment], q: Fraction) -> SegmentLabel:
    for piece in pieces:
        if piece.lo == piece.hi == q:
            return piece.label
        if (piece.lo == q and piece.lo_closed) or (piece.hi == q and piece.hi_closed):
            return piece.label
        if piece.lo < q < piece.hi:
            return piece.label
    return SegmentLabel.UNKNOWN


def _mark_style(
    q: Fraction, own: SegmentLabel, left: Segment | None, right: Segment | None
) -> MarkStyle:
    if right is not None and right.lo == q and right.label is SegmentLabel.INTERVAL:
        return MarkStyle.BOLD
    neighbours = {segment.label for segment in (left, right) if segment is not None}
    if own is SegmentLabel.ZERO_MEASURE and SegmentLabel.AE_POSITIVE in neighbours:
        return MarkStyle.HOLLOW
    return MarkStyle.SOLID


def diagram_from_sweep(
    cells: list[SweepCell], window: AeWindow | None = None
) -> DiagramSpec:
    """Turn ordered sweep cells into a diagram.

    Cells are labelled, equal neighbours merged, and single points removed
    from the segment list: a certified C₀ point next to a λ⁺ region becomes a
    hollow mark, any other isolated point a plain boundary. Boundaries where
    the interval region starts are bold.

    Args:
        cells: Ordered, disjoint sweep cells
        window: The a.e. window drawn as an annotation band

    Returns:
        DiagramSpec with exact boundary values

    Raises:
        DiagramError: If cells overlap or are out of order
    """
    _check_cells(cells)
    pieces = _labelled_pieces(cells)
    segments = [piece for piece in pieces if piece.lo != piece.hi]

    points: set[Fraction] = set()
    for segment in segments:
        points.update({segment.lo, segment.hi})
    points = {point for point in points if 0 < point < 1}

    marks = []
    for q in sorted(points):
        left = next((seg for seg in reversed(segments) if seg.hi == q), None)
        right = next((seg for seg in segments if seg.lo == q), None)
        style = _mark_style(q, _label_at(pieces, q), left, right)
        caption = f"{format_rational(q)} ≈ {format_decimal(q, 6)}"
        marks.append(Mark(q=q, style=style, caption=caption))

    band = (window.lo, window.hi.lo) if window is not None else None
    spec = DiagramSpec(segments=segments, marks=marks, window=band)
    logger.debug(
        "Built diagram",
        extra={"segments": len(segments), "marks": len(marks)},
    )
    return spec
