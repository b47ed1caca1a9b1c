"""Deterministic SVG rendering of q-axis diagrams with a JSON sidecar."""
from __future__ import annotations

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any

import jinja2

from core.rational import format_rational
from render.diagram import DiagramSpec, SegmentLabel

logger = logging.getLogger(__name__)

TEMPLATE_DIR = Path(__file__).parent / "templates"
TEMPLATE_NAME = "diagram.svg.j2"

CANVAS_WIDTH = 800
CANVAS_HEIGHT = 200
AXIS_START = 40
AXIS_END = 760
AXIS_Y = 100

FILLS = {
    SegmentLabel.ZERO_MEASURE: "#5b5b5b",
    SegmentLabel.AE_POSITIVE: "#f4c27a",
    SegmentLabel.CANTORVAL: "#8c6bb1",
    SegmentLabel.INTERVAL: "#3a9a4b",
    SegmentLabel.UNKNOWN: "none",
}


class RenderError(Exception):
    """Exception raised when a diagram cannot be written."""

    def __init__(self, path: Path, error_msg: str) -> None:
        """Initialize with the target path and the reason.

        Args:
            path: File that could not be written
            error_msg: Underlying error
        """
        self.path = path
        self.error_msg = error_msg
        super().__init__(f"Failed to render {path}: {error_msg}")


def _x(q: Fraction) -> str:
    return f"{AXIS_START + (AXIS_END - AXIS_START) * float(q):.3f}"


def _width(lo: Fraction, hi: Fraction) -> str:
    return f"{(AXIS_END - AXIS_START) * float(hi - lo):.3f}"


def _environment() -> jinja2.Environment:
    return jinja2.Environment(
        loader=jinja2.FileSystemLoader(TEMPLATE_DIR),
        autoescape=jinja2.select_autoescape(["svg", "j2"]),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )


def _context(spec: DiagramSpec) -> dict[str, Any]:
    segments = [
        {
            "x": _x(segment.lo),
            "width": _width(segment.lo, segment.hi),
            "label_x": _x((segment.lo + segment.hi) / 2),
            "fill": FILLS[segment.label],
            "label": segment.label.value,
            "symbol": (
                "" if segment.label is SegmentLabel.UNKNOWN else segment.label.symbol
            ),
            "lo": format_rational(segment.lo),
            "hi": format_rational(segment.hi),
        }
        for segment in spec.segments
    ]
    tick_points = [Fraction(0), *spec.boundaries, Fraction(1)]
    # Alternate rows so that labels of close boundaries stay readable.
    ticks = [
        {"x": _x(point), "text": format_rational(point), "row": index % 2}
        for index, point in enumerate(tick_points)
    ]
    marks = [
        {"x": _x(mark.q), "style": mark.style.value, "caption": mark.caption}
        for mark in spec.marks
    ]
    window = None
    if spec.window is not None:
        lo, hi = spec.window
        window = {"x": _x(lo), "width": _width(lo, hi), "label_x": _x((lo + hi) / 2)}
    return {
        "width": CANVAS_WIDTH,
        "height": CANVAS_HEIGHT,
        "axis_start": AXIS_START,
        "axis_end": AXIS_END,
        "axis_y": AXIS_Y,
        "segments": segments,
        "ticks": ticks,
        "marks": marks,
        "window": window,
    }


def svg_text(spec: DiagramSpec) -> str:
    """Render the diagram to an SVG document string."""
    template = _environment().get_template(TEMPLATE_NAME)
    return template.render(**_context(spec))


def sidecar_path(path: Path) -> Path:
    """JSON sidecar next to the SVG file."""
    return path.with_suffix(".json")


def render_svg(spec: DiagramSpec, path: Path) -> Path:
    """Write the diagram as SVG plus a ``diagram/v1`` JSON sidecar.

    Args:
        spec: The diagram
        path: Destination of the SVG file

    Returns:
        Path of the written SVG file

    Raises:
        RenderError: If either file cannot be written
    """
    path = Path(path)
    document = svg_text(spec)
    sidecar = json.dumps(spec.to_wire(), sort_keys=True, indent=2, ensure_ascii=False)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(document, encoding="utf-8")
        sidecar_path(path).write_text(sidecar + "\n", encoding="utf-8")
    except OSError as e:
        raise RenderError(path, str(e)) from e

    logger.info(
        "Rendered diagram",
        extra={
            "path": str(path),
            "segments": len(spec.segments),
            "marks": len(spec.marks),
        },
    )
    return path
