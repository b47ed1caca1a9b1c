"""Classification of K(Σ;q) across the whole q-axis."""
from __future__ import annotations

import logging
from fractions import Fraction
from functools import partial
from typing import Any

import anyio
import anyio.to_thread
from pydantic import BaseModel, ConfigDict, Field

from classify.engine import ClassificationContext, classify
from core.config import get_settings
from core.rational import format_decimal, format_rational
from models.sigma import FiniteSigma
from models.verdict import Verdict

logger = logging.getLogger(__name__)


class SweepCell(BaseModel):
    """A piece of (0, 1) whose classification was taken at one representative q."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    lo: Fraction = Field(description="Left end")
    hi: Fraction = Field(description="Right end, equal to lo for a point cell")
    lo_closed: bool = Field(description="Whether lo belongs to the cell")
    hi_closed: bool = Field(description="Whether hi belongs to the cell")
    representative: Fraction = Field(description="The q that was classified")
    verdict: Verdict = Field(description="Verdict at the representative")

    @property
    def is_point(self) -> bool:
        """True for a single-point cell [p, p]."""
        return self.lo == self.hi

    def signature(self) -> tuple[frozenset[str], str | None, bool]:
        """What must agree for two neighbouring cells to merge."""
        verdict = self.verdict
        trichotomy = verdict.trichotomy.value if verdict.trichotomy else None
        kinds = frozenset(kind.value for kind in verdict.kinds)
        return kinds, trichotomy, verdict.caveat

    def interval_text(self) -> str:
        """Interval notation with exact endpoints, e.g. ``[1/6, 2/11)``."""
        if self.is_point:
            return f"{{{format_rational(self.lo)}}}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_rational(self.lo)}, {format_rational(self.hi)}{right}"

    def to_wire(self) -> dict[str, Any]:
        return {
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
            "representative": format_rational(self.representative),
            "representative_decimal": format_decimal(self.representative, 6),
            "verdict": self.verdict.to_wire(),
        }


def critical_points(
    ctx: ClassificationContext, resolution: int
) -> list[Fraction]:
    """Sorted exact breakpoints in (0, 1): thresholds, α̲(d) and the grid.

    1/(|Σ|−1) is the first null ratio q₂ of a multigeometric Σ and is kept
    exactly; the later qₙ are irrational and fall inside grid cells.
    """
    points = {Fraction(1, ctx.sigma.size), ctx.stats.little_i, ctx.stats.big_i}
    if ctx.sigma.size > 2:
        points.add(Fraction(1, ctx.sigma.size - 1))
    window = ctx.window
    if window is not None:
        points.add(window.hi.lo)
    points.update(Fraction(j, resolution) for j in range(1, resolution))
    return sorted(point for point in points if 0 < point < 1)


def _cell_bounds(points: list[Fraction]) -> list[tuple[Fraction, Fraction]]:
    # Open gaps between breakpoints interleaved with the breakpoints themselves.
    edges = [Fraction(0), *points, Fraction(1)]
    bounds: list[tuple[Fraction, Fraction]] = []
    for index, (left, right) in enumerate(zip(edges, edges[1:])):
        if index > 0:
            bounds.append((left, left))
        bounds.append((left, right))
    return bounds


def _merge(cells: list[SweepCell]) -> list[SweepCell]:
    merged: list[SweepCell] = []
    for cell in cells:
        if merged and merged[-1].signature() == cell.signature():
            last = merged[-1]
            merged[-1] = last.model_copy(
                update={"hi": cell.hi, "hi_closed": cell.hi_closed}
            )
        else:
            merged.append(cell)
    return merged


async def sweep_async(
    sigma: FiniteSigma,
    resolution: int | None = None,
    depth_budget: int | None = None,
    *,
    multigeometric: bool = False,
) -> list[SweepCell]:
    """Classify one representative per cell, evaluating cells on worker threads.

    Args:
        sigma: The digit set
        resolution: Denominator of the uniform grid, defaults to settings
        depth_budget: Null certificate search depth, defaults to settings
        multigeometric: Σ is the subset-sum set of a multigeometric sequence

    Returns:
        Ordered, disjoint cells covering (0, 1), adjacent equal verdicts merged

    Raises:
        ValueError: If resolution or depth_budget is not positive
    """
    settings = get_settings()
    resolution = settings.sweep_resolution if resolution is None else resolution
    depth_budget = settings.sweep_depth if depth_budget is None else depth_budget
    if resolution < 1:
        raise ValueError(f"resolution must be at least 1, got {resolution}")
    if depth_budget < 1:
        raise ValueError(f"depth_budget must be at least 1, got {depth_budget}")

    ctx = ClassificationContext(sigma, multigeometric=multigeometric).prepare()
    bounds = _cell_bounds(critical_points(ctx, resolution))
    verdicts: list[Verdict | None] = [None] * len(bounds)
    limiter = anyio.CapacityLimiter(settings.sweep_workers)

    async def evaluate(index: int, representative: Fraction) -> None:
        job = partial(classify, sigma, representative, depth_budget, context=ctx)
        verdicts[index] = await anyio.to_thread.run_sync(job, limiter=limiter)

    logger.info(f"Sweeping {len(bounds)} cells for {sigma}")
    async with anyio.create_task_group() as tg:
        for index, (lo, hi) in enumerate(bounds):
            tg.start_soon(evaluate, index, (lo + hi) / 2, name=f"cell-{index}")

    cells = [
        SweepCell(
            lo=lo,
            hi=hi,
            lo_closed=lo == hi,
            hi_closed=lo == hi,
            representative=(lo + hi) / 2,
            verdict=verdict,
        )
        for (lo, hi), verdict in zip(bounds, verdicts)
        if verdict is not None
    ]
    merged = _merge(cells)
    logger.info(
        "Sweep finished",
        extra={"cells": len(cells), "merged": len(merged), "resolution": resolution},
    )
    return merged


def sweep(
    sigma: FiniteSigma,
    resolution: int | None = None,
    depth_budget: int | None = None,
    *,
    multigeometric: bool = False,
) -> list[SweepCell]:
    """Blocking form of ``sweep_async``."""
    return anyio.run(
        partial(
            sweep_async,
            sigma,
            resolution,
            depth_budget,
            multigeometric=multigeometric,
        )
    )
