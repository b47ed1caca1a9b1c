"""Lower bound α̲(d) for the a.e. positive-measure threshold, d = δ(Σ)/diam(Σ).

Two independent evaluations are provided: ``alpha_lower`` uses the closed
form √d/(1+√d) for d ≤ 3−2√2 and the root of a cubic up to d = 1/2;
``alpha_lower_via_star`` searches for the (*)-function whose minimum is −d
and encloses its critical point.
"""
from __future__ import annotations

import logging
from enum import Enum
from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from bounds.star import BoundsDomainError, StarFunction, star_min
from core.config import get_settings
from core.rational import (
    bits_for_tolerance,
    format_decimal,
    format_rational,
    sqrt_enclosure,
)
from core.refine import refine_until_decided
from models.certificate import Certificate, TheoremTag
from models.ratio import (
    Decision,
    ExactRatio,
    RatioEnclosure,
    RatioValue,
)

logger = logging.getLogger(__name__)

D_MAX = Fraction(1, 2)
MAX_STAR_INDEX = 64


class AlphaBranch(str, Enum):
    """Which formula produced the bound."""

    CLOSED_FORM = "ClosedForm"
    CUBIC = "Cubic"


class AlphaBound(BaseModel):
    """Certified enclosure of the lower bound α̲(d)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    d: Fraction = Field(description="δ(Σ)/diam(Σ)")
    value: RatioValue = Field(description="Enclosure of α̲(d)")
    branch: AlphaBranch = Field(description="Closed form or cubic root")

    def to_certificate(self) -> Certificate:
        """Certificate whose replay re-checks the enclosure by exact evaluation."""
        tag = (
            TheoremTag.ALPHA_CLOSED_FORM
            if self.branch is AlphaBranch.CLOSED_FORM
            else TheoremTag.ALPHA_CUBIC
        )
        return Certificate(
            theorem_tag=tag,
            witnesses={
                "d": format_rational(self.d),
                "lo": format_rational(self.value.lo),
                "hi": format_rational(self.value.hi),
            },
        )

    def to_wire(self) -> dict[str, Any]:
        """Serialize as a lower bound with exact endpoints and a decimal."""
        return {
            "d": format_rational(self.d),
            "branch": self.branch.value,
            "lower_bound": self.value.to_wire(),
            "certificate": self.to_certificate().to_wire(),
        }


def _check_d(d: Fraction) -> None:
    if not 0 < d <= D_MAX:
        raise BoundsDomainError("d", d, "(0, 1/2]")


def closed_form_applies(d: Fraction) -> bool:
    """True when d ≤ 3 − 2√2, decided exactly as (3 − d)² ≥ 8."""
    return (3 - d) ** 2 >= 8


def cubic(d: Fraction, x: Fraction) -> Fraction:
    """2(x−1)³ + (4−2d)(x−1)² + 3(x−1) + 1."""
    y = x - 1
    return 2 * y**3 + (4 - 2 * d) * y**2 + 3 * y + 1


def _as_ratio(lo: Fraction, hi: Fraction) -> RatioValue:
    if lo == hi:
        return ExactRatio(value=lo)
    return RatioEnclosure(lo=lo, hi=hi)


def _closed_form(d: Fraction, tol: Fraction) -> RatioValue:
    # s/(1+s) is increasing, so the √d enclosure maps endpoint-wise.
    root_lo, root_hi = sqrt_enclosure(d, bits_for_tolerance(tol))
    return _as_ratio(root_lo / (1 + root_lo), root_hi / (1 + root_hi))


def _cubic_root(d: Fraction, tol: Fraction) -> RatioValue:
    # cubic(d, 0) = −2d < 0 and cubic(d, 1) = 1 > 0.
    lo, hi = Fraction(0), Fraction(1)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        value = cubic(d, mid)
        if value == 0:
            return ExactRatio(value=mid)
        if value < 0:
            lo = mid
        else:
            hi = mid
    return _as_ratio(lo, hi)


def alpha_lower(d: Fraction, tol: Fraction | None = None) -> AlphaBound:
    """Certified enclosure of α̲(d) for 0 < d ≤ 1/2.

    Args:
        d: Ratio of smallest gap to diameter
        tol: Enclosure width, defaults to the configured tolerance

    Returns:
        AlphaBound from the closed form when d ≤ 3 − 2√2, else from the cubic

    Raises:
        BoundsDomainError: If d is not in (0, 1/2]
    """
    _check_d(d)
    tol = tol if tol is not None else get_settings().tolerance_value
    if tol <= 0:
        raise BoundsDomainError("tol", tol, "(0, ∞)")

    if closed_form_applies(d):
        branch, value = AlphaBranch.CLOSED_FORM, _closed_form(d, tol)
    else:
        branch, value = AlphaBranch.CUBIC, _cubic_root(d, tol)
    bound = AlphaBound(d=d, value=value, branch=branch)
    logger.debug(
        "Computed alpha lower bound",
        extra={
            "d": str(d),
            "branch": bound.branch.value,
            "value": format_decimal((bound.value.lo + bound.value.hi) / 2),
        },
    )
    return bound


def _min_at_most(g: StarFunction, target: Fraction, bit_cap: int) -> Decision:
    """Decide min g ≤ target, refining the minimum enclosure as needed."""

    def decide(bits: int) -> Decision:
        _, minimum = star_min(g, Fraction(1, 2**bits))
        if minimum.hi <= target:
            return Decision.PROVEN
        if minimum.lo > target:
            return Decision.REFUTED
        return Decision.UNDECIDED

    outcome, _ = refine_until_decided(
        decide,
        start_bits=16,
        what=f"min g[n={g.n}, gamma={g.gamma}] <= {target}",
        bit_cap=bit_cap,
    )
    return outcome


def _star_index(d: Fraction, bit_cap: int) -> int:
    # Over γ ∈ [−1, 1] the minima of g_{n,γ} sweep [min g_{n,−1}, min g_{n−1,−1}],
    # so the first n whose γ = −1 minimum reaches −d is the right one.
    for n in range(1, MAX_STAR_INDEX + 1):
        g = StarFunction(n=n, gamma=Fraction(-1))
        if _min_at_most(g, -d, bit_cap) is Decision.PROVEN:
            return n
    raise BoundsDomainError(
        "d", d, f"reach of (*)-functions with n <= {MAX_STAR_INDEX}"
    )


def alpha_lower_via_star(d: Fraction, tol: Fraction | None = None) -> RatioValue:
    """Enclose α̲(d) as the critical point of the (*)-function with minimum −d.

    The index n is fixed by bracketing −d between consecutive γ = −1 minima,
    then γ is bisected: the minimum increases with γ while the critical point
    decreases, so the two γ endpoints bracket the target critical point.

    Args:
        d: Ratio of smallest gap to diameter, in (0, 1/2]
        tol: Enclosure width, defaults to the configured tolerance

    Returns:
        RatioValue enclosing α̲(d)

    Raises:
        BoundsDomainError: If d is not in (0, 1/2]
        UndecidedComparisonError: If a minimum comparison cannot be decided
    """
    _check_d(d)
    tol = tol if tol is not None else get_settings().tolerance_value
    if tol <= 0:
        raise BoundsDomainError("tol", tol, "(0, ∞)")
    inner = tol / 4
    bit_cap = 16 * bits_for_tolerance(inner)

    n = _star_index(d, bit_cap)
    gamma_lo, gamma_hi = Fraction(-1), Fraction(1)
    # min g_{n,γ_lo} ≤ −d < min g_{n,γ_hi}; x* at γ_hi is left of x* at γ_lo.
    right, _ = star_min(StarFunction(n=n, gamma=gamma_lo), inner)
    left, _ = star_min(StarFunction(n=n, gamma=gamma_hi), inner)
    rounds = 0
    while left.lo <= 0 or right.hi - left.lo > tol:
        gamma = (gamma_lo + gamma_hi) / 2
        g = StarFunction(n=n, gamma=gamma)
        if _min_at_most(g, -d, bit_cap) is Decision.PROVEN:
            gamma_lo = gamma
            right, _ = star_min(g, inner)
        else:
            gamma_hi = gamma
            left, _ = star_min(g, inner)
        rounds += 1

    logger.debug(
        "Enclosed alpha via (*)-function",
        extra={"d": str(d), "n": n, "rounds": rounds},
    )
    return _as_ratio(left.lo, right.hi)
