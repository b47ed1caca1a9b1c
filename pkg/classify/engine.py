"""Classification engine: threshold criteria and null certificates as verdicts."""
from __future__ import annotations

import logging
from fractions import Fraction
from functools import cached_property
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from bounds.alpha import AlphaBound, alpha_lower
from core.config import EnumerationBudgetError, get_settings
from core.families import is_ferens_like
from core.gaps import GapStats, gap_stats, little_i_witness
from core.rational import (
    bits_for_tolerance,
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
    as_ratio,
    at_least,
    less_than,
)
from models.sigma import FiniteSigma
from models.verdict import Fact, FactKind, Trichotomy, Verdict
from nullseq.qn import QnCertificate, collapsed_bound
from nullseq.witness import StarConditionWitness, star_condition_witness
from sumsets.measure import null_certificate

logger = logging.getLogger(__name__)

WINDOW_D_MAX = Fraction(1, 2)


class EnclosureTooWideError(ValueError):
    """Exception raised when a ratio enclosure is too wide to classify."""

    def __init__(self, width: Fraction, limit: Fraction) -> None:
        """Initialize with the offending width and the configured limit.

        Args:
            width: Width of the rejected enclosure
            limit: Configured maximum width
        """
        self.width = width
        self.limit = limit
        super().__init__(f"Ratio enclosure width {width} exceeds the maximum {limit}")


class AeWindow(BaseModel):
    """The window (1/|Σ|, α̲(d)) where K(Σ;q) has positive measure for a.e. q.

    This is an annotation: no individual q in the window is certified.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    lo: Fraction = Field(description="1/|Σ|")
    hi: RatioValue = Field(description="Enclosure of α̲(d)")
    d: Fraction = Field(description="δ(Σ)/diam(Σ)")
    bound: AlphaBound = Field(description="The α̲(d) computation")

    def contains(self, q: RatioValue) -> Decision:
        """Decide 1/|Σ| < q < α̲(d)."""
        above = less_than(self.lo, q)
        below = less_than(q, self.hi)
        if above is Decision.PROVEN and below is Decision.PROVEN:
            return Decision.PROVEN
        if Decision.REFUTED in (above, below):
            return Decision.REFUTED
        return Decision.UNDECIDED

    def interval_window(
        self, tol: Fraction | None = None
    ) -> tuple[RatioValue, RatioValue]:
        """Enclosures of (1/√|Σ|, √α̲(d)).

        K(Σ;x) contains an interval for almost every x in this window.
        """
        bits = bits_for_tolerance(tol or get_settings().tolerance_value)
        lo_low, lo_high = sqrt_enclosure(self.lo, bits)
        hi_low, _ = sqrt_enclosure(self.hi.lo, bits)
        _, hi_high = sqrt_enclosure(self.hi.hi, bits)
        return _ratio(lo_low, lo_high), _ratio(hi_low, hi_high)

    def to_certificate(self, sigma: FiniteSigma, q: RatioValue) -> Certificate:
        """Annotation certificate placing q inside the window."""
        return Certificate(
            theorem_tag=TheoremTag.AE_WINDOW,
            witnesses={
                "sigma": sigma.to_wire(),
                "q_lo": format_rational(q.lo),
                "q_hi": format_rational(q.hi),
                "d": format_rational(self.d),
                "alpha_lo": format_rational(self.hi.lo),
                "alpha_hi": format_rational(self.hi.hi),
            },
        )

    def to_wire(self) -> dict[str, Any]:
        """Serialize; the window is labelled as an a.e. annotation."""
        low, high = self.interval_window()
        return {
            "lo": format_rational(self.lo),
            "hi": self.hi.to_wire(),
            "d": format_rational(self.d),
            "annotation": "a.e. positive measure, not a per-point certificate",
            "interval_window": {"lo": low.to_wire(), "hi": high.to_wire()},
        }


def _ratio(lo: Fraction, hi: Fraction) -> RatioValue:
    if lo == hi:
        return ExactRatio(value=lo)
    return RatioEnclosure(lo=lo, hi=hi)


def ae_positive_window(
    sigma: FiniteSigma, tol: Fraction | None = None
) -> AeWindow | None:
    """The a.e. positive-measure window (1/|Σ|, α̲(d)), when it is non-empty.

    Reported whenever d ≤ 1/2 and α̲(d) > 1/|Σ|; the comparison is refined
    until decided.

    Args:
        sigma: The digit set
        tol: Enclosure width for α̲(d), defaults to the configured tolerance

    Returns:
        AeWindow, or None when the hypotheses fail
    """
    d = gap_stats(sigma).d
    if d > WINDOW_D_MAX:
        return None
    floor = Fraction(1, sigma.size)
    start_bits = bits_for_tolerance(tol or get_settings().tolerance_value)
    bounds: dict[int, AlphaBound] = {}

    def decide(bits: int) -> Decision:
        bounds[bits] = alpha_lower(d, Fraction(1, 2**bits))
        return less_than(floor, bounds[bits].value)

    outcome, bits = refine_until_decided(
        decide, start_bits, what=f"alpha_lower({d}) > 1/{sigma.size}"
    )
    if outcome is not Decision.PROVEN:
        return None
    bound = bounds[bits]
    return AeWindow(lo=floor, hi=bound.value, d=d, bound=bound)


class ClassificationContext:
    """Per-Σ data shared by every classification of the same digit set.

    Sweeps classify many ratios for one Σ; gap statistics, the a.e. window and
    the (a, b, c) triple are computed once here.
    """

    def __init__(self, sigma: FiniteSigma, multigeometric: bool = False) -> None:
        """Initialize the context.

        Args:
            sigma: The digit set
            multigeometric: Σ is known to come from a multigeometric sequence
        """
        self.sigma = sigma
        self.multigeometric = multigeometric

    @cached_property
    def stats(self) -> GapStats:
        return gap_stats(self.sigma)

    @cached_property
    def window(self) -> AeWindow | None:
        return ae_positive_window(self.sigma)

    @cached_property
    def witness(self) -> StarConditionWitness | None:
        return star_condition_witness(self.sigma)

    @cached_property
    def hull(self) -> tuple[Fraction, Fraction]:
        return little_i_witness(self.sigma)

    @cached_property
    def trichotomy_known(self) -> bool:
        """Whether the three-way label is known to be exhaustive for Σ."""
        return self.multigeometric or is_ferens_like(self.sigma)

    def prepare(self) -> ClassificationContext:
        """Compute every cached value now, before the context is shared by threads."""
        _ = (self.stats, self.window, self.witness, self.hull, self.trichotomy_known)
        return self


def _q_witnesses(q: RatioValue) -> dict[str, str]:
    return {"q_lo": format_rational(q.lo), "q_hi": format_rational(q.hi)}


def _threshold_fact(
    ctx: ClassificationContext, q: RatioValue, kind: FactKind, tag: TheoremTag
) -> Fact:
    return Fact(
        kind=kind,
        certificate=Certificate(
            theorem_tag=tag,
            witnesses={
                "sigma": ctx.sigma.to_wire(),
                **_q_witnesses(q),
                "big_i": format_rational(ctx.stats.big_i),
            },
        ),
    )


def _contains_interval_fact(ctx: ClassificationContext, q: RatioValue) -> Fact:
    a, b = ctx.hull
    return Fact(
        kind=FactKind.CONTAINS_INTERVAL,
        certificate=Certificate(
            theorem_tag=TheoremTag.CONTAINS_INTERVAL,
            witnesses={
                "sigma": ctx.sigma.to_wire(),
                "q_lo": format_rational(q.lo),
                "little_i": format_rational(ctx.stats.little_i),
                "a": format_rational(a),
                "b": format_rational(b),
            },
        ),
    )


def _not_finite_union_fact(ctx: ClassificationContext, q: RatioValue) -> Fact:
    return Fact(
        kind=FactKind.NOT_FINITE_UNION,
        certificate=Certificate(
            theorem_tag=TheoremTag.NOT_FINITE_UNION,
            witnesses={
                "sigma": ctx.sigma.to_wire(),
                "q_hi": format_rational(q.hi),
                "big_i": format_rational(ctx.stats.big_i),
            },
        ),
    )


def _zero_measure_certificate(
    ctx: ClassificationContext, q: RatioValue, depth_budget: int
) -> Certificate | None:
    sigma = ctx.sigma
    s = sigma.size
    if isinstance(q, ExactRatio):
        try:
            found = null_certificate(sigma, q.value, depth_budget)
        except EnumerationBudgetError as e:
            logger.warning(
                "Null certificate search stopped by budget",
                extra={"depth": e.depth_reached, "projected": e.projected},
            )
            return None
        return found.to_certificate() if found is not None else None

    if s * q.hi < 1:
        return Certificate(
            theorem_tag=TheoremTag.NULL_SUMSET,
            witnesses={
                "sigma": sigma.to_wire(),
                **_q_witnesses(q),
                "depth": 1,
                "cardinality": s,
                "bound": format_rational(s * q.hi),
            },
        )
    if q.root_of is not None and ctx.witness is not None:
        root_s, n = q.root_of
        bound = collapsed_bound(s, n, q.hi)
        if root_s == s and bound < 1:
            return QnCertificate(
                sigma=sigma,
                n=n,
                q_enclosure=q,
                collapsed_bound=bound,
                witness=ctx.witness,
            ).to_certificate()
    return None


def _trichotomy(kinds: set[FactKind]) -> Trichotomy | None:
    if FactKind.IS_INTERVAL in kinds:
        return Trichotomy.FINITE_UNION
    if FactKind.ZERO_MEASURE_CANTOR in kinds:
        return Trichotomy.CANTOR_SET
    if {FactKind.CONTAINS_INTERVAL, FactKind.NOT_FINITE_UNION} <= kinds:
        return Trichotomy.CANTORVAL
    return None


def classify(
    sigma: FiniteSigma,
    q: RatioValue | Fraction | str,
    depth_budget: int,
    *,
    multigeometric: bool = False,
    context: ClassificationContext | None = None,
) -> Verdict:
    """Certified structural verdict on K(Σ;q).

    Threshold facts come from exact comparisons with I(Σ) and i(Σ); for an
    enclosure q a comparison that straddles a threshold is left out. The null
    search is skipped once K is known to contain an interval.

    Args:
        sigma: The digit set
        q: Exact ratio or certified enclosure in (0, 1)
        depth_budget: Deepest sumset level for the null certificate search
        multigeometric: Σ is the subset-sum set of a multigeometric sequence
        context: Shared per-Σ data, built on demand when omitted

    Returns:
        Verdict with one certificate per fact

    Raises:
        ValueError: If depth_budget is not positive
        EnclosureTooWideError: If q is an enclosure wider than the configured maximum
    """
    if depth_budget < 1:
        raise ValueError(f"depth_budget must be at least 1, got {depth_budget}")
    q = as_ratio(q)
    limit = get_settings().max_enclosure_width_value
    if q.width > limit:
        raise EnclosureTooWideError(q.width, limit)
    ctx = context or ClassificationContext(sigma, multigeometric=multigeometric)

    facts: list[Fact] = []
    interval = at_least(q, ctx.stats.big_i)
    if interval is Decision.PROVEN:
        facts.append(
            _threshold_fact(
                ctx, q, FactKind.IS_INTERVAL, TheoremTag.INTERVAL_THRESHOLD
            )
        )
    elif interval is Decision.REFUTED:
        facts.append(
            _threshold_fact(ctx, q, FactKind.NOT_INTERVAL, TheoremTag.NOT_INTERVAL)
        )

    contains = at_least(q, ctx.stats.little_i)
    if contains is Decision.PROVEN:
        facts.append(_contains_interval_fact(ctx, q))
    if interval is Decision.REFUTED and ctx.stats.extreme_gap:
        facts.append(_not_finite_union_fact(ctx, q))

    if contains is not Decision.PROVEN:
        certificate = _zero_measure_certificate(ctx, q, depth_budget)
        if certificate is not None:
            facts.append(
                Fact(kind=FactKind.ZERO_MEASURE_CANTOR, certificate=certificate)
            )
        window = ctx.window
        if window is not None and window.contains(q) is Decision.PROVEN:
            facts.append(
                Fact(
                    kind=FactKind.AE_POSITIVE_WINDOW,
                    certificate=window.to_certificate(sigma, q),
                )
            )

    kinds = {fact.kind for fact in facts}
    label = _trichotomy(kinds)
    caveat = label is Trichotomy.CANTORVAL and not ctx.trichotomy_known
    verdict = Verdict(facts=facts, trichotomy=label, caveat=caveat)
    logger.debug(
        "Classified ratio",
        extra={
            "q_lo": str(q.lo),
            "q_hi": str(q.hi),
            "facts": sorted(kind.value for kind in kinds),
            "trichotomy": label.value if label else None,
        },
    )
    return verdict
