"""Algebraic ratios qₙ ↘ 1/|Σ| at which K(Σ;qₙ) is certified to be null.

qₙ is the positive root of x + x² + ... + x^{n−1} = 1/(s−1). When Σ satisfies
the (a, b, c) condition, |Σₙ| ≤ sⁿ − 2ⁿ⁻¹ at q = qₙ, so (sⁿ − 2ⁿ⁻¹)·qₙⁿ < 1
proves measure zero.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from core.config import EnumerationBudgetError, get_settings
from core.rational import bits_for_tolerance, format_decimal, format_rational
from core.refine import refine_until_decided
from models.certificate import Certificate, TheoremTag
from models.ratio import Decision, RatioEnclosure, less_than
from models.sigma import FiniteSigma
from nullseq.witness import StarConditionWitness, star_condition_witness

logger = logging.getLogger(__name__)


class NoStarWitnessError(ValueError):
    """Exception raised when Σ admits no (a, b, c) triple."""

    def __init__(self, sigma: FiniteSigma) -> None:
        """Initialize with the digit set that was searched.

        Args:
            sigma: The digit set
        """
        self.sigma = sigma
        super().__init__(f"Digit set {sigma} has no (a, b, c) condition triple")


def qn_polynomial(s: int, n: int, x: Fraction) -> Fraction:
    """x + x² + ... + x^{n−1} − 1/(s−1)."""
    return sum((x**k for k in range(1, n)), Fraction(0)) - Fraction(1, s - 1)


def qn_upper_bound(s: int, n: int) -> Fraction:
    """1/(s(1 − s^{1−n})), a strict upper bound for qₙ."""
    return Fraction(s ** (n - 2), s ** (n - 1) - 1)


def qn_root(s: int, n: int, tol: Fraction) -> RatioEnclosure:
    """Enclose the positive root qₙ of x + ... + x^{n−1} = 1/(s−1).

    The polynomial is increasing on (0, 1) and changes sign on
    [1/s, qn_upper_bound(s, n)], so bisection keeps a certified bracket.
    The returned lower endpoint is strictly above 1/s.

    Args:
        s: Number of digits, at least 2
        n: Index, at least 2
        tol: Target enclosure width

    Returns:
        RatioEnclosure tagged with ``root_of=(s, n)``; degenerate for n = 2

    Raises:
        ValueError: If n < 2, s < 2, tol is not positive, or the root is 1
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if s < 2:
        raise ValueError(f"s must be at least 2, got {s}")
    if s == 2 and n == 2:
        raise ValueError("For s = 2 and n = 2 the root is 1, outside (0, 1)")
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {tol}")
    if n == 2:
        exact = Fraction(1, s - 1)
        return RatioEnclosure(lo=exact, hi=exact, root_of=(s, n))

    floor = Fraction(1, s)
    lo, hi = floor, qn_upper_bound(s, n)
    while hi - lo > tol or lo <= floor:
        mid = (lo + hi) / 2
        value = qn_polynomial(s, n, mid)
        if value == 0:
            lo = hi = mid
            break
        if value < 0:
            lo = mid
        else:
            hi = mid
    return RatioEnclosure(lo=lo, hi=hi, root_of=(s, n))


def qn_root_certificate(enclosure: RatioEnclosure) -> Certificate:
    """Certificate that the enclosure brackets the root named by ``root_of``.

    Raises:
        ValueError: If the enclosure does not carry ``root_of``
    """
    if enclosure.root_of is None:
        raise ValueError("Enclosure is not tagged with the root it encloses")
    s, n = enclosure.root_of
    return Certificate(
        theorem_tag=TheoremTag.QN_ROOT_BRACKET,
        witnesses={
            "s": s,
            "n": n,
            "lo": format_rational(enclosure.lo),
            "hi": format_rational(enclosure.hi),
        },
    )


def collapsed_bound(s: int, n: int, q_hi: Fraction) -> Fraction:
    """(sⁿ − 2ⁿ⁻¹)·q̄ⁿ, the size bound on Σₙ times qⁿ at the upper endpoint."""
    return (s**n - 2 ** (n - 1)) * q_hi**n


class QnCertificate(BaseModel):
    """Measure-zero certificate for K(Σ;qₙ)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    sigma: FiniteSigma = Field(description="The digit set")
    n: int = Field(description="Index of the root")
    q_enclosure: RatioEnclosure = Field(description="Enclosure of qₙ")
    collapsed_bound: Fraction = Field(description="(sⁿ − 2ⁿ⁻¹)·q̄ⁿ, below one")
    witness: StarConditionWitness = Field(description="The (a, b, c) triple")

    def to_certificate(self) -> Certificate:
        """Wrap as a replayable certificate."""
        return Certificate(
            theorem_tag=TheoremTag.QN_COLLAPSE,
            witnesses={
                "sigma": self.sigma.to_wire(),
                "s": self.sigma.size,
                "n": self.n,
                "lo": format_rational(self.q_enclosure.lo),
                "hi": format_rational(self.q_enclosure.hi),
                "bound": format_rational(self.collapsed_bound),
                **self.witness.to_wire(),
            },
        )

    def to_wire(self) -> dict[str, Any]:
        """Serialize with the enclosure, bound and witness triple."""
        return {
            "n": self.n,
            "q": self.q_enclosure.to_wire(),
            "collapsed_bound": format_rational(self.collapsed_bound),
            "collapsed_bound_decimal": format_decimal(self.collapsed_bound),
            "witness": self.witness.to_wire(),
            "certificate": self.to_certificate().to_wire(),
        }


def _decide_collapse(
    s: int, n: int, start_bits: int
) -> tuple[Decision, RatioEnclosure]:
    enclosures: dict[int, RatioEnclosure] = {}

    def decide(bits: int) -> Decision:
        enclosure = qn_root(s, n, Fraction(1, 2**bits))
        enclosures[bits] = enclosure
        factor = s**n - 2 ** (n - 1)
        if factor * enclosure.hi**n < 1:
            return Decision.PROVEN
        if factor * enclosure.lo**n >= 1:
            return Decision.REFUTED
        return Decision.UNDECIDED

    outcome, bits = refine_until_decided(
        decide, start_bits, what=f"(s^n - 2^(n-1)) q_n^n < 1 for s={s}, n={n}"
    )
    return outcome, enclosures[bits]


def _separate(
    s: int, n_prev: int, n_cur: int, start_bits: int
) -> tuple[RatioEnclosure, RatioEnclosure]:
    # Bisection is nested, so finer enclosures stay inside the coarser ones.
    refined: dict[int, tuple[RatioEnclosure, RatioEnclosure]] = {}

    def decide(bits: int) -> Decision:
        tol = Fraction(1, 2**bits)
        pair = (qn_root(s, n_prev, tol), qn_root(s, n_cur, tol))
        refined[bits] = pair
        return less_than(pair[1], pair[0])

    _, bits = refine_until_decided(
        decide, start_bits, what=f"q_{n_cur} < q_{n_prev} for s={s}"
    )
    return refined[bits]


def qn_sequence(
    sigma: FiniteSigma, count: int, tol: Fraction | None = None
) -> list[QnCertificate]:
    """First ``count`` indices n whose root qₙ carries a measure-zero certificate.

    Each n ≥ 2 is tested directly; indices where the inequality fails are
    skipped. Returned enclosures are refined until strictly decreasing.

    Args:
        sigma: Digit set satisfying the (a, b, c) condition
        count: Number of certificates to collect, at least 1
        tol: Starting enclosure width, defaults to the configured tolerance

    Returns:
        Certificates in increasing n with strictly decreasing enclosures

    Raises:
        NoStarWitnessError: If Σ has no (a, b, c) triple
        EnumerationBudgetError: If n exceeds the configured maximum first
        UndecidedComparisonError: If an inequality stays undecided at the bit cap
    """
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    witness = star_condition_witness(sigma)
    if witness is None:
        raise NoStarWitnessError(sigma)

    settings = get_settings()
    tol = tol if tol is not None else settings.tolerance_value
    start_bits = bits_for_tolerance(tol)
    s = sigma.size

    found: list[tuple[int, RatioEnclosure]] = []
    n = 2 if s > 2 else 3
    while len(found) < count:
        if n > settings.max_qn_index:
            raise EnumerationBudgetError(
                "qn_sequence", n, settings.max_qn_index, depth_reached=n - 1
            )
        outcome, enclosure = _decide_collapse(s, n, start_bits)
        if outcome is Decision.PROVEN:
            found.append((n, enclosure))
        else:
            logger.debug(f"Index n={n} gives no certificate for s={s}")
        n += 1

    for index in range(1, len(found)):
        (n_prev, previous), (n_cur, current) = found[index - 1], found[index]
        if less_than(current, previous) is not Decision.PROVEN:
            previous, current = _separate(s, n_prev, n_cur, start_bits)
            found[index - 1] = (n_prev, previous)
            found[index] = (n_cur, current)

    certificates = [
        QnCertificate(
            sigma=sigma,
            n=n,
            q_enclosure=enclosure,
            collapsed_bound=collapsed_bound(s, n, enclosure.hi),
            witness=witness,
        )
        for n, enclosure in found
    ]
    logger.info(
        "Collected root certificates",
        extra={"s": s, "count": len(certificates), "last_n": certificates[-1].n},
    )
    return certificates
