"""Independent replay of certificates from their serialized witnesses."""
from __future__ import annotations

import logging
from collections.abc import Callable
from fractions import Fraction
from typing import Any, Optional

from pydantic import BaseModel, Field

from bounds.alpha import D_MAX, closed_form_applies, cubic
from core.gaps import gap_stats, interval_index
from core.rational import parse_rational
from models.certificate import Certificate, TheoremTag
from models.sigma import FiniteSigma
from nullseq.qn import collapsed_bound, qn_polynomial
from nullseq.witness import StarConditionWitness
from sumsets.enumerate import sigma_n

logger = logging.getLogger(__name__)

Checks = list[tuple[str, bool]]


class CheckResult(BaseModel):
    """Result of replaying one certificate."""

    passed: bool = Field(description="Whether every recomputed inequality held")
    title: str = Field(description="Short title for the check")
    summary: str = Field(description="One line per recomputed condition")
    details: Optional[dict[str, Any]] = Field(
        default=None, description="The witnesses that were replayed"
    )


def _q(witnesses: dict[str, Any], key: str) -> Fraction:
    return parse_rational(witnesses[key])


def _sigma(witnesses: dict[str, Any]) -> FiniteSigma:
    return FiniteSigma.of(witnesses["sigma"])


def _big_i_checks(witnesses: dict[str, Any]) -> tuple[FiniteSigma, Fraction, Checks]:
    sigma = _sigma(witnesses)
    stats = gap_stats(sigma)
    big_i = _q(witnesses, "big_i")
    return sigma, big_i, [(f"I(Σ) recomputes to {big_i}", stats.big_i == big_i)]


def _interval_threshold(witnesses: dict[str, Any]) -> Checks:
    _, big_i, checks = _big_i_checks(witnesses)
    checks.append((f"q ≥ I(Σ) = {big_i}", _q(witnesses, "q_lo") >= big_i))
    return checks


def _not_interval(witnesses: dict[str, Any]) -> Checks:
    _, big_i, checks = _big_i_checks(witnesses)
    checks.append((f"q < I(Σ) = {big_i}", _q(witnesses, "q_hi") < big_i))
    return checks


def _not_finite_union(witnesses: dict[str, Any]) -> Checks:
    sigma, big_i, checks = _big_i_checks(witnesses)
    checks.append((f"q < I(Σ) = {big_i}", _q(witnesses, "q_hi") < big_i))
    checks.append(
        ("largest gap is the first or the last", gap_stats(sigma).extreme_gap)
    )
    return checks


def _contains_interval(witnesses: dict[str, Any]) -> Checks:
    sigma = _sigma(witnesses)
    a, b = _q(witnesses, "a"), _q(witnesses, "b")
    little_i = _q(witnesses, "little_i")
    hull = [value for value in sigma if a <= value <= b]
    checks = [(f"{a} < {b} are digits", a < b and a in sigma and b in sigma)]
    if len(hull) >= 2:
        checks.append(
            (f"I(Σ ∩ [{a}, {b}]) = {little_i}", interval_index(hull) == little_i)
        )
    checks.append((f"q ≥ {little_i}", _q(witnesses, "q_lo") >= little_i))
    return checks


def _null_sumset(witnesses: dict[str, Any]) -> Checks:
    sigma = _sigma(witnesses)
    depth = int(witnesses["depth"])
    cardinality = int(witnesses["cardinality"])
    bound = _q(witnesses, "bound")
    if "q" in witnesses:
        q = _q(witnesses, "q")
        recomputed = sigma_n(sigma, q, depth).size
        return [
            (f"|Σ_{depth}| = {cardinality}", recomputed == cardinality),
            (f"|Σ_{depth}|·q^{depth} = {bound}", cardinality * q**depth == bound),
            (f"{bound} < 1", bound < 1),
        ]
    q_hi = _q(witnesses, "q_hi")
    return [
        ("depth is 1", depth == 1),
        (f"|Σ| = {cardinality}", cardinality == sigma.size),
        (f"|Σ|·q̄ = {bound}", sigma.size * q_hi == bound),
        (f"{bound} < 1", bound < 1),
        ("q̲ ≤ q̄", _q(witnesses, "q_lo") <= q_hi),
    ]


def _string_value(digits: list[Fraction], q: Fraction) -> Fraction:
    return sum((digit * q**index for index, digit in enumerate(digits)), Fraction(0))


def _sumset_collision(witnesses: dict[str, Any]) -> Checks:
    sigma = _sigma(witnesses)
    q = _q(witnesses, "q")
    depth = int(witnesses["depth"])
    left = [parse_rational(item) for item in witnesses["left"]]
    right = [parse_rational(item) for item in witnesses["right"]]
    return [
        ("Σ is integral", sigma.is_integral),
        (f"q = 1/{sigma.size}", q == Fraction(1, sigma.size)),
        (
            f"both strings have length {depth}",
            len(left) == len(right) == depth,
        ),
        ("every digit is in Σ", all(digit in sigma for digit in left + right)),
        ("strings differ", left != right),
        (
            "strings have equal value",
            _string_value(left, q) == _string_value(right, q),
        ),
    ]


def _bracket_checks(s: int, n: int, lo: Fraction, hi: Fraction) -> Checks:
    return [
        (f"1/{s} < q̲ ≤ q̄", Fraction(1, s) < lo <= hi),
        (f"q_{n} polynomial ≤ 0 at q̲", qn_polynomial(s, n, lo) <= 0),
        (f"q_{n} polynomial ≥ 0 at q̄", qn_polynomial(s, n, hi) >= 0),
    ]


def _qn_root_bracket(witnesses: dict[str, Any]) -> Checks:
    s, n = int(witnesses["s"]), int(witnesses["n"])
    return _bracket_checks(s, n, _q(witnesses, "lo"), _q(witnesses, "hi"))


def _qn_collapse(witnesses: dict[str, Any]) -> Checks:
    sigma = _sigma(witnesses)
    s, n = int(witnesses["s"]), int(witnesses["n"])
    hi = _q(witnesses, "hi")
    bound = _q(witnesses, "bound")
    triple = StarConditionWitness(a=witnesses["a"], b=witnesses["b"], c=witnesses["c"])
    return [
        (f"|Σ| = {s}", sigma.size == s),
        *_bracket_checks(s, n, _q(witnesses, "lo"), hi),
        ("(a, b, c) condition holds in Σ", triple.holds_in(sigma)),
        (f"(s^n − 2^(n−1))·q̄^n = {bound}", collapsed_bound(s, n, hi) == bound),
        (f"{bound} < 1", bound < 1),
    ]


def _alpha_closed_form(witnesses: dict[str, Any]) -> Checks:
    d = _q(witnesses, "d")
    lo, hi = _q(witnesses, "lo"), _q(witnesses, "hi")
    # α = √d/(1+√d), so α/(1−α) brackets √d.
    return [
        ("closed form applies", 0 < d <= D_MAX and closed_form_applies(d)),
        ("0 < α̲ ≤ ᾱ < 1", 0 < lo <= hi < 1),
        ("(α̲/(1−α̲))² ≤ d", (lo / (1 - lo)) ** 2 <= d),
        ("d ≤ (ᾱ/(1−ᾱ))²", d <= (hi / (1 - hi)) ** 2),
    ]


def _alpha_cubic(witnesses: dict[str, Any]) -> Checks:
    d = _q(witnesses, "d")
    lo, hi = _q(witnesses, "lo"), _q(witnesses, "hi")
    return [
        ("cubic branch applies", 0 < d <= D_MAX and not closed_form_applies(d)),
        ("0 ≤ α̲ ≤ ᾱ ≤ 1", 0 <= lo <= hi <= 1),
        ("cubic ≤ 0 at α̲", cubic(d, lo) <= 0),
        ("cubic ≥ 0 at ᾱ", cubic(d, hi) >= 0),
    ]


def _ae_window(witnesses: dict[str, Any]) -> Checks:
    sigma = _sigma(witnesses)
    d = _q(witnesses, "d")
    alpha = {
        "d": witnesses["d"],
        "lo": witnesses["alpha_lo"],
        "hi": witnesses["alpha_hi"],
    }
    alpha_checks = (
        _alpha_closed_form(alpha) if closed_form_applies(d) else _alpha_cubic(alpha)
    )
    q_lo, q_hi = _q(witnesses, "q_lo"), _q(witnesses, "q_hi")
    return [
        (f"d(Σ) = {d}", gap_stats(sigma).d == d),
        *alpha_checks,
        (f"1/{sigma.size} < q̲", Fraction(1, sigma.size) < q_lo),
        ("q̄ < α̲", q_lo <= q_hi < _q(witnesses, "alpha_lo")),
    ]


REPLAYERS: dict[TheoremTag, Callable[[dict[str, Any]], Checks]] = {
    TheoremTag.INTERVAL_THRESHOLD: _interval_threshold,
    TheoremTag.NOT_INTERVAL: _not_interval,
    TheoremTag.CONTAINS_INTERVAL: _contains_interval,
    TheoremTag.NOT_FINITE_UNION: _not_finite_union,
    TheoremTag.NULL_SUMSET: _null_sumset,
    TheoremTag.SUMSET_COLLISION: _sumset_collision,
    TheoremTag.QN_COLLAPSE: _qn_collapse,
    TheoremTag.QN_ROOT_BRACKET: _qn_root_bracket,
    TheoremTag.AE_WINDOW: _ae_window,
    TheoremTag.ALPHA_CLOSED_FORM: _alpha_closed_form,
    TheoremTag.ALPHA_CUBIC: _alpha_cubic,
}


def replay_certificate(certificate: Certificate) -> CheckResult:
    """Recompute a certificate's inequalities from its witnesses alone.

    Nothing computed by the engine is trusted: digit sets are re-parsed,
    gap statistics and sumsets recomputed, polynomial signs re-evaluated in
    exact arithmetic.

    Args:
        certificate: The certificate to replay

    Returns:
        CheckResult that passes iff every recomputed condition holds; missing
        or malformed witnesses fail the check

    Raises:
        EnumerationBudgetError: If recomputing a sumset exceeds the configured cap
    """
    tag = certificate.theorem_tag
    witnesses = certificate.witnesses
    try:
        checks = REPLAYERS[tag](witnesses)
    except (KeyError, TypeError, ValueError) as e:
        logger.warning(
            "Malformed certificate witnesses",
            extra={"theorem_tag": tag.value, "error": str(e)},
        )
        return CheckResult(
            passed=False,
            title=tag.value,
            summary=f"Malformed witnesses: {e}",
            details=witnesses,
        )

    passed = all(ok for _, ok in checks)
    summary = "\n".join(f"{'✅' if ok else '❌'} {text}" for text, ok in checks)
    if not passed:
        failed = [text for text, ok in checks if not ok]
        logger.warning(
            "Certificate replay failed",
            extra={"theorem_tag": tag.value, "failed": failed},
        )
    return CheckResult(
        passed=passed, title=tag.value, summary=summary, details=witnesses
    )


def replay_all(certificates: list[Certificate]) -> list[CheckResult]:
    """Replay a batch of certificates in order."""
    results = [replay_certificate(certificate) for certificate in certificates]
    logger.info(
        "Replayed certificates",
        extra={
            "total": len(results),
            "passed": sum(result.passed for result in results),
        },
    )
    return results


def format_result(result: CheckResult) -> str:
    """Human-readable block for one result."""
    status = "PASS" if result.passed else "FAIL"
    return f"[{status}] {result.title}\n{result.summary}"
