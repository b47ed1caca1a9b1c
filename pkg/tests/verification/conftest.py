"""Shared fixtures for certificate replay and schema tests."""
from __future__ import annotations

from fractions import Fraction

import pytest

from bounds.alpha import alpha_lower
from classify.engine import classify
from models.certificate import Certificate
from models.ratio import RatioEnclosure
from models.sigma import FiniteSigma
from models.verdict import FactKind, Verdict
from nullseq.qn import qn_root, qn_root_certificate, qn_sequence
from sumsets.rational_ratio import full_sumset_check


@pytest.fixture
def certificates(
    ferens_sigma: FiniteSigma, guthrie_nymann_sigma: FiniteSigma
) -> dict[str, Certificate]:
    """One engine-issued certificate per theorem tag, plus the q̄ null variant."""
    interval = classify(ferens_sigma, Fraction(1, 7), 3)
    cantorval = classify(ferens_sigma, Fraction(1, 10), 3)
    null = classify(ferens_sigma, Fraction(1, 14), 4)
    enclosed = classify(
        ferens_sigma,
        RatioEnclosure(lo=Fraction(1, 20), hi=Fraction(1, 20) + Fraction(1, 10**6)),
        3,
    )

    def cert(verdict: Verdict, kind: FactKind) -> Certificate:
        fact = verdict.fact(kind)
        assert fact is not None
        return fact.certificate

    collision = full_sumset_check(ferens_sigma, 3).to_certificate()
    assert collision is not None
    return {
        "interval_threshold": cert(interval, FactKind.IS_INTERVAL),
        "contains_interval": cert(interval, FactKind.CONTAINS_INTERVAL),
        "not_interval": cert(cantorval, FactKind.NOT_INTERVAL),
        "not_finite_union": cert(cantorval, FactKind.NOT_FINITE_UNION),
        "null_sumset": cert(null, FactKind.ZERO_MEASURE_CANTOR),
        "null_sumset_enclosure": cert(enclosed, FactKind.ZERO_MEASURE_CANTOR),
        "ae_window": cert(null, FactKind.AE_POSITIVE_WINDOW),
        "sumset_collision": collision,
        "qn_collapse": qn_sequence(guthrie_nymann_sigma, 1)[0].to_certificate(),
        "qn_root_bracket": qn_root_certificate(qn_root(4, 6, Fraction(1, 2**40))),
        "alpha_closed_form": alpha_lower(Fraction(1, 9)).to_certificate(),
        "alpha_cubic": alpha_lower(Fraction(1, 5)).to_certificate(),
    }
