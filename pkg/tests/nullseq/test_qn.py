"""Tests for the decreasing sequence of null-measure ratios."""
from __future__ import annotations

from fractions import Fraction

import pytest

from core.config import EnumerationBudgetError
from models.certificate import TheoremTag
from models.sigma import FiniteSigma
from nullseq.qn import (
    NoStarWitnessError,
    collapsed_bound,
    qn_polynomial,
    qn_root,
    qn_root_certificate,
    qn_sequence,
    qn_upper_bound,
)

TOL = Fraction(1, 2**40)


def test_qn_root_degenerate() -> None:
    """Test q₂ = 1/(s−1) exactly."""
    root = qn_root(3, 2, TOL)
    assert root.lo == root.hi == Fraction(1, 2)
    assert root.root_of == (3, 2)


@pytest.mark.parametrize(("s", "n"), [(3, 3), (4, 5), (8, 11), (15, 4)])
def test_qn_root_brackets(s: int, n: int) -> None:
    """Test the bracket sign change and position above 1/s."""
    root = qn_root(s, n, TOL)
    assert root.hi - root.lo <= TOL
    assert root.lo > Fraction(1, s)
    assert root.hi <= qn_upper_bound(s, n)
    assert qn_polynomial(s, n, root.lo) <= 0 <= qn_polynomial(s, n, root.hi)


@pytest.mark.parametrize(
    ("s", "n"), [(4, 1), (1, 3), (2, 2)]
)
def test_qn_root_rejects(s: int, n: int) -> None:
    """Test index, size and unit-root rejections."""
    with pytest.raises(ValueError):
        qn_root(s, n, TOL)


def test_qn_root_certificate() -> None:
    """Test the bracket certificate."""
    certificate = qn_root_certificate(qn_root(4, 6, TOL))
    assert certificate.theorem_tag is TheoremTag.QN_ROOT_BRACKET
    assert certificate.witnesses["s"] == 4
    assert certificate.witnesses["n"] == 6


def test_collapsed_bound() -> None:
    """Test (sⁿ − 2ⁿ⁻¹)·qⁿ."""
    assert collapsed_bound(4, 2, Fraction(1, 3)) == Fraction(14, 9)


@pytest.mark.parametrize("fixture", ["guthrie_nymann_sigma", "example_sigma"])
def test_qn_sequence(fixture: str, request: pytest.FixtureRequest) -> None:
    """Test three certificates with strictly decreasing ratios above 1/s."""
    sigma: FiniteSigma = request.getfixturevalue(fixture)
    s = sigma.size
    certificates = qn_sequence(sigma, 3)
    assert len(certificates) == 3

    indices = [certificate.n for certificate in certificates]
    assert indices == sorted(set(indices))
    for certificate in certificates:
        enclosure = certificate.q_enclosure
        assert enclosure.lo > Fraction(1, s)
        assert enclosure.hi <= qn_upper_bound(s, certificate.n)
        assert certificate.collapsed_bound < 1
        assert certificate.collapsed_bound == collapsed_bound(
            s, certificate.n, enclosure.hi
        )
        assert certificate.witness.holds_in(sigma)
    for left, right in zip(certificates, certificates[1:]):
        assert right.q_enclosure.hi < left.q_enclosure.lo


def test_qn_sequence_wire(guthrie_nymann_sigma: FiniteSigma) -> None:
    """Test the wire form of a single certificate."""
    [certificate] = qn_sequence(guthrie_nymann_sigma, 1)
    wire = certificate.to_wire()
    assert wire["witness"] == {"a": "2", "b": "1", "c": "-1"}
    assert wire["certificate"]["theorem_tag"] == "qn_collapse"
    assert wire["certificate"]["witnesses"]["s"] == 4
    assert wire["q"]["root_of"] == [4, certificate.n]


def test_qn_sequence_without_witness(consecutive_sigma: FiniteSigma) -> None:
    """Test that sets without a triple are rejected."""
    with pytest.raises(NoStarWitnessError):
        qn_sequence(consecutive_sigma, 1)


def test_qn_sequence_rejects_count(guthrie_nymann_sigma: FiniteSigma) -> None:
    """Test that at least one certificate must be requested."""
    with pytest.raises(ValueError):
        qn_sequence(guthrie_nymann_sigma, 0)


def test_qn_sequence_index_budget(
    guthrie_nymann_sigma: FiniteSigma, monkeypatch: pytest.MonkeyPatch
) -> None:
    """Test that the search stops at the configured maximum index."""
    monkeypatch.setenv("CANTORVAL_MAX_QN_INDEX", "3")
    with pytest.raises(EnumerationBudgetError):
        qn_sequence(guthrie_nymann_sigma, 1)
