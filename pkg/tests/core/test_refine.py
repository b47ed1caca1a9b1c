"""Tests for precision refinement of undecided comparisons."""
from __future__ import annotations

import pytest

from core.refine import UndecidedComparisonError, refine_until_decided
from models.ratio import Decision


def test_decided_after_refinement() -> None:
    """Test that precision doubles until the comparison is decided."""
    seen: list[int] = []

    def decide(bits: int) -> Decision:
        seen.append(bits)
        return Decision.PROVEN if bits >= 64 else Decision.UNDECIDED

    outcome, bits = refine_until_decided(decide, 16, what="x < y")
    assert outcome is Decision.PROVEN
    assert bits == 64
    assert seen == [16, 32, 64]


def test_decided_immediately() -> None:
    """Test that a decided first attempt is returned as is."""
    outcome, bits = refine_until_decided(lambda _: Decision.REFUTED, 8, what="x < y")
    assert outcome is Decision.REFUTED
    assert bits == 8


def test_undecided_at_cap() -> None:
    """Test that the cap stops refinement with an error."""
    with pytest.raises(UndecidedComparisonError) as info:
        refine_until_decided(
            lambda _: Decision.UNDECIDED, 16, what="x < y", bit_cap=64
        )
    assert info.value.bits == 64
    assert "x < y" in str(info.value)


def test_configured_cap(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test that the cap defaults to the configured bit cap."""
    monkeypatch.setenv("CANTORVAL_REFINEMENT_BIT_CAP", "40")
    with pytest.raises(UndecidedComparisonError) as info:
        refine_until_decided(lambda _: Decision.UNDECIDED, 10, what="x < y")
    assert info.value.bits == 40
