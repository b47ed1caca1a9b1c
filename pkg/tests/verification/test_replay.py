"""Tests for independent certificate replay."""
from __future__ import annotations

import copy
import logging

import pytest

from models.certificate import Certificate, TheoremTag
from verification.replay import (
    REPLAYERS,
    format_result,
    replay_all,
    replay_certificate,
)


def test_every_tag_has_a_replayer() -> None:
    """Test that the replay table covers every theorem tag."""
    assert set(REPLAYERS) == set(TheoremTag)


def test_engine_certificates_replay(certificates: dict[str, Certificate]) -> None:
    """Test that every engine-issued certificate passes replay."""
    assert {cert.theorem_tag for cert in certificates.values()} == set(TheoremTag)
    for name, certificate in certificates.items():
        result = replay_certificate(certificate)
        assert result.passed, f"{name}: {result.summary}"
        assert "❌" not in result.summary


def test_replay_all(certificates: dict[str, Certificate]) -> None:
    """Test batch replay order and the text rendering."""
    batch = list(certificates.values())
    results = replay_all(batch)
    assert [result.title for result in results] == [
        cert.theorem_tag.value for cert in batch
    ]
    assert format_result(results[0]).startswith("[PASS] interval_threshold\n✅")


@pytest.mark.parametrize(
    ("name", "key", "value"),
    [
        ("interval_threshold", "big_i", "1/8"),
        ("interval_threshold", "q_lo", "1/8"),
        ("contains_interval", "b", "16"),
        ("not_finite_union", "sigma", ["0", "1", "4", "5"]),
        ("null_sumset", "cardinality", 2654),
        ("null_sumset", "bound", "2654/2744"),
        ("null_sumset_enclosure", "q_hi", "1/15"),
        ("sumset_collision", "right", ["4", "1"]),
        ("qn_collapse", "a", "0"),
        ("qn_root_bracket", "lo", "1/4"),
        ("alpha_closed_form", "hi", "1/5"),
        ("alpha_cubic", "d", "1/9"),
        ("ae_window", "q_hi", "1/5"),
    ],
)
def test_tampered_certificates_fail(
    certificates: dict[str, Certificate], name: str, key: str, value: object
) -> None:
    """Test that altering one witness makes replay fail."""
    witnesses = copy.deepcopy(certificates[name].witnesses)
    witnesses[key] = value
    tampered = Certificate(
        theorem_tag=certificates[name].theorem_tag, witnesses=witnesses
    )
    result = replay_certificate(tampered)
    assert not result.passed
    assert format_result(result).startswith("[FAIL]")


def test_missing_witness_fails(
    certificates: dict[str, Certificate], caplog: pytest.LogCaptureFixture
) -> None:
    """Test that a missing witness is reported instead of raised."""
    witnesses = dict(certificates["null_sumset"].witnesses)
    del witnesses["depth"]
    with caplog.at_level(logging.WARNING):
        result = replay_certificate(
            Certificate(theorem_tag=TheoremTag.NULL_SUMSET, witnesses=witnesses)
        )
    assert not result.passed
    assert result.summary.startswith("Malformed witnesses")
    assert "Malformed certificate witnesses" in caplog.text


def test_unparseable_witness_fails() -> None:
    """Test that non-rational witness strings fail the check."""
    result = replay_certificate(
        Certificate(
            theorem_tag=TheoremTag.ALPHA_CUBIC,
            witnesses={"d": "one fifth", "lo": "0", "hi": "1"},
        )
    )
    assert not result.passed
