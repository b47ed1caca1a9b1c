"""Precision refinement for comparisons that depend on rational enclosures."""
from __future__ import annotations

import logging
from collections.abc import Callable

from tenacity import (
    Retrying,
    after_log,
    retry_if_exception_type,
    stop_after_attempt,
)

from core.config import get_settings
from models.ratio import Decision

logger = logging.getLogger(__name__)


class UndecidedComparisonError(Exception):
    """Exception raised when a comparison stays undecided at the precision cap."""

    def __init__(self, what: str, bits: int) -> None:
        """Initialize with a description and the last precision tried.

        Args:
            what: Human-readable description of the comparison
            bits: Binary precision of the last attempt
        """
        self.what = what
        self.bits = bits
        super().__init__(f"Could not decide {what} at {bits} bits of precision")


def _attempts_for(start_bits: int, bit_cap: int) -> int:
    attempts = 1
    while start_bits << attempts <= bit_cap:
        attempts += 1
    return attempts


def refine_until_decided(
    decide: Callable[[int], Decision],
    start_bits: int,
    what: str,
    bit_cap: int | None = None,
) -> tuple[Decision, int]:
    """Re-run a comparison at doubled precision until it is decided.

    Args:
        decide: Evaluates the comparison with enclosures of the given bits
        start_bits: Precision of the first attempt
        what: Description used in logs and errors
        bit_cap: Highest precision allowed, defaults to the configured cap

    Returns:
        The decided outcome and the precision that decided it

    Raises:
        UndecidedComparisonError: If the comparison is still undecided at the cap
    """
    cap = bit_cap if bit_cap is not None else get_settings().refinement_bit_cap
    start_bits = max(1, start_bits)

    for attempt in Retrying(
        stop=stop_after_attempt(_attempts_for(start_bits, cap)),
        retry=retry_if_exception_type(UndecidedComparisonError),
        after=after_log(logger, logging.DEBUG),
        reraise=True,
    ):
        with attempt:
            bits = start_bits << (attempt.retry_state.attempt_number - 1)
            outcome = decide(bits)
            if outcome is Decision.UNDECIDED:
                raise UndecidedComparisonError(what, bits)

    logger.debug(f"Decided {what} at {bits} bits: {outcome.value}")
    return outcome, bits
