"""Resolution of command-line inputs: digit set sources, ratios and tolerances."""
from __future__ import annotations

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from pydantic.dataclasses import dataclass

from core.config import get_settings
from core.families import known_sequence, sumset_of_multigeometric
from core.rational import parse_rational
from models.ratio import ExactRatio, RatioValue, as_ratio
from models.sigma import FiniteSigma, MultigeometricSpec, SigmaParseError
from nullseq.qn import qn_root

logger = logging.getLogger(__name__)

QN_PREFIX = "qn:"


@dataclass(frozen=True)
class SigmaInput:
    """A resolved digit set plus what is known about where it came from."""

    sigma: FiniteSigma
    multigeometric: bool
    default_q: Optional[RatioValue]
    source: str


def _from_spec(spec: MultigeometricSpec, source: str) -> SigmaInput:
    return SigmaInput(
        sigma=sumset_of_multigeometric(spec.coefficients),
        multigeometric=True,
        default_q=spec.ratio,
        source=source,
    )


def _from_file(path: Path) -> SigmaInput:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data: Any = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise SigmaParseError(str(path), str(e)) from e

    if isinstance(data, list):
        return SigmaInput(FiniteSigma.of(data), False, None, str(path))
    if isinstance(data, dict) and "sigma" in data:
        q = as_ratio(data["q"]) if data.get("q") is not None else None
        return SigmaInput(FiniteSigma.of(data["sigma"]), False, q, str(path))
    if isinstance(data, dict) and "coefficients" in data:
        ratio = data.get("ratio")
        spec = MultigeometricSpec(
            coefficients=tuple(data["coefficients"]),
            ratio=as_ratio(ratio) if ratio is not None else None,
        )
        return _from_spec(spec, str(path))
    raise SigmaParseError(
        str(path), "expected a list of digits or an object with sigma or coefficients"
    )


def resolve_sigma(
    sigma: Optional[str],
    multigeometric: Optional[str],
    sigma_file: Optional[Path],
    preset: Optional[str],
) -> SigmaInput:
    """Turn exactly one of the four digit set options into a SigmaInput.

    Args:
        sigma: Comma-separated digits, e.g. ``0,2,3,5``
        multigeometric: Coefficients with an optional ratio, e.g. ``4,3,2;17/100``
        sigma_file: JSON file with a digit list or an object
        preset: Name of a registered sequence

    Returns:
        The resolved input

    Raises:
        ValueError: If not exactly one source is given or the source is invalid
    """
    given = [
        option
        for option, value in (
            ("--sigma", sigma),
            ("--multigeometric", multigeometric),
            ("--sigma-file", sigma_file),
            ("--preset", preset),
        )
        if value is not None
    ]
    if len(given) != 1:
        raise ValueError(
            "Give exactly one of --sigma, --multigeometric, --sigma-file, --preset"
            f" (got {', '.join(given) or 'none'})"
        )

    if sigma is not None:
        return SigmaInput(FiniteSigma.parse(sigma), False, None, sigma)
    if multigeometric is not None:
        return _from_spec(MultigeometricSpec.parse(multigeometric), multigeometric)
    if sigma_file is not None:
        return _from_file(sigma_file)
    return _from_spec(known_sequence(preset), preset)


def resolve_tolerance(text: Optional[str]) -> Fraction:
    """Parse ``--tol``, falling back to the configured tolerance."""
    if text is None:
        return get_settings().tolerance_value
    tol = parse_rational(text)
    if tol <= 0:
        raise ValueError(f"Tolerance must be positive, got {text}")
    return tol


def resolve_ratio(
    text: Optional[str], default: Optional[RatioValue], tol: Fraction
) -> RatioValue:
    """Parse ``--q``: an exact rational or ``qn:s,n`` for the root qₙ.

    Raises:
        ValueError: If no ratio is available or the text is malformed
    """
    if text is None:
        if default is None:
            raise ValueError("--q is required for this digit set source")
        return default
    if text.startswith(QN_PREFIX):
        parts = text[len(QN_PREFIX) :].split(",")
        if len(parts) != 2:
            raise ValueError(f"Expected qn:s,n, got {text!r}")
        s, n = (int(part) for part in parts)
        return qn_root(s, n, tol)
    return as_ratio(text)


def exact_ratio(value: RatioValue) -> Fraction:
    """The exact value of a ratio; enclosures are rejected.

    Raises:
        ValueError: If the ratio is only known through an enclosure
    """
    if not isinstance(value, ExactRatio):
        raise ValueError("This command needs an exact rational q")
    return value.value
