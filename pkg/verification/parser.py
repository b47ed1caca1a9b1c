"""Locate and validate certificates inside documents emitted by the CLI."""
from __future__ import annotations

import json
import logging
from collections.abc import Callable
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from models.certificate import Certificate
from verification.schema import (
    WireSchemaError,
    validate_certificate,
    validate_verdict,
)

logger = logging.getLogger(__name__)

VERDICT_KEYS = frozenset({"facts", "trichotomy", "caveat"})


class CertificateParseError(ValueError):
    """Exception raised when a document or certificate cannot be read."""

    def __init__(self, source: str, error_msg: str) -> None:
        """Initialize with where the problem was found.

        Args:
            source: File path or JSON location
            error_msg: Why it was rejected
        """
        self.source = source
        self.error_msg = error_msg
        super().__init__(f"Failed to read certificates from {source}: {error_msg}")


def load_document(path: Path) -> Any:
    """Read one JSON document emitted by the CLI.

    Raises:
        CertificateParseError: If the file is unreadable or not JSON
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise CertificateParseError(str(path), str(e)) from e


def _is_certificate(node: dict[str, Any]) -> bool:
    return "theorem_tag" in node and "witnesses" in node


def _is_verdict(node: dict[str, Any]) -> bool:
    return set(node) == VERDICT_KEYS


def _walk(
    node: Any, location: str, match: Callable[[dict[str, Any]], bool]
) -> list[tuple[str, dict[str, Any]]]:
    if isinstance(node, dict):
        if match(node):
            return [(location, node)]
        found = []
        for key, value in node.items():
            found.extend(_walk(value, f"{location}.{key}", match))
        return found
    if isinstance(node, list):
        found = []
        for index, value in enumerate(node):
            found.extend(_walk(value, f"{location}[{index}]", match))
        return found
    return []


def collect_certificates(document: Any) -> list[Certificate]:
    """Every certificate object anywhere in a document, in document order.

    A certificate is any mapping with both ``theorem_tag`` and ``witnesses``
    keys; nested certificates inside one are not searched. Embedded verdicts
    and certificates are checked against the published schemas first.

    Args:
        document: Parsed JSON

    Returns:
        Validated certificates

    Raises:
        CertificateParseError: If a verdict or certificate does not match its
            schema, or a certificate has an unknown tag or bad shape
    """
    for location, node in _walk(document, "$", _is_verdict):
        try:
            validate_verdict(node)
        except WireSchemaError as e:
            raise CertificateParseError(location, str(e)) from e

    certificates = []
    for location, node in _walk(document, "$", _is_certificate):
        wire = {"theorem_tag": node["theorem_tag"], "witnesses": node["witnesses"]}
        try:
            validate_certificate(wire)
            certificates.append(Certificate.model_validate(wire))
        except (WireSchemaError, ValidationError) as e:
            raise CertificateParseError(location, str(e)) from e
    logger.debug(f"Collected {len(certificates)} certificates")
    return certificates
