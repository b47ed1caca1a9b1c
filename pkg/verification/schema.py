"""JSON schemas of the verdict and certificate wire shapes, and their validation."""
from __future__ import annotations

import logging
from typing import Any, Dict

from jsonschema import Draft202012Validator
from jsonschema import ValidationError as SchemaValidationError

from models.certificate import TheoremTag
from models.verdict import FactKind, Trichotomy

logger = logging.getLogger(__name__)

SCHEMA_DIALECT = "https://json-schema.org/draft/2020-12/schema"
RATIONAL_PATTERN = r"^-?[0-9]+(/[0-9]+)?$"

_DEFS: Dict[str, Any] = {
    "rational": {
        "type": "string",
        "pattern": RATIONAL_PATTERN,
        "description": "Exact rational in lowest terms, p/q or p",
    },
    "theorem_tag": {
        "type": "string",
        "enum": [tag.value for tag in TheoremTag],
        "description": "Criterion the certificate instantiates",
    },
    "witnesses": {
        "type": "object",
        "description": (
            "Numbers the replay re-evaluates: exact rationals, integer depths "
            "and sizes, or digit strings and digit sets as lists of rationals"
        ),
        "additionalProperties": {
            "oneOf": [
                {"$ref": "#/$defs/rational"},
                {"type": "integer"},
                {"type": "array", "items": {"$ref": "#/$defs/rational"}},
            ]
        },
    },
}

CERTIFICATE_SCHEMA: Dict[str, Any] = {
    "$schema": SCHEMA_DIALECT,
    "title": "Certificate",
    "type": "object",
    "required": ["theorem_tag", "witnesses"],
    "additionalProperties": False,
    "properties": {
        "theorem_tag": {"$ref": "#/$defs/theorem_tag"},
        "witnesses": {"$ref": "#/$defs/witnesses"},
    },
    "$defs": _DEFS,
}

VERDICT_SCHEMA: Dict[str, Any] = {
    "$schema": SCHEMA_DIALECT,
    "title": "Verdict",
    "type": "object",
    "required": ["facts", "trichotomy", "caveat"],
    "additionalProperties": False,
    "properties": {
        "facts": {
            "type": "array",
            "description": "Certified facts, each with its own certificate",
            "items": {
                "type": "object",
                "required": ["kind", "theorem_tag", "witnesses"],
                "additionalProperties": False,
                "properties": {
                    "kind": {
                        "type": "string",
                        "enum": [kind.value for kind in FactKind],
                    },
                    "theorem_tag": {"$ref": "#/$defs/theorem_tag"},
                    "witnesses": {"$ref": "#/$defs/witnesses"},
                },
            },
        },
        "trichotomy": {
            "type": ["string", "null"],
            "enum": [label.value for label in Trichotomy] + [None],
            "description": "Label implied by the facts, or null",
        },
        "caveat": {
            "type": "boolean",
            "description": (
                "True when the Cantorval label rests on the trichotomy without a "
                "multigeometric or known-family provenance"
            ),
        },
    },
    "$defs": _DEFS,
}

Draft202012Validator.check_schema(CERTIFICATE_SCHEMA)
Draft202012Validator.check_schema(VERDICT_SCHEMA)


class WireSchemaError(ValueError):
    """Exception raised when a document does not match its published schema."""

    def __init__(self, title: str, path: str, error_msg: str) -> None:
        """Initialize with the schema and the failing location.

        Args:
            title: Title of the schema that was violated
            path: JSON path of the offending value inside the document
            error_msg: Message reported by the validator
        """
        self.title = title
        self.path = path
        self.error_msg = error_msg
        super().__init__(f"{title} does not match its schema at {path}: {error_msg}")


def get_verdict_schema() -> Dict[str, Any]:
    """Get the JSON schema of a serialized Verdict.

    Returns:
        Dict containing a draft 2020-12 schema
    """
    return VERDICT_SCHEMA


def get_certificate_schema() -> Dict[str, Any]:
    """Get the JSON schema of a serialized Certificate."""
    return CERTIFICATE_SCHEMA


def _validate(document: Any, schema: Dict[str, Any]) -> None:
    try:
        Draft202012Validator(schema).validate(document)
    except SchemaValidationError as e:
        logger.warning(
            "Document rejected by schema",
            extra={"schema": schema["title"], "path": e.json_path},
        )
        raise WireSchemaError(schema["title"], e.json_path, e.message) from e


def validate_verdict(document: Any) -> None:
    """Validate a serialized Verdict against the published schema.

    Raises:
        WireSchemaError: If the document does not conform
    """
    _validate(document, VERDICT_SCHEMA)


def validate_certificate(document: Any) -> None:
    """Validate a serialized Certificate against the published schema.

    Raises:
        WireSchemaError: If the document does not conform
    """
    _validate(document, CERTIFICATE_SCHEMA)
