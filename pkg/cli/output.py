"""Writers for the documents the CLI emits."""
from __future__ import annotations

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Optional, Sequence

import click
from tabulate import tabulate

logger = logging.getLogger(__name__)


def _write(text: str, output: Optional[Path]) -> None:
    if output is None:
        click.echo(text)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text + "\n", encoding="utf-8")
    logger.info(f"Wrote {output}")


def emit_json(document: Any, output: Optional[Path] = None) -> None:
    """Pretty-printed JSON with stable key order."""
    _write(json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False), output)


def emit_csv(
    headers: Sequence[str],
    rows: Sequence[Sequence[Any]],
    output: Optional[Path] = None,
) -> None:
    """CSV with a header row."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    _write(buffer.getvalue().rstrip("\n"), output)


def emit_table(
    headers: Sequence[str],
    rows: Sequence[Sequence[Any]],
    output: Optional[Path] = None,
    title: Optional[str] = None,
) -> None:
    """Grid table for terminal reading."""
    table = tabulate(rows, headers=headers, tablefmt="grid")
    _write(f"{title}\n{table}" if title else table, output)


def compact_witnesses(witnesses: dict[str, Any]) -> str:
    """One-line ``key=value`` rendering that leaves out the digit set."""
    parts = []
    for key, value in witnesses.items():
        if key == "sigma":
            continue
        if isinstance(value, list):
            value = "(" + ",".join(str(item) for item in value) + ")"
        parts.append(f"{key}={value}")
    return " ".join(parts)
