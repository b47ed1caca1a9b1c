"""Command-line interface for the cantorval engine.

Every command prints one JSON document (or a CSV/table rendering of it) on
stdout; diagnostics go to stderr. Exit codes: 0 success, 1 failed
verification or unwritable output, 2 invalid input, 3 inconclusive within
the configured budgets.
"""
from __future__ import annotations

import functools
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional, TypeVar

import click

from bounds.alpha import alpha_lower, alpha_lower_via_star
from classify.engine import ClassificationContext, ae_positive_window, classify
from classify.sweep import SweepCell, sweep
from cli.inputs import (
    SigmaInput,
    exact_ratio,
    resolve_ratio,
    resolve_sigma,
    resolve_tolerance,
)
from cli.output import compact_witnesses, emit_csv, emit_json, emit_table
from core.config import EnumerationBudgetError
from core.families import KNOWN_SEQUENCES
from core.gaps import gap_stats
from core.rational import format_decimal, format_rational, parse_rational
from core.refine import UndecidedComparisonError
from nullseq.qn import qn_sequence
from nullseq.witness import star_condition_witness
from render.diagram import DiagramSpec, diagram_from_sweep, label_for
from render.svg import RenderError, render_svg
from sumsets.measure import (
    cover_intervals,
    cover_length,
    null_certificate,
    sumset_report,
)
from sumsets.rational_ratio import full_sumset_check, t12_check
from verification.parser import collect_certificates, load_document
from verification.replay import format_result, replay_all

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3

F = TypeVar("F", bound=Callable[..., Any])


def handle_errors(func: F) -> F:
    """Map domain exceptions to exit codes with a one-line diagnostic."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except (EnumerationBudgetError, UndecidedComparisonError) as e:
            logger.warning(f"Inconclusive: {e}")
            click.echo(f"Inconclusive: {e}", err=True)
            sys.exit(EXIT_INCONCLUSIVE)
        except RenderError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_FAILURE)
        except ValueError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_INVALID)

    return wrapper  # type: ignore[return-value]


def sigma_options(func: F) -> F:
    """The four mutually exclusive digit set sources."""
    options = [
        click.option("--sigma", help="Digits, e.g. 0,2,3,5 or 0,1/2,1"),
        click.option(
            "--multigeometric",
            help="Coefficients with optional ratio, e.g. 4,3,2 or 6,5,4,3;1/14",
        ),
        click.option(
            "--sigma-file",
            type=click.Path(exists=True, dir_okay=False, path_type=Path),
            help="JSON file: a digit list, {sigma, q} or {coefficients, ratio}",
        ),
        click.option(
            "--preset",
            type=click.Choice(sorted(KNOWN_SEQUENCES)),
            help="Registered multigeometric sequence",
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def format_option(*choices: str) -> Callable[[F], F]:
    return click.option(
        "--format",
        "fmt",
        type=click.Choice(list(choices)),
        default=choices[0],
        show_default=True,
        help="Output format",
    )


output_option = click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write to this file instead of stdout",
)
q_option = click.option("--q", "q_text", help="Ratio: exact rational or qn:s,n")
tol_option = click.option("--tol", help="Enclosure width, e.g. 1/1000000000000")


def _base_document(source: SigmaInput) -> dict[str, Any]:
    return {
        "sigma": source.sigma.to_wire(),
        "size": source.sigma.size,
        "multigeometric": source.multigeometric,
    }


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Enable debug logging")
def cli(verbose: bool) -> None:
    """Certified classification of self-similar sets K(Σ;q)."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


@cli.command("classify")
@sigma_options
@q_option
@click.option("--depth", type=int, default=4, show_default=True)
@tol_option
@format_option("json", "table", "csv")
@output_option
@handle_errors
def cmd_classify(
    sigma: Optional[str],
    multigeometric: Optional[str],
    sigma_file: Optional[Path],
    preset: Optional[str],
    q_text: Optional[str],
    depth: int,
    tol: Optional[str],
    fmt: str,
    output: Optional[Path],
) -> None:
    """Classify K(Σ;q) at one ratio."""
    source = resolve_sigma(sigma, multigeometric, sigma_file, preset)
    q = resolve_ratio(q_text, source.default_q, resolve_tolerance(tol))
    ctx = ClassificationContext(
        source.sigma, multigeometric=source.multigeometric
    ).prepare()
    verdict = classify(
        source.sigma, q, depth, multigeometric=source.multigeometric, context=ctx
    )

    if fmt == "json":
        document = {
            **_base_document(source),
            "q": q.to_wire(),
            "gap_stats": ctx.stats.to_wire(),
            "window": ctx.window.to_wire() if ctx.window else None,
            "verdict": verdict.to_wire(),
        }
        emit_json(document, output)
    else:
        headers = ["Fact", "Theorem", "Witnesses"]
        rows = [
            [
                fact.kind.value,
                fact.certificate.theorem_tag.value,
                compact_witnesses(fact.certificate.witnesses),
            ]
            for fact in verdict.facts
        ]
        if fmt == "csv":
            emit_csv(headers, rows, output)
        else:
            label = verdict.trichotomy.value if verdict.trichotomy else "no label"
            caveat = " (caveat: trichotomy not known for Σ)" if verdict.caveat else ""
            title = f"K({source.sigma}; {format_decimal((q.lo + q.hi) / 2, 6)})"
            emit_table(headers, rows, output, title=f"{title}: {label}{caveat}")

    if verdict.trichotomy is None:
        sys.exit(EXIT_INCONCLUSIVE)


def _sweep_rows(cells: list[SweepCell]) -> list[list[Any]]:
    return [
        [
            cell.interval_text(),
            label_for(cell).value,
            cell.verdict.trichotomy.value if cell.verdict.trichotomy else "",
            cell.verdict.caveat,
            " ".join(sorted(kind.value for kind in cell.verdict.kinds)),
        ]
        for cell in cells
    ]


def _run_sweep(
    source: SigmaInput, resolution: Optional[int], depth: Optional[int]
) -> tuple[list[SweepCell], DiagramSpec]:
    cells = sweep(
        source.sigma, resolution, depth, multigeometric=source.multigeometric
    )
    diagram = diagram_from_sweep(cells, ae_positive_window(source.sigma))
    return cells, diagram


@cli.command("sweep")
@sigma_options
@click.option("--resolution", type=int, help="Grid denominator for the sweep")
@click.option("--depth", type=int, help="Null certificate depth per cell")
@format_option("json", "csv", "table", "svg")
@output_option
@handle_errors
def cmd_sweep(
    sigma: Optional[str],
    multigeometric: Optional[str],
    sigma_file: Optional[Path],
    preset: Optional[str],
    resolution: Optional[int],
    depth: Optional[int],
    fmt: str,
    output: Optional[Path],
) -> None:
    """Classify every cell of the q-axis and merge equal neighbours."""
    source = resolve_sigma(sigma, multigeometric, sigma_file, preset)
    if fmt == "svg" and output is None:
        raise ValueError("--format svg needs --output")
    cells, diagram = _run_sweep(source, resolution, depth)

    headers = ["Cell", "Label", "Trichotomy", "Caveat", "Facts"]
    if fmt == "json":
        document = {
            **_base_document(source),
            "cells": [cell.to_wire() for cell in cells],
            "diagram": diagram.to_wire(),
        }
        emit_json(document, output)
    elif fmt == "csv":
        emit_csv(headers, _sweep_rows(cells), output)
    elif fmt == "table":
        title = f"Sweep of {source.sigma}"
        emit_table(headers, _sweep_rows(cells), output, title=title)
    else:
        click.echo(str(render_svg(diagram, output)))


@cli.command("render")
@sigma_options
@click.option("--resolution", type=int, help="Grid denominator for the sweep")
@click.option("--depth", type=int, help="Null certificate depth per cell")
@click.option(
    "--output",
    "-o",
    required=True,
    type=click.Path(dir_okay=False, path_type=Path),
    help="SVG file; the JSON sidecar is written next to it",
)
@handle_errors
def cmd_render(
    sigma: Optional[str],
    multigeometric: Optional[str],
    sigma_file: Optional[Path],
    preset: Optional[str],
    resolution: Optional[int],
    depth: Optional[int],
    output: Path,
) -> None:
    """Sweep the q-axis and draw the diagram as SVG."""
    source = resolve_sigma(sigma, multigeometric, sigma_file, preset)
    _, diagram = _run_sweep(source, resolution, depth)
    click.echo(str(render_svg(diagram, output)))


@cli.command("nullcert")
@sigma_options
@q_option
@click.option("--depth", type=int, default=4, show_default=True)
@output_option
@handle_errors
def cmd_nullcert(
    sigma: Optional[str],
    multigeometric: Optional[str],
    sigma_file: Optional[Path],
    preset: Optional[str],
    q_text: Optional[str],
    depth: int,
    output: Optional[Path],
) -> None:
    """Search for |Σₙ|·qⁿ < 1 up to the given depth."""
    source = resolve_sigma(sigma, multigeometric, sigma_file, preset)
    q = exact_ratio(resolve_ratio(q_text, source.default_q, resolve_tolerance(None)))
    certificate = null_certificate(source.sigma, q, depth)
    report = sumset_report(source.sigma, q, certificate.depth if certificate else depth)
    document = {
        **_base_document(source),
        "q": format_rational(q),
        "sumset": report.to_wire(),
        "null_certificate": certificate.to_wire() if certificate else None,
    }
    emit_json(document, output)
    if certificate is None:
        sys.exit(EXIT_INCONCLUSIVE)


@cli.command("bounds")
@click.option("--d", "d_text", help="Smallest gap over diameter, in (0, 1/2]")
@sigma_options
@tol_option
@click.option("--via-star", is_flag=True, help="Cross-check through (*)-functions")
@format_option("json", "table")
@output_option
@handle_errors
def cmd_bounds(
    d_text: Optional[str],
    sigma: Optional[str],
    multigeometric: Optional[str],
    sigma_file: Optional[Path],
    preset: Optional[str],
    tol: Optional[str],
    via_star: bool,
    fmt: str,
    output: Optional[Path],
) -> None:
    """Lower bound α̲(d), from --d or from the gap statistics of Σ."""
    tolerance = resolve_tolerance(tol)
    document: dict[str, Any] = {}
    if d_text is not None:
        sources = (sigma, multigeometric, sigma_file, preset)
        if any(value is not None for value in sources):
            raise ValueError("Give either --d or a digit set, not both")
        d = parse_rational(d_text)
    else:
        source = resolve_sigma(sigma, multigeometric, sigma_file, preset)
        stats = gap_stats(source.sigma)
        d = stats.d
        window = ae_positive_window(source.sigma, tolerance)
        document.update(
            {
                **_base_document(source),
                "gap_stats": stats.to_wire(),
                "window": window.to_wire() if window else None,
            }
        )
    bound = alpha_lower(d, tolerance)
    document["alpha_lower"] = bound.to_wire()
    rows = [
        [
            "alpha_lower",
            bound.branch.value,
            format_rational(bound.value.lo),
            format_rational(bound.value.hi),
            format_decimal((bound.value.lo + bound.value.hi) / 2),
        ]
    ]
    if via_star:
        star = alpha_lower_via_star(d, tolerance)
        document["via_star"] = star.to_wire()
        rows.append(
            [
                "via_star",
                "Star",
                format_rational(star.lo),
                format_rational(star.hi),
                format_decimal((star.lo + star.hi) / 2),
            ]
        )

    if fmt == "json":
        emit_json(document, output)
    else:
        headers = ["Method", "Branch", "Lower", "Upper", "Decimal"]
        emit_table(headers, rows, output, title=f"α̲(d) for d = {format_rational(d)}")


@cli.command("cover")
@sigma_options
@q_option
@click.option("--depth", type=int, default=3, show_default=True)
@format_option("json", "csv")
@output_option
@handle_errors
def cmd_cover(
    sigma: Optional[str],
    multigeometric: Optional[str],
    sigma_file: Optional[Path],
    preset: Optional[str],
    q_text: Optional[str],
    depth: int,
    fmt: str,
    output: Optional[Path],
) -> None:
    """Exact length of the depth-n interval cover of K(Σ;q)."""
    source = resolve_sigma(sigma, multigeometric, sigma_file, preset)
    q = exact_ratio(resolve_ratio(q_text, source.default_q, resolve_tolerance(None)))
    intervals = cover_intervals(source.sigma, q, depth)
    if fmt == "csv":
        rows = [
            [format_rational(lo), format_rational(hi), format_rational(hi - lo)]
            for lo, hi in intervals
        ]
        emit_csv(["lo", "hi", "length"], rows, output)
        return

    document = {
        **_base_document(source),
        "q": format_rational(q),
        "cover": cover_length(source.sigma, q, depth).to_wire(),
        "intervals": [
            [format_rational(lo), format_rational(hi)] for lo, hi in intervals
        ],
    }
    emit_json(document, output)


@cli.command("qnseq")
@sigma_options
@click.option("--count", type=int, default=3, show_default=True)
@tol_option
@format_option("json", "table")
@output_option
@handle_errors
def cmd_qnseq(
    sigma: Optional[str],
    multigeometric: Optional[str],
    sigma_file: Optional[Path],
    preset: Optional[str],
    count: int,
    tol: Optional[str],
    fmt: str,
    output: Optional[Path],
) -> None:
    """Ratios qₙ ↘ 1/|Σ| with measure-zero certificates."""
    source = resolve_sigma(sigma, multigeometric, sigma_file, preset)
    certificates = qn_sequence(source.sigma, count, resolve_tolerance(tol))

    if fmt == "json":
        witness = star_condition_witness(source.sigma)
        document = {
            **_base_document(source),
            "witness": witness.to_wire() if witness else None,
            "sequence": [certificate.to_wire() for certificate in certificates],
        }
        emit_json(document, output)
        return

    headers = ["n", "q lower", "q upper", "q decimal", "(s^n - 2^(n-1)) q^n"]
    rows = [
        [
            certificate.n,
            format_rational(certificate.q_enclosure.lo),
            format_rational(certificate.q_enclosure.hi),
            format_decimal(certificate.q_enclosure.lo),
            format_decimal(certificate.collapsed_bound),
        ]
        for certificate in certificates
    ]
    emit_table(headers, rows, output, title=f"Null ratios for {source.sigma}")


@cli.command("t12")
@sigma_options
@q_option
@click.option("--depth", type=int, default=10, show_default=True)
@click.option(
    "--collisions",
    is_flag=True,
    help="Search for equal digit-string sums at q = 1/|Σ| instead",
)
@output_option
@handle_errors
def cmd_t12(
    sigma: Optional[str],
    multigeometric: Optional[str],
    sigma_file: Optional[Path],
    preset: Optional[str],
    q_text: Optional[str],
    depth: int,
    collisions: bool,
    output: Optional[Path],
) -> None:
    """Integer digits at q = 1/(k+1): measure zero or no violation up to depth."""
    source = resolve_sigma(sigma, multigeometric, sigma_file, preset)
    document = _base_document(source)
    if collisions:
        collision = full_sumset_check(source.sigma, depth)
        document.update({"q": f"1/{source.sigma.size}", "report": collision.to_wire()})
        emit_json(document, output)
        conclusive = collision.outcome == "collision"
    else:
        q = exact_ratio(
            resolve_ratio(q_text, source.default_q, resolve_tolerance(None))
        )
        report = t12_check(source.sigma, q, depth)
        document.update({"q": format_rational(q), "report": report.to_wire()})
        emit_json(document, output)
        conclusive = report.outcome == "zero_measure"
    if not conclusive:
        sys.exit(EXIT_INCONCLUSIVE)


@cli.command("verify")
@click.argument(
    "files",
    nargs=-1,
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@handle_errors
def cmd_verify(files: tuple[Path, ...]) -> None:
    """Replay every certificate found in the given JSON documents."""
    rows = []
    total = failed = 0
    for path in files:
        results = replay_all(collect_certificates(load_document(path)))
        for result in results:
            click.echo(format_result(result))
        bad = sum(not result.passed for result in results)
        rows.append([str(path), len(results), len(results) - bad, bad])
        total += len(results)
        failed += bad

    headers = ["File", "Certificates", "Passed", "Failed"]
    emit_table(headers, rows, title="Replay summary")
    if failed:
        sys.exit(EXIT_FAILURE)
    if total == 0:
        click.echo("No certificates found", err=True)
        sys.exit(EXIT_INCONCLUSIVE)


def main() -> None:
    """Run the CLI."""
    cli(prog_name="cantorval")


if __name__ == "__main__":
    main()
