"""Text, CSV and JSON-lines output for protocol runs, sweeps and verification.

Reports go through Jinja2 templates shipped in ``templates/``; tabular sweep
output is written directly so it stays byte-stable. Every number leaves
through :func:`format_number`, which never depends on the locale.
"""

from __future__ import annotations

import csv
import functools
import json
from typing import IO, Any, Iterable, Mapping, NamedTuple, Sequence

from jinja2 import Environment, PackageLoader, StrictUndefined

from .measurement import ProtocolKind
from .protocols import STAGE_DESCRIPTIONS, PeakPoint, ProtocolReport, SweepRow
from .settings import get_setting
from .verification import VerificationSummary

__all__ = [
    "SWEEP_FIELDS",
    "SweepCurve",
    "format_number",
    "format_complex",
    "make_environment",
    "render_report",
    "render_report_json",
    "render_verification",
    "write_sweep_csv",
    "write_sweep_json_lines",
]

SWEEP_FIELDS = ("protocol", "alpha", "c1", "c2", "p_paper", "p_exact", "fidelity")


class SweepCurve(NamedTuple):
    """Rows of one sweep at a fixed alpha, with the located peak."""

    kind: ProtocolKind
    alpha: float
    rows: Sequence[SweepRow]
    peak: PeakPoint


def format_number(value: float, settings: Mapping[str, Any] | None = None) -> str:
    """Fixed significant-digit rendering with a ``.`` decimal point."""
    digits = int(get_setting("CSV_SIGNIFICANT_DIGITS", settings))
    return format(float(value) + 0.0, f".{digits}g")


def format_complex(value: complex, places: int = 6) -> str:
    # +0.0 folds negative zeros left by rounding
    real = round(value.real, places) + 0.0
    imag = round(value.imag, places) + 0.0
    if imag == 0.0:
        return f"{real:+.{places}f}"
    return f"{real:+.{places}f}{imag:+.{places}f}j"


def make_environment() -> Environment:
    """Jinja2 environment over the packaged templates, with number filters."""
    env = Environment(
        loader=PackageLoader("ecs_concentration", "templates"),
        undefined=StrictUndefined,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
        autoescape=False,
    )
    env.filters["num"] = format_number
    env.filters["cplx"] = format_complex
    return env


@functools.lru_cache(maxsize=None)
def _get_environment() -> Environment:
    return make_environment()


def render_report(report: ProtocolReport) -> str:
    """Stage-by-stage text report: term tables, probabilities and fidelity."""
    template = _get_environment().get_template("report.txt.j2")
    return template.render(
        report=report,
        config=report.config,
        stages=report.stages,
        kind_number=int(report.kind),
        kind_name=report.kind.name.lower(),
        descriptions=STAGE_DESCRIPTIONS,
    )


def render_report_json(report: ProtocolReport) -> str:
    """One JSON object holding :meth:`ProtocolReport.to_dict`, newline-terminated."""
    return json.dumps(report.to_dict(), sort_keys=False) + "\n"


def render_verification(summary: VerificationSummary) -> str:
    template = _get_environment().get_template("verify.txt.j2")
    return template.render(summary=summary)


def _row_values(curve: SweepCurve, row: SweepRow) -> tuple[Any, ...]:
    return (
        int(curve.kind),
        curve.alpha,
        row.c1,
        row.c2,
        row.paper_probability,
        row.exact_probability,
        row.final_fidelity,
    )


def write_sweep_csv(
    stream: IO[str],
    curves: Iterable[SweepCurve],
    settings: Mapping[str, Any] | None = None,
) -> None:
    """Write ``protocol,alpha,c1,c2,p_paper,p_exact,fidelity`` rows.

    Each curve is followed by a ``# peak alpha=<a> c1=<c> p=<p>`` comment.
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SWEEP_FIELDS)
    for curve in curves:
        for row in curve.rows:
            values = _row_values(curve, row)
            writer.writerow([values[0], *(format_number(v, settings) for v in values[1:])])
        stream.write(
            f"# peak alpha={format_number(curve.alpha, settings)}"
            f" c1={format_number(curve.peak.c1, settings)}"
            f" p={format_number(curve.peak.paper_probability, settings)}\n"
        )


def write_sweep_json_lines(
    stream: IO[str],
    curves: Iterable[SweepCurve],
    settings: Mapping[str, Any] | None = None,
) -> None:
    """One JSON object per row with the CSV field names; peaks carry ``"peak": true``."""
    for curve in curves:
        for row in curve.rows:
            values = _row_values(curve, row)
            record: dict[str, Any] = {SWEEP_FIELDS[0]: values[0]}
            record.update(
                (name, float(format_number(v, settings)))
                for name, v in zip(SWEEP_FIELDS[1:], values[1:])
            )
            stream.write(json.dumps(record) + "\n")
        peak = {
            "protocol": int(curve.kind),
            "alpha": float(format_number(curve.alpha, settings)),
            "c1": float(format_number(curve.peak.c1, settings)),
            "p_paper": float(format_number(curve.peak.paper_probability, settings)),
            "peak": True,
        }
        stream.write(json.dumps(peak) + "\n")
