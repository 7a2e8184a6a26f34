"""CSV / JSON / Markdown renderings of benchmark rows, and trace files."""
from __future__ import annotations

import csv
import io
import json
import math
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from ..report import Method, SolveReport
from .harness import BenchReportRow
from .registry import Kind, get_case

COLUMNS = ("case", "method", "solution", "residual_norm", "iterations", "elapsed_ms",
           "converged", "discrepancy", "seed", "note")
FORMATS = ("csv", "json", "markdown")


@contextmanager
def _open(destination):
    """Yield a text stream for a path, ``"-"``/``None`` (stdout) or an open stream."""
    if destination is None or destination == "-":
        yield sys.stdout
    elif hasattr(destination, "write"):
        yield destination
    else:
        path = Path(destination)
        try:
            with path.open("w", newline="") as fh:
                yield fh
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def format_number(v: float) -> str:
    """Fixed-point with 10 significant digits."""
    if not math.isfinite(v):
        return str(v)
    return np.format_float_positional(float(v), precision=10, unique=False, fractional=False, trim="k")


def format_solutions(solutions) -> str:
    return "|".join(";".join(format_number(v) for v in s) for s in solutions)


def _flat(row: BenchReportRow, canonical: bool) -> dict:
    return {
        "case": row.case,
        "method": row.method,
        "solution": format_solutions(row.solutions),
        "residual_norm": "|".join(f"{v:.6e}" for v in row.residual_norms),
        "iterations": str(row.iterations),
        "elapsed_ms": "0" if canonical else f"{row.elapsed_ms:.3f}",
        "converged": "true" if row.converged else "false",
        "discrepancy": "n/a" if row.discrepancy is None else f"{row.discrepancy:.6e}",
        "seed": "" if row.seed is None else str(row.seed),
        "note": row.note,
    }


def _json_row(row: BenchReportRow, canonical: bool) -> dict:
    return {
        "case": row.case,
        "method": row.method,
        "solution": row.solutions,
        "residual_norm": row.residual_norms,
        "iterations": row.iterations,
        "elapsed_ms": 0.0 if canonical else row.elapsed_ms,
        "converged": row.converged,
        "discrepancy": "n/a" if row.discrepancy is None else row.discrepancy,
        "seed": row.seed,
        "note": row.note,
    }


def rows_from_json(text: str) -> list[BenchReportRow]:
    rows = []
    for d in json.loads(text):
        rows.append(BenchReportRow(
            case=d["case"],
            method=d["method"],
            solutions=[list(s) for s in d["solution"]],
            residual_norms=list(d["residual_norm"]),
            iterations=d["iterations"],
            elapsed_ms=d["elapsed_ms"],
            converged=d["converged"],
            discrepancy=None if d["discrepancy"] == "n/a" else d["discrepancy"],
            seed=d["seed"],
            note=d["note"],
        ))
    return rows


def _kind_of(case_id: str) -> str:
    try:
        return get_case(case_id).kind.value
    except KeyError:
        return "custom"


def _markdown(rows, canonical: bool) -> str:
    headings = {Kind.LINEAR.value: "Linear systems", Kind.NONLINEAR.value: "Nonlinear systems",
                "custom": "Other systems"}
    out = []
    for kind in (Kind.LINEAR.value, Kind.NONLINEAR.value, "custom"):
        kind_rows = [r for r in rows if _kind_of(r.case) == kind]
        if not kind_rows:
            continue
        out.append(f"## {headings[kind]}\n")
        for case_id in dict.fromkeys(r.case for r in kind_rows):
            out.append(f"### {case_id}\n")
            try:
                case = get_case(case_id)
                system = case.system_text.replace("\n", "; ")
                out.append(f"System: `{system}`\n")
                if case.notes:
                    out.append(f"Note: {case.notes}\n")
            except KeyError:
                pass
            out.append("| " + " | ".join(c for c in COLUMNS if c != "case") + " |")
            out.append("|" + "---|" * (len(COLUMNS) - 1))
            for r in kind_rows:
                if r.case != case_id:
                    continue
                flat = _flat(r, canonical)
                flat["solution"] = flat["solution"].replace("|", " \\| ")
                flat["residual_norm"] = flat["residual_norm"].replace("|", " \\| ")
                flat["note"] = flat["note"].replace("|", "\\|")
                out.append("| " + " | ".join(flat[c] for c in COLUMNS if c != "case") + " |")
            out.append("")
    return "\n".join(out)


def render_report(rows, fmt: str = "csv", canonical: bool = False) -> str:
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to report")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow(_flat(r, canonical))
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([_json_row(r, canonical) for r in rows], indent=2) + "\n"
    if fmt == "markdown":
        return _markdown(rows, canonical)
    raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")


def emit_report(rows, fmt: str = "csv", destination=None, canonical: bool = False) -> None:
    """Write ``rows`` as CSV, JSON or Markdown; ``canonical`` zeroes the timing column."""
    text = render_report(rows, fmt, canonical)
    with _open(destination) as fh:
        fh.write(text)


def trace_header(report: SolveReport) -> tuple[str, str]:
    if report.method is Method.GA:
        return "generation", "best_fitness"
    return "iteration", "residual_norm"


def emit_trace(report: SolveReport, destination=None) -> None:
    """Two-column CSV of the per-iteration merit values in ``report.trace``."""
    if not report.trace:
        raise ValueError(f"{report.method.value} report has no trace")
    with _open(destination) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(trace_header(report))
        for k, v in report.trace:
            writer.writerow([k, repr(float(v))])
