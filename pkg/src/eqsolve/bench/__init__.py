"""Benchmark registry, comparison harness, report writers and CLI."""
from .harness import BenchReportRow, discrepancy, run_case, run_suite
from .output import emit_report, emit_trace, render_report, rows_from_json
from .registry import BenchmarkCase, Kind, Reference, get_case, registry, suite
