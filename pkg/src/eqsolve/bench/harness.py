"""Run solvers over benchmark cases and collect comparable rows."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ..errors import SolverError
from ..ga import GaConfig, GaResult
from ..lm import LmConfig
from ..newton import NewtonConfig
from ..report import Method, SolveReport
from ..solve import run_method
from .registry import BenchmarkCase

METHOD_ORDER = (Method.GAUSS, Method.NEWTON, Method.LM, Method.GA)


@dataclass
class BenchReportRow:
    case: str
    method: str
    solutions: list[list[float]]
    residual_norms: list[float]
    iterations: int
    elapsed_ms: float
    converged: bool
    discrepancy: float | None  # None renders as "n/a"
    seed: int | None = None
    note: str = ""
    # kept in memory for trace output; not serialised
    report: SolveReport | None = field(default=None, compare=False, repr=False)


def discrepancy(solution, references) -> float | None:
    """Smallest infinity-norm distance from ``solution`` to any reference."""
    if solution is None or not references:
        return None
    x = np.asarray(solution, dtype=float)
    return float(min(np.max(np.abs(x - np.asarray(r, dtype=float))) for r in references))


def report_row(case: BenchmarkCase, report: SolveReport, seed=None) -> BenchReportRow:
    note = report.error or ""
    if not report.converged and report.stop_reason and report.stop_reason not in note:
        note = f"{report.stop_reason}: {note}" if note else report.stop_reason
    return BenchReportRow(
        case=case.id,
        method=report.method.value,
        solutions=[list(map(float, s)) for s in report.solutions],
        residual_norms=[float(v) for v in report.residual_norms],
        iterations=report.iterations,
        elapsed_ms=report.elapsed * 1e3,
        converged=report.converged,
        discrepancy=discrepancy(report.solution, case.reference_solutions),
        seed=seed,
        note=note,
        report=report,
    )


def _failed_row(case, method, exc, elapsed, seed=None) -> BenchReportRow:
    return BenchReportRow(case.id, method.value, [], [], 0, elapsed * 1e3, False, None, seed,
                          f"{type(exc).__name__}: {exc}")


def run_case(case: BenchmarkCase, methods: Iterable, ga_cfg: GaConfig | None = None,
             newton_cfg: NewtonConfig | None = None, lm_cfg: LmConfig | None = None,
             seeds: Iterable[int] | None = None, x0=None) -> list[BenchReportRow]:
    """Run every requested method on ``case``; the GA runs once per seed.

    A method that raises produces a non-converged row carrying the error, so
    one failure never hides the other methods' results.
    """
    ga_cfg = ga_cfg or GaConfig()
    seeds = [ga_cfg.seed] if seeds is None else list(seeds)
    start_point = x0 if x0 is not None else case.default_x0
    wanted = {Method(m) for m in methods}
    try:
        system = case.system
    except SolverError as exc:
        return [_failed_row(case, m, exc, 0.0) for m in METHOD_ORDER if m in wanted]
    rows = []
    for method in METHOD_ORDER:
        if method not in wanted:
            continue
        for seed in (seeds if method is Method.GA else [None]):
            t0 = time.perf_counter()
            try:
                out = run_method(system, method, start_point, ga_cfg, newton_cfg, lm_cfg, seed=seed)
            except (SolverError, ValueError, ArithmeticError) as exc:
                rows.append(_failed_row(case, method, exc, time.perf_counter() - t0, seed))
                continue
            report = out.report if isinstance(out, GaResult) else out
            rows.append(report_row(case, report, seed))
    return rows


def run_suite(cases: Iterable[BenchmarkCase], methods, seeds, ga_cfg=None, newton_cfg=None,
              lm_cfg=None) -> list[BenchReportRow]:
    """Serial sweep; rows come back in (case, method, seed) order."""
    rows = []
    for case in cases:
        rows.extend(run_case(case, methods, ga_cfg, newton_cfg, lm_cfg, seeds))
    return rows


def median_elapsed(rows, case_id, method) -> float:
    values = [r.elapsed_ms for r in rows if r.case == case_id and r.method == Method(method).value]
    return float(np.median(values)) if values else math.nan
