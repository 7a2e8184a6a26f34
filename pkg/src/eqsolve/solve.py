"""One entry point that runs any of the four methods and returns a SolveReport."""
from __future__ import annotations

import dataclasses
import time

from .errors import DomainError
from .expr import EquationSystem
from .ga import GaConfig, ga_solve
from .linalg import RankDeficientSolution, extract_linear, gaussian_solve
from .lm import LmConfig, lm_solve
from .newton import NewtonConfig, newton_solve
from .report import Method, SolveReport


def gauss_report(system: EquationSystem) -> SolveReport:
    """Extract ``A x = b`` from ``system`` and solve it by elimination.

    Raises ``NotLinear``, ``NonSquare`` or ``Inconsistent`` unchanged.
    """
    start = time.perf_counter()
    result = gaussian_solve(extract_linear(system))
    note = ""
    if isinstance(result, RankDeficientSolution):
        x = result.solution.tolist()
        note = f"rank-deficient (rank {result.rank}); particular solution with free variables at 0"
    else:
        x = result.tolist()
    try:
        norm = system.residual_norm(x)
    except DomainError:
        norm = float("inf")
    report = SolveReport(Method.GAUSS, [x], [norm], 0, True, stop_reason="direct",
                         elapsed=time.perf_counter() - start)
    report.error = note or None
    return report


def run_method(system: EquationSystem, method, x0=None, ga_cfg: GaConfig | None = None,
               newton_cfg: NewtonConfig | None = None, lm_cfg: LmConfig | None = None,
               seed: int | None = None):
    """Run ``method`` and return its SolveReport (a GaResult for the GA)."""
    method = Method(method)
    if method is Method.GAUSS:
        return gauss_report(system)
    if method is Method.NEWTON:
        return newton_solve(system, x0, newton_cfg or NewtonConfig())
    if method is Method.LM:
        return lm_solve(system, x0, lm_cfg or LmConfig())
    cfg = ga_cfg or GaConfig()
    if seed is not None:
        cfg = dataclasses.replace(cfg, seed=seed)
    return ga_solve(system, cfg)
