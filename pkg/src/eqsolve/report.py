"""Result record shared by every solver."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Method(str, Enum):
    GAUSS = "gauss"
    NEWTON = "newton"
    LM = "lm"
    GA = "ga"


@dataclass
class SolveReport:
    """Outcome of one solver run.

    ``trace`` holds ``(iteration, merit)`` pairs: the residual norm for
    Newton/LM (iteration 0 is the starting point) and the best fitness per
    generation for the GA. ``error`` is set on failed runs.
    """

    method: Method
    solutions: list[list[float]]
    residual_norms: list[float]
    iterations: int
    converged: bool
    trace: list[tuple[int, float]] = field(default_factory=list)
    elapsed: float = 0.0
    x0: list[float] | None = None
    stop_reason: str = ""
    error: str | None = None

    @property
    def solution(self) -> list[float] | None:
        return self.solutions[0] if self.solutions else None
