"""Levenberg-Marquardt minimisation of ``||F(x)||^2``."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidConfig, SingularMatrix
from .expr import EquationSystem
from .linalg import add_scaled_identity, lin_solve_general, mat_mul, mat_vec, transpose
from .newton import jacobian_fd
from .report import Method, SolveReport


@dataclass(frozen=True)
class LmConfig:
    lambda_init: float = 1e-3
    lambda_up: float = 10.0
    lambda_down: float = 0.1
    max_iterations: int = 200
    step_tolerance: float = 1e-10
    residual_tolerance: float = 1e-10
    lambda_max: float = 1e12
    # damp with lambda * diag(J^T J) instead of lambda * I
    scale_diagonal: bool = False
    fd_step_scale: float = 1e-7

    def __post_init__(self):
        if not self.lambda_init > 0:
            raise InvalidConfig("lambda_init must be > 0")
        if not self.lambda_up > 1:
            raise InvalidConfig("lambda_up must be > 1")
        if not 0 < self.lambda_down < 1:
            raise InvalidConfig("lambda_down must lie in (0, 1)")
        if self.max_iterations < 1:
            raise InvalidConfig("max_iterations must be >= 1")
        for name in ("step_tolerance", "residual_tolerance", "lambda_max", "fd_step_scale"):
            if not getattr(self, name) > 0:
                raise InvalidConfig(f"{name} must be > 0")
        if self.lambda_init > self.lambda_max:
            raise InvalidConfig("lambda_init exceeds lambda_max")


def lm_objective(system: EquationSystem, x) -> float:
    """Sum of squared residuals."""
    r = system.residual_vector(x)
    return math.fsum(v * v for v in r)


def damped_step(jac, r, lam: float, scale_diagonal: bool = False) -> np.ndarray:
    """Solve ``(J^T J + lam D) dx = -J^T r`` with ``D = I`` or ``diag(J^T J)``."""
    jt = transpose(jac)
    jtj = mat_mul(jt, jac)
    if scale_diagonal:
        lhs = jtj + lam * np.diag(np.diag(jtj))
    else:
        lhs = add_scaled_identity(jtj, lam)
    return lin_solve_general(lhs, -mat_vec(jt, r))


def lm_solve(system: EquationSystem, x0=None, cfg: LmConfig = LmConfig()) -> SolveReport:
    """Levenberg-Marquardt with multiplicative damping updates.

    A step is accepted only if it strictly lowers ``||F||^2``; then the
    damping shrinks by ``lambda_down``, otherwise it grows by ``lambda_up``
    and the step is recomputed from the same point. Rejected trials count
    toward ``max_iterations``. The trace lists ``||F||`` at the start point
    and after every accepted step.
    """
    if system.m < system.n:
        raise ValueError(f"underdetermined system: {system.m} equations, {system.n} unknowns")
    x = np.array([1.0] * system.n if x0 is None else x0, dtype=float)
    if x.shape != (system.n,):
        raise ValueError(f"x0 must have length {system.n}")
    start = time.perf_counter()
    report = SolveReport(Method.LM, [], [], 0, False, x0=x.tolist())
    norm = math.inf

    def finish(reason, error=None):
        report.stop_reason = reason
        report.error = None if error is None else str(error)
        report.solutions = [x.tolist()]
        report.residual_norms = [norm]
        report.elapsed = time.perf_counter() - start
        return report

    try:
        r = np.array(system.residual_vector(x))
        jac = jacobian_fd(system, x, cfg.fd_step_scale)
    except DomainError as exc:
        return finish("domain_error", exc.at(iteration=0))
    cost = float(r @ r)
    norm = math.sqrt(cost)
    report.trace.append((0, norm))
    lam = cfg.lambda_init
    k = 0
    while True:
        if norm < cfg.residual_tolerance:
            report.converged = True
            return finish("residual")
        if k >= cfg.max_iterations:
            return finish("max_iterations")
        if lam > cfg.lambda_max:
            return finish("lambda_max")
        k += 1
        report.iterations = k
        try:
            dx = damped_step(jac, r, lam, cfg.scale_diagonal)
        except SingularMatrix:
            # numerically singular at this damping; more damping restores definiteness
            lam *= cfg.lambda_up
            continue
        x_try = x + dx
        try:
            if not np.all(np.isfinite(x_try)):
                raise DomainError("step overflowed")
            r_try = np.array(system.residual_vector(x_try))
            cost_try = float(r_try @ r_try)
        except DomainError:
            lam *= cfg.lambda_up
            continue
        if not cost_try < cost:
            lam *= cfg.lambda_up
            continue
        x, r, cost = x_try, r_try, cost_try
        norm = math.sqrt(cost)
        lam *= cfg.lambda_down
        report.trace.append((k, norm))
        if math.hypot(*dx) < cfg.step_tolerance:
            report.converged = True
            return finish("step")
        if norm < cfg.residual_tolerance:
            continue
        try:
            jac = jacobian_fd(system, x, cfg.fd_step_scale)
        except DomainError as exc:
            return finish("domain_error", exc.at(iteration=k))
