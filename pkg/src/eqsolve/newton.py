"""Newton's method for square systems with a central-difference Jacobian."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidConfig, NonSquare, SingularJacobian, SingularMatrix
from .expr import EquationSystem
from .linalg import as_matrix, lin_solve_general
from .report import Method, SolveReport

# significant digits for the Jacobian probes; None evaluates probes in float64
PROBE_DIGITS = 40


@dataclass(frozen=True)
class NewtonConfig:
    max_iterations: int = 100
    step_tolerance: float = 1e-10
    residual_tolerance: float = 1e-10
    fd_step_scale: float = 1e-7

    def __post_init__(self):
        if self.max_iterations < 1:
            raise InvalidConfig("max_iterations must be >= 1")
        for name in ("step_tolerance", "residual_tolerance", "fd_step_scale"):
            if not getattr(self, name) > 0:
                raise InvalidConfig(f"{name} must be > 0")


def _probe_evaluator(system: EquationSystem, digits):
    if digits is None:
        return system.residual_vector, float
    funcs, ctx = system.precise_residuals(digits)

    def evaluate(x):
        out = []
        for i, f in enumerate(funcs):
            try:
                out.append(f(x))
            except DomainError as exc:
                raise exc.at(equation=i) from None
        return out

    return evaluate, ctx.mpf


def jacobian_fd(system: EquationSystem, x, scale: float = 1e-7, digits: int | None = PROBE_DIGITS) -> np.ndarray:
    """Central-difference Jacobian, ``h_j = scale * max(1, |x_j|)``.

    Probes run at ``digits`` significant digits so that subtracting the two
    nearly equal residuals loses nothing; the quotient is rounded to float
    once. A probe that leaves the domain switches that column to a
    one-sided difference on the other side.
    """
    evaluate, num = _probe_evaluator(system, digits)
    x = [float(v) for v in x]
    if len(x) != system.n:
        raise ValueError(f"point has {len(x)} components, system has {system.n} variables")
    base = [num(v) for v in x]
    f0 = None
    jac = np.empty((system.m, system.n))
    for j in range(system.n):
        h = num(scale * max(1.0, abs(x[j])))
        plus, minus = list(base), list(base)
        plus[j] += h
        minus[j] -= h
        fp = fm = None
        try:
            fp = evaluate(plus)
        except DomainError:
            pass
        try:
            fm = evaluate(minus)
        except DomainError as exc:
            if fp is None:
                raise exc
        if fp is not None and fm is not None:
            col = [(a - b) / (2 * h) for a, b in zip(fp, fm)]
        else:
            if f0 is None:
                f0 = evaluate(base)
            if fp is not None:
                col = [(a - b) / h for a, b in zip(fp, f0)]
            else:
                col = [(b - a) / h for a, b in zip(fm, f0)]
        jac[:, j] = [float(c) for c in col]
    return as_matrix(jac)


def _default_x0(system):
    return [1.0] * system.n


def newton_solve(system: EquationSystem, x0=None, cfg: NewtonConfig = NewtonConfig()) -> SolveReport:
    """Iterate ``x <- x + dx`` with ``J(x) dx = -F(x)``.

    Stops on ``||F|| < residual_tolerance``, ``||dx|| < step_tolerance`` or
    the iteration budget. Singular Jacobians and domain errors end the run
    with ``converged=False`` and keep the trace.
    """
    if system.m != system.n:
        raise NonSquare(system.m, system.n)
    x = np.array(_default_x0(system) if x0 is None else x0, dtype=float)
    if x.shape != (system.n,):
        raise ValueError(f"x0 must have length {system.n}")
    start = time.perf_counter()
    report = SolveReport(Method.NEWTON, [], [], 0, False, x0=x.tolist())

    def finish(reason, error=None):
        report.stop_reason = reason
        report.error = None if error is None else str(error)
        report.solutions = [x.tolist()]
        report.residual_norms = [norm]
        report.elapsed = time.perf_counter() - start
        return report

    try:
        f = np.array(system.residual_vector(x))
    except DomainError as exc:
        norm = math.inf
        return finish("domain_error", exc.at(iteration=0))
    norm = math.hypot(*f)
    report.trace.append((0, norm))
    k = 0
    while True:
        if norm < cfg.residual_tolerance:
            report.converged = True
            return finish("residual")
        if k >= cfg.max_iterations:
            return finish("max_iterations")
        try:
            jac = jacobian_fd(system, x, cfg.fd_step_scale)
            dx = lin_solve_general(jac, -f)
        except DomainError as exc:
            return finish("domain_error", exc.at(iteration=k))
        except SingularMatrix:
            return finish("singular_jacobian", SingularJacobian(k))
        x_new = x + dx
        if not np.all(np.isfinite(x_new)):
            return finish("diverged", f"iterate overflowed at iteration {k + 1}")
        try:
            f_new = np.array(system.residual_vector(x_new))
        except DomainError as exc:
            return finish("domain_error", exc.at(iteration=k + 1))
        x, f, k = x_new, f_new, k + 1
        norm = math.hypot(*f)
        report.iterations = k
        report.trace.append((k, norm))
        if math.hypot(*dx) < cfg.step_tolerance:
            report.converged = True
            return finish("step")
