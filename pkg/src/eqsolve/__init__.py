"""Linear and nonlinear equation-system solvers: genetic algorithm, Newton,
Levenberg-Marquardt and Gaussian elimination, plus a benchmark harness."""
from .errors import (
    DimensionMismatch,
    DomainError,
    Inconsistent,
    InvalidConfig,
    NonSquare,
    NotLinear,
    ParseError,
    SingularJacobian,
    SingularMatrix,
    SolverError,
    UnbalancedParentheses,
    UnknownFunction,
)
from .expr import EquationSystem, evaluate, load_system, parse_system, residual_norm, residual_vector
from .ga import GaConfig, GaResult, ga_solve
from .linalg import LinearSystem, RankDeficientSolution, extract_linear, gaussian_solve, lin_solve_general
from .lm import LmConfig, lm_objective, lm_solve
from .newton import NewtonConfig, jacobian_fd, newton_solve
from .report import Method, SolveReport

__version__ = "0.1.0"
