"""Exception types shared by the parser, the solvers and the benchmark harness."""


class SolverError(Exception):
    """Base class for every error raised by this package."""


class ParseError(SolverError):
    """Malformed equation text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        self.message = message
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class UnknownFunction(ParseError):
    def __init__(self, name, line=None, column=None):
        self.name = name
        super().__init__(f"unknown function {name!r}", line, column)


class UnbalancedParentheses(ParseError):
    pass


class DomainError(SolverError, ArithmeticError):
    """An expression was evaluated outside the domain of real arithmetic.

    ``equation`` is filled in by callers that know which residual failed;
    ``iteration`` by iterative solvers.
    """

    def __init__(self, message, equation=None, iteration=None):
        self.message = message
        self.equation = equation
        self.iteration = iteration
        super().__init__(self._render())

    def _render(self):
        parts = [self.message]
        if self.equation is not None:
            parts.append(f"equation {self.equation}")
        if self.iteration is not None:
            parts.append(f"iteration {self.iteration}")
        return " | ".join(parts)

    def at(self, equation=None, iteration=None):
        """Return a copy annotated with an equation index and/or iteration."""
        return DomainError(
            self.message,
            self.equation if equation is None else equation,
            self.iteration if iteration is None else iteration,
        )


class DimensionMismatch(SolverError, ValueError):
    pass


class NotLinear(SolverError):
    def __init__(self, equation, point):
        self.equation = equation
        self.point = tuple(float(v) for v in point)
        super().__init__(f"equation {equation} is not linear (probe point {self.point})")


class NonSquare(SolverError, ValueError):
    def __init__(self, m, n):
        self.m = m
        self.n = n
        super().__init__(f"system is not square: {m} equations, {n} unknowns")


class Inconsistent(SolverError):
    def __init__(self, rank_a, rank_augmented):
        self.rank_a = rank_a
        self.rank_augmented = rank_augmented
        super().__init__(f"inconsistent system: rank(A)={rank_a} < rank([A|b])={rank_augmented}")


class SingularMatrix(SolverError):
    pass


class SingularJacobian(SingularMatrix):
    def __init__(self, iteration):
        self.iteration = iteration
        super().__init__(f"singular Jacobian at iteration {iteration}")


class InvalidConfig(SolverError, ValueError):
    pass
