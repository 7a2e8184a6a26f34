"""The thirteen benchmark systems and their reference solutions.

Values tagged ``PUBLISHED`` are copied digit for digit from the published
tables; ``DERIVED`` values were computed independently (hand algebra or a
30-digit mpmath root polish) and are given to 12 significant digits.
A reference with ``consistent=False`` is a printed value that does not
satisfy its own system; it is kept for the record and excluded from
discrepancy scoring.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..expr import EquationSystem, parse_system

PUBLISHED = "published"
DERIVED = "derived"


class Kind(str, Enum):
    LINEAR = "linear"
    NONLINEAR = "nonlinear"


@dataclass(frozen=True)
class Reference:
    values: tuple[float, ...]
    provenance: str
    source: str
    consistent: bool = True


@dataclass(frozen=True)
class BenchmarkCase:
    id: str
    system_text: str
    kind: Kind
    references: tuple[Reference, ...]
    default_x0: tuple[float, ...] | None = None
    notes: str = ""
    variables: tuple[str, ...] | None = None
    # GA column of the nonlinear table, kept verbatim but not scored
    published_ga: tuple[tuple[float, ...], ...] = field(default=())

    @property
    def system(self) -> EquationSystem:
        return parse_system(self.system_text, self.variables)

    @property
    def reference_solutions(self) -> list[tuple[float, ...]]:
        return [r.values for r in self.references if r.consistent]


X2 = ("x1", "x2")
X3 = ("x1", "x2", "x3")


def _p(values, source, consistent=True):
    return Reference(tuple(float(v) for v in values), PUBLISHED, source, consistent)


def _d(values, source):
    return Reference(tuple(float(v) for v in values), DERIVED, source)


_CASES = (
    BenchmarkCase(
        "linear-1",
        "x1 + 2x2 + 3x3 = 14\nx1 + x2 + x3 = 6\n3x1 + 2x2 + x3 = 10",
        Kind.LINEAR,
        (
            _p((1, 2, 3), "linear table row 1, actual"),
            _p((2, 0, 4), "linear table row 1, GA"),
            _p((0, 4, 2), "linear table row 1, GA"),
        ),
        notes="singular (rank 2): every (1,2,3) + t(1,-2,1) is a solution",
        variables=X3,
    ),
    BenchmarkCase(
        "linear-2",
        "2x1 + x2 - x3 = 8\n-3x1 - x2 + 2x3 = -11\n-2x1 + x2 + 2x3 = -3",
        Kind.LINEAR,
        (_p((2, 3, -1), "linear table row 2, actual"),),
        variables=X3,
    ),
    BenchmarkCase(
        "linear-3",
        "10x1 + x2 + x3 = 12\n2x1 + 10x2 + x3 = 13\n2x1 + 2x2 + 10x3 = 14",
        Kind.LINEAR,
        (_p((1, 1, 1), "linear table row 3, actual"),),
        variables=X3,
    ),
    BenchmarkCase(
        "linear-4",
        "x1 + 2x2 + 3x3 = 6\n2x1 + 4x2 + x3 = 7\n3x1 + 2x2 + 9x3 = 14",
        Kind.LINEAR,
        (_p((1, 1, 1), "linear table row 4, actual"),),
        variables=X3,
    ),
    BenchmarkCase(
        "linear-5",
        "2x1 + x2 + 3x3 = 13\nx1 + 5x2 + x3 = 14\n3x1 + x2 + 4x3 = 17",
        Kind.LINEAR,
        (
            _p((1, 2, 3), "linear table row 5, actual"),
            _p((1, 0.9998, 3.0012), "linear table row 5, Gaussian elimination", consistent=False),
        ),
        notes="the published Gaussian-elimination column (1, 0.9998, 3.0012) does not satisfy the system; "
              "the system is nonsingular with exact solution (1, 2, 3)",
        variables=X3,
    ),
    BenchmarkCase(
        "nonlinear-1",
        "x1^2 + x2^2 = 25\nx1 - x2 = 1",
        Kind.NONLINEAR,
        (
            _p((4., 3.), "nonlinear table row 1, Newton"),
            _p((4., 3.), "nonlinear table row 1, LM"),
            _d((-3, -4), "second root: 9 + 16 = 25, -3 - (-4) = 1"),
        ),
        default_x0=(5.0, 2.0),
        variables=X2,
        published_ga=((4.0184, 2.9993),),
    ),
    BenchmarkCase(
        "nonlinear-2",
        "exp(x1) + x2 = 10\nsin(x1) + cos(x2) = 1",
        Kind.NONLINEAR,
        (
            _p((2.1510, 1.4064), "nonlinear table row 2, Newton"),
            _p((2.1510, 1.4064), "nonlinear table row 2, LM"),
            _d((2.41822474903, -1.22591280253), "second root, polished from the GA column"),
        ),
        default_x0=(1.0, 1.0),
        variables=X2,
        published_ga=((2.1507, 1.4079), (2.4182, -1.2259)),
    ),
    BenchmarkCase(
        "nonlinear-3",
        "x1^3 - x2 = 4\nx2^5 + x1^4 = 2",
        Kind.NONLINEAR,
        (
            _p((1.4173, -1.1528), "nonlinear table row 3, Newton"),
            _p((1.4173, -1.1528), "nonlinear table row 3, LM"),
        ),
        default_x0=(1.0, -1.0),
        variables=X2,
        published_ga=((1.4168, -1.1526),),
    ),
    BenchmarkCase(
        "nonlinear-4",
        "exp(x1) - sin(x2) = 5\nx1^2 + x2^2 = 10\ncos(x1 + x3) = 0.5",
        Kind.NONLINEAR,
        (
            _p((1.69663362, 2.6686, -0.6494), "nonlinear table row 4, Newton"),
            _p((1.6966, 2.6686, -2.7438), "nonlinear table row 4, LM"),
        ),
        default_x0=(1.5, 2.5, -0.5),
        notes="x3 is only fixed modulo the cosine branches; Newton and LM report different branches",
        variables=X3,
        published_ga=((1.7037, 2.6685, -0.6524),),
    ),
    BenchmarkCase(
        "nonlinear-5",
        "x1^2 + x2^2 = 20\n1/x1 + sqrt(x2) = 2\nsin(x1) - exp(x3) = 0",
        Kind.NONLINEAR,
        (
            _p((3.1761, 3.1477, -1.1357), "nonlinear table row 5, Newton", consistent=False),
            _p((3.1758, 3.1481, -27.6827), "nonlinear table row 5, LM", consistent=False),
        ),
        default_x0=(3.0, 3.0, -1.0),
        notes="no real root: the first two equations force x1 ~ 3.398 where sin(x1) < 0 = e^x3 is "
              "impossible; none of the published values satisfy the system",
        variables=X3,
        published_ga=((3.1771, 3.1448, -2.8928),),
    ),
    BenchmarkCase(
        "nonlinear-6",
        "ln(x3 + x2) = 1\nexp(x1) + cos(x2) = 5\nx1^3 - x2 = 3",
        Kind.NONLINEAR,
        (
            _p((1.7595, 2.4657, 0.2526), "nonlinear table row 6, Newton", consistent=False),
            _p((1.3960, -0.2797, 2.9981), "nonlinear table row 6, LM"),
        ),
        default_x0=(1.5, 0.5, 2.5),
        notes="the published Newton value is a local minimiser of ||F||^2 (residual ~0.035), not a root",
        variables=X3,
        published_ga=((1.39596, -0.27967, 2.99796),),
    ),
    BenchmarkCase(
        "benchmark-linear",
        "3x1 + 2x2 = 5\n4x1 - x2 = 1",
        Kind.LINEAR,
        (_d((7 / 11, 17 / 11), "exact elimination: x1 = 7/11, x2 = 17/11"),),
        default_x0=(0.0, 0.0),
        notes="convergence benchmark (linear)",
        variables=X2,
    ),
    BenchmarkCase(
        "benchmark-nonlinear",
        "x1^2 + x2^2 = 25\nx1 - x2 = 1",
        Kind.NONLINEAR,
        (
            _p((4., 3.), "nonlinear table row 1, Newton"),
            _d((-3, -4), "second root by substitution"),
        ),
        default_x0=(5.0, 2.0),
        notes="convergence benchmark (nonlinear); GA residual norm reported as 0.000003446",
        variables=X2,
        published_ga=((4.0184, 2.9993),),
    ),
)

SUITES = {
    "linear": tuple(c.id for c in _CASES if c.id.startswith("linear-")),
    "nonlinear": tuple(c.id for c in _CASES if c.id.startswith("nonlinear-")),
    "all": tuple(c.id for c in _CASES),
}


def registry() -> list[BenchmarkCase]:
    return list(_CASES)


def get_case(case_id: str) -> BenchmarkCase:
    for c in _CASES:
        if c.id == case_id:
            return c
    raise KeyError(f"unknown benchmark case {case_id!r}")


def suite(name: str) -> list[BenchmarkCase]:
    try:
        ids = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return [get_case(i) for i in ids]
