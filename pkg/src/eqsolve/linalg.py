"""Dense linear algebra: pivoted Gaussian elimination and the few matrix
products the nonlinear solvers need.

Matrices are 2-D ``float64`` numpy arrays flagged read-only once built.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, Inconsistent, NonSquare, NotLinear, SingularMatrix
from .expr import EquationSystem

# pivot is zero when |pivot| <= PIVOT_RTOL * (max |entry| of its original row)
PIVOT_RTOL = 1e-12
# a leftover rhs entry below this (relative to the rhs scale) counts as consistent
CONSISTENCY_RTOL = 1e-10
LINEARITY_RTOL = 1e-9
N_PROBES = 8
PROBE_SEED = 20240101


def as_matrix(data) -> np.ndarray:
    a = np.array(data, dtype=float)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    a.flags.writeable = False
    return a


def as_vector(data) -> np.ndarray:
    v = np.array(data, dtype=float).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    v.flags.writeable = False
    return v


@dataclass(frozen=True)
class LinearSystem:
    """``a @ x = b``."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "a", as_matrix(self.a))
        object.__setattr__(self, "b", as_vector(self.b))
        if self.b.shape[0] != self.a.shape[0]:
            raise DimensionMismatch(f"b has length {self.b.shape[0]}, A has {self.a.shape[0]} rows")

    def augmented(self) -> np.ndarray:
        return np.column_stack([self.a, self.b])


@dataclass(frozen=True)
class RankDeficientSolution:
    """One particular solution of a consistent singular system (free variables at 0)."""

    solution: np.ndarray
    rank: int
    free_variables: tuple[int, ...] = ()


# ------------------------------------------------------------- matrix ops

def transpose(a) -> np.ndarray:
    return as_matrix(np.asarray(a).T)


def mat_mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return as_matrix(a @ b)


def mat_vec(a, v) -> np.ndarray:
    a, v = as_matrix(a), as_vector(v)
    if a.shape[1] != v.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by vector of length {v.shape[0]}")
    return as_vector(a @ v)


def add_scaled_identity(a, lam: float) -> np.ndarray:
    """``a + lam * I``."""
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"add_scaled_identity needs a square matrix, got {a.shape}")
    return as_matrix(a + lam * np.eye(a.shape[0]))


# ------------------------------------------------------------ elimination

def _row_echelon(a: np.ndarray, b: np.ndarray):
    """Forward elimination with partial pivoting on ``[a | b]``.

    Returns the reduced augmented matrix, the pivot column of each pivot
    row, and the original-row scales after the same permutations.
    """
    m, n = a.shape
    aug = np.column_stack([a, b]).astype(float)
    scale = np.max(np.abs(a), axis=1)
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        p = row + int(np.argmax(np.abs(aug[row:, col])))
        if abs(aug[p, col]) <= PIVOT_RTOL * scale[p] or scale[p] == 0.0:
            continue
        if p != row:
            aug[[row, p]] = aug[[p, row]]
            scale[[row, p]] = scale[[p, row]]
        for r in range(row + 1, m):
            factor = aug[r, col] / aug[row, col]
            if factor != 0.0:
                aug[r, col:] -= factor * aug[row, col:]
            aug[r, col] = 0.0
        pivots.append(col)
        row += 1
    # entries that fell under the pivot threshold are structural zeros
    for r in range(row, m):
        small = np.abs(aug[r, :n]) <= PIVOT_RTOL * max(scale[r], 1e-300)
        aug[r, :n][small] = 0.0
    return aug, pivots


def _back_substitute(aug: np.ndarray, pivots: list[int], n: int) -> np.ndarray:
    x = np.zeros(n)
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        x[c] = (aug[r, n] - aug[r, c + 1:n] @ x[c + 1:]) / aug[r, c]
    return x


def gaussian_solve(ls: LinearSystem):
    """Solve a square system by Gaussian elimination and back substitution.

    Returns the solution vector, or a :class:`RankDeficientSolution` when the
    matrix is singular but the system is consistent.
    """
    m, n = ls.a.shape
    if m != n:
        raise NonSquare(m, n)
    aug, pivots = _row_echelon(ls.a, ls.b)
    rank = len(pivots)
    rhs_scale = 1.0 + float(np.max(np.abs(ls.b)))
    leftover = np.abs(aug[rank:, n])
    if leftover.size and leftover.max() > CONSISTENCY_RTOL * rhs_scale:
        raise Inconsistent(rank, rank + 1)
    x = _back_substitute(aug, pivots, n)
    if rank == n:
        return as_vector(x)
    free = tuple(c for c in range(n) if c not in pivots)
    return RankDeficientSolution(as_vector(x), rank, free)


def lin_solve_general(a, b) -> np.ndarray:
    """Solve ``a x = b`` for square full-rank ``a`` without forming an inverse."""
    a, b = as_matrix(a), as_vector(b)
    m, n = a.shape
    if m != n:
        raise NonSquare(m, n)
    if b.shape[0] != m:
        raise DimensionMismatch(f"b has length {b.shape[0]}, expected {m}")
    aug, pivots = _row_echelon(a, b)
    if len(pivots) < n:
        raise SingularMatrix(f"matrix is singular (rank {len(pivots)} < {n})")
    return as_vector(_back_substitute(aug, pivots, n))


# ----------------------------------------------------- linear extraction

def extract_linear(system: EquationSystem, probes: int = N_PROBES, seed: int = PROBE_SEED) -> LinearSystem:
    """Recover ``A`` and ``b`` from residuals assumed affine, then verify.

    ``b_i = -F_i(0)`` and ``A_ij = F_i(e_j) - F_i(0)``; the affine model is
    checked against direct evaluation at ``probes`` seeded random points.
    Raises :class:`NotLinear` on the first mismatch.
    """
    n = system.n
    f0 = np.array(system.residual_vector([0.0] * n))
    cols = []
    for j in range(n):
        e = [0.0] * n
        e[j] = 1.0
        cols.append(np.array(system.residual_vector(e)) - f0)
    a = np.column_stack(cols)
    b = -f0
    rng = np.random.default_rng(seed)
    for _ in range(probes):
        x = rng.uniform(-10.0, 10.0, size=n)
        direct = np.array(system.residual_vector(x))
        model = a @ x - b
        bad = np.abs(direct - model) > LINEARITY_RTOL * (1.0 + np.abs(direct))
        if bad.any():
            raise NotLinear(int(np.argmax(bad)), x)
    return LinearSystem(a, b)


def is_linear(system: EquationSystem) -> bool:
    try:
        extract_linear(system)
    except (NotLinear, ArithmeticError):
        return False
    return True
