from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqsolve import (
    Inconsistent,
    LinearSystem,
    NonSquare,
    NotLinear,
    RankDeficientSolution,
    SingularMatrix,
    extract_linear,
    gaussian_solve,
    lin_solve_general,
    parse_system,
)
from eqsolve.linalg import add_scaled_identity, is_linear, mat_mul, mat_vec, transpose

LINEAR_BENCH = "3x1 + 2x2 = 5\n4x1 - x2 = 1"


def test_extract_linear_benchmark():
    ls = extract_linear(parse_system(LINEAR_BENCH))
    np.testing.assert_allclose(ls.a, [[3, 2], [4, -1]], atol=1e-12)
    np.testing.assert_allclose(ls.b, [5, 1], atol=1e-12)


def test_extract_single_equation():
    ls = extract_linear(parse_system("x1 = 0"))
    assert ls.a.tolist() == [[1.0]] and ls.b.tolist() == [0.0]


def test_extract_rejects_quadratic():
    with pytest.raises(NotLinear) as info:
        extract_linear(parse_system("x1^2 + x2^2 = 25\nx1 - x2 = 1"))
    assert info.value.equation == 0
    assert not is_linear(parse_system("sin(x1) = 0"))


def test_gaussian_table_row_2():
    ls = extract_linear(parse_system("2x1 + x2 - x3 = 8\n-3x1 - x2 + 2x3 = -11\n-2x1 + x2 + 2x3 = -3"))
    np.testing.assert_allclose(gaussian_solve(ls), [2, 3, -1], atol=1e-12)


def test_gaussian_identity():
    x = gaussian_solve(LinearSystem(np.eye(3), [4, 5, 6]))
    assert x.tolist() == [4, 5, 6]


def test_gaussian_benchmark_matches_exact_fractions():
    # Cramer's rule in exact arithmetic as the oracle
    a = [[Fraction(3), Fraction(2)], [Fraction(4), Fraction(-1)]]
    det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    x1 = (5 * a[1][1] - a[0][1] * 1) / det
    x2 = (a[0][0] * 1 - 5 * a[1][0]) / det
    assert (x1, x2) == (Fraction(7, 11), Fraction(17, 11))
    x = gaussian_solve(extract_linear(parse_system(LINEAR_BENCH)))
    np.testing.assert_allclose(x, [float(x1), float(x2)], atol=1e-12)


def test_gaussian_singular_consistent():
    s = parse_system("x1 + 2x2 + 3x3 = 14\nx1 + x2 + x3 = 6\n3x1 + 2x2 + x3 = 10")
    out = gaussian_solve(extract_linear(s))
    assert isinstance(out, RankDeficientSolution)
    assert out.rank == 2 and len(out.free_variables) == 1
    assert s.residual_norm(out.solution) <= 1e-10


def test_gaussian_singular_inconsistent():
    with pytest.raises(Inconsistent):
        gaussian_solve(LinearSystem([[1, 1], [1, 1]], [1, 2]))


def test_gaussian_nonsquare():
    with pytest.raises(NonSquare):
        gaussian_solve(LinearSystem([[1, 2, 3], [4, 5, 6]], [1, 2]))


def test_lin_solve_general_examples():
    np.testing.assert_allclose(lin_solve_general([[2, 0], [0, 4]], [2, 8]), [1, 2])
    np.testing.assert_allclose(lin_solve_general([[3, 2], [4, -1]], [5, 1]), [7 / 11, 17 / 11], atol=1e-14)
    with pytest.raises(SingularMatrix):
        lin_solve_general([[1, 1], [1, 1]], [1, 2])


def test_mat_ops():
    assert transpose([[1, 2], [3, 4]]).tolist() == [[1, 3], [2, 4]]
    assert add_scaled_identity([[1, 0], [0, 1]], 2).tolist() == [[3, 0], [0, 3]]
    j = np.array([[1, 2], [3, 4]])
    assert mat_mul(transpose(j), j).tolist() == [[10, 14], [14, 20]]
    assert mat_vec(j, [1, 1]).tolist() == [3, 7]


def test_matrices_are_read_only():
    ls = LinearSystem([[1.0]], [2.0])
    with pytest.raises(ValueError):
        ls.a[0, 0] = 5.0


# ------------------------------------------------------------ properties

@st.composite
def well_conditioned(draw):
    n = draw(st.integers(1, 5))
    entries = st.floats(-5, 5, allow_nan=False)
    a = np.array(draw(st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)))
    a = a + np.eye(n) * (np.abs(a).sum(axis=1) + 1.0)  # strictly diagonally dominant
    x = np.array(draw(st.lists(entries, min_size=n, max_size=n)))
    return a, x


@settings(max_examples=150, deadline=None)
@given(well_conditioned())
def test_solution_satisfies_system(case):
    a, x = case
    got = gaussian_solve(LinearSystem(a, a @ x))
    np.testing.assert_allclose(got, x, atol=1e-9)


@settings(max_examples=80, deadline=None)
@given(well_conditioned(), st.randoms(use_true_random=False))
def test_row_permutation_invariance(case, rnd):
    a, x = case
    b = a @ x
    perm = list(range(len(b)))
    rnd.shuffle(perm)
    first = gaussian_solve(LinearSystem(a, b))
    second = gaussian_solve(LinearSystem(a[perm], b[perm]))
    np.testing.assert_allclose(first, second, atol=1e-10)
    np.testing.assert_allclose(lin_solve_general(a, b), first, atol=1e-10)
