import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from eqsolve import (
    DomainError,
    ParseError,
    UnbalancedParentheses,
    UnknownFunction,
    evaluate,
    parse_system,
    residual_norm,
    residual_vector,
)
from eqsolve.expr import (
    Binary,
    Constant,
    Unary,
    Variable,
    parse_expression,
    system_to_text,
    to_text,
)

CIRCLE = "x1^2 + x2^2 = 25\nx1 - x2 = 1"
LINEAR_BENCH = "3x1 + 2x2 = 5\n4x1 - x2 = 1"


def test_parse_circle_system():
    s = parse_system(CIRCLE)
    assert s.variables == ("x1", "x2")
    assert s.residual_vector([4, 3]) == [0.0, 0.0]
    assert s.residual_vector([0, 0]) == [-25.0, -1.0]


def test_identity_equation_is_zero_everywhere():
    s = parse_system("x1 = x1")
    for x in (-3.5, 0.0, 1e6):
        assert s.residual_vector([x]) == [0.0]


def test_unbalanced_parentheses():
    with pytest.raises(UnbalancedParentheses):
        parse_system("sin(x1 + cos(x2) = 1")


def test_unknown_function_and_position():
    with pytest.raises(UnknownFunction):
        parse_system("foo(x1) = 1")
    with pytest.raises(ParseError) as info:
        parse_system("x1 = 1\nx1 + * 2 = 3")
    assert info.value.line == 2


def test_precedence_rules():
    # ^ is right associative and binds tighter than unary minus
    assert evaluate(parse_expression("2^3^2"), {}) == 512.0
    assert evaluate(parse_expression("-2^2"), {}) == -4.0
    assert evaluate(parse_expression("2*-3"), {}) == -6.0
    assert evaluate(parse_expression("3x1"), {"x1": 2.0}) == 6.0


def test_comments_and_unicode_minus():
    s = parse_system("# header\n4x1 − x2 = 1  # trailing\n\nx1 = 2")
    assert s.m == 2
    assert s.residual_vector([2, 7]) == [0.0, 0.0]


def test_evaluate_examples():
    s = parse_system(CIRCLE)
    assert evaluate(s.residuals[0], [4, 3], s.variables) == 0.0
    assert evaluate(s.residuals[1], {"x1": 0, "x2": 0}) == -1.0
    with pytest.raises(DomainError):
        evaluate(parse_expression("ln(x3 + x2)"), {"x2": -1.0, "x3": 0.5})


def test_domain_error_is_tagged_with_equation():
    s = parse_system("x1 = 1\nsqrt(x1) = 2", ["x1"])
    with pytest.raises(DomainError) as info:
        s.residual_vector([-1.0])
    assert info.value.equation == 1


def test_residual_vector_linear_benchmark():
    s = parse_system(LINEAR_BENCH)
    assert residual_vector(s, [0, 0]) == [-5.0, -1.0]
    assert residual_norm(s, [0, 0]) == pytest.approx(math.sqrt(26), abs=1e-12)


def test_residual_norm_exact_root():
    s = parse_system("2x1 + x2 - x3 = 8\n-3x1 - x2 + 2x3 = -11\n-2x1 + x2 + 2x3 = -3")
    assert residual_norm(s, [2, 3, -1]) == 0.0


def test_table_values_against_precise_oracle():
    s = parse_system("x1^3 - x2 = 4\nx2^5 + x1^4 = 2")
    x = (1.4173, -1.1528)
    got = s.residual_vector(x)
    mpmath.mp.dps = 30
    a, b = mpmath.mpf("1.4173"), mpmath.mpf("-1.1528")
    oracle = [a**3 - b - 4, b**5 + a**4 - 2]
    for g, o in zip(got, oracle):
        assert abs(g) < 3e-3
        assert g == pytest.approx(float(o), abs=1e-12)


def test_dimension_mismatch():
    s = parse_system(CIRCLE)
    with pytest.raises(Exception):
        s.residual_vector([1.0])


# ------------------------------------------------------------ properties

NAMES = ("x1", "x2", "x3")
_leaf = st.one_of(
    st.sampled_from(NAMES).map(Variable),
    st.floats(-50, 50, allow_nan=False).map(lambda v: Constant(round(v, 3))),
)


def _tree(children):
    # no partial functions here, so evaluation never leaves the domain
    return st.one_of(
        st.tuples(st.sampled_from(["add", "sub", "mul"]), children, children).map(lambda t: Binary(*t)),
        st.tuples(st.sampled_from(["neg", "sin", "cos"]), children).map(lambda t: Unary(*t)),
    )


expressions = st.recursive(_leaf, _tree, max_leaves=12)
points = st.tuples(*(st.floats(-3, 3, allow_nan=False) for _ in NAMES))


@settings(max_examples=200, deadline=None)
@given(expressions, points)
def test_print_parse_round_trip(e, x):
    env = dict(zip(NAMES, x))
    again = parse_expression(to_text(e))
    try:
        want = evaluate(e, env)
    except DomainError:
        # overflow on huge products; both sides must agree on it
        with pytest.raises(DomainError):
            evaluate(again, env)
        return
    got = evaluate(again, env)
    assert got == pytest.approx(want, rel=1e-12, abs=1e-12)
    # negative literals come back as negations, so the text settles after one pass
    assert to_text(parse_expression(to_text(again))) == to_text(again)


@settings(max_examples=100, deadline=None)
@given(expressions, points)
def test_evaluation_is_deterministic(e, x):
    env = dict(zip(NAMES, x))
    try:
        first = evaluate(e, env)
    except DomainError:
        return
    assert evaluate(e, env) == first
    assert math.isfinite(first)


def test_system_text_round_trip():
    s = parse_system("ln(x3 + x2) = 1\nexp(x1) + cos(x2) = 5\nx1^3 - x2 = 3", NAMES)
    again = parse_system(system_to_text(s), NAMES)
    x = [1.3, 0.2, 2.9]
    assert again.residual_vector(x) == pytest.approx(s.residual_vector(x), abs=1e-14)
