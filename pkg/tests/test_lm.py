import numpy as np
import pytest

from eqsolve import InvalidConfig, LmConfig, NewtonConfig, lm_objective, lm_solve, newton_solve, parse_system
from eqsolve.bench import get_case
from eqsolve.lm import damped_step

CIRCLE = parse_system("x1^2 + x2^2 = 25\nx1 - x2 = 1")


def test_objective_examples():
    assert lm_objective(CIRCLE, [4, 3]) == 0.0
    assert lm_objective(parse_system("3x1 + 2x2 = 5\n4x1 - x2 = 1"), [0, 0]) == 26.0


def test_exp_sin_row():
    rep = lm_solve(get_case("nonlinear-2").system, [1, 1])
    assert rep.converged
    np.testing.assert_allclose(rep.solution, [2.1510, 1.4064], atol=5e-4)


def test_identity_residuals():
    rep = lm_solve(parse_system("x1 = 0\nx2 = 0"), [3, -7])
    np.testing.assert_allclose(rep.solution, [0, 0], atol=1e-8)


def test_circle():
    rep = lm_solve(CIRCLE, [5, 2])
    np.testing.assert_allclose(rep.solution, [4, 3], atol=1e-8)


def test_cosine_branch_root():
    s = get_case("nonlinear-4").system
    rep = lm_solve(s, [1.5, 2.5, -2.5])
    assert rep.residual_norms[0] <= 1e-6
    assert rep.solution[2] == pytest.approx(-2.7438, abs=5e-4)


@pytest.mark.parametrize("case_id", ["nonlinear-1", "nonlinear-2", "nonlinear-3", "nonlinear-4", "nonlinear-6"])
def test_committed_start_points_reach_roots(case_id):
    case = get_case(case_id)
    rep = lm_solve(case.system, case.default_x0)
    assert rep.residual_norms[0] <= 1e-6


@pytest.mark.parametrize("case_id", ["nonlinear-1", "nonlinear-2", "nonlinear-5", "nonlinear-6"])
def test_accepted_trace_strictly_decreases(case_id):
    case = get_case(case_id)
    norms = [v for _, v in lm_solve(case.system, case.default_x0).trace]
    assert all(b < a for a, b in zip(norms, norms[1:]))


def test_lambda_max_stop_on_rootless_system():
    # x1^2 + 1 has no real root; at its minimiser every trial step is rejected
    cfg = LmConfig(lambda_max=1e6, max_iterations=10_000)
    rep = lm_solve(parse_system("x1^2 + 1 = 0"), [0.0], cfg)
    assert rep.stop_reason == "lambda_max" and not rep.converged
    assert rep.residual_norms[0] == pytest.approx(1.0, abs=1e-6)


def test_small_damping_tracks_newton():
    cfg = LmConfig(lambda_init=1e-8)
    x = np.array([5.0, 2.0])
    y = x.copy()
    for _ in range(3):
        x = np.array(lm_solve(CIRCLE, x, LmConfig(lambda_init=1e-8, max_iterations=1)).solution)
        y = np.array(newton_solve(CIRCLE, y, NewtonConfig(max_iterations=1)).solution)
        np.testing.assert_allclose(x, y, atol=1e-6)
    assert lm_solve(CIRCLE, [5, 2], cfg).converged


def test_damped_step_is_descent_direction():
    j = np.array([[2.0, 1.0], [0.5, 3.0]])
    r = np.array([1.0, -2.0])
    for lam in (1e-3, 1.0, 1e3):
        dx = damped_step(j, r, lam)
        assert (j.T @ r) @ dx < 0
    assert np.linalg.norm(damped_step(j, r, 1e6)) < np.linalg.norm(damped_step(j, r, 1e-3))


def test_domain_error_at_start():
    rep = lm_solve(parse_system("ln(x1) = 1"), [-2.0])
    assert rep.stop_reason == "domain_error" and not rep.converged


def test_trial_outside_domain_is_rejected_not_fatal():
    rep = lm_solve(parse_system("sqrt(x1) = 0.1"), [4.0])
    assert rep.converged
    assert rep.solution[0] == pytest.approx(0.01, abs=1e-8)


def test_config_validation():
    with pytest.raises(InvalidConfig):
        LmConfig(lambda_up=1.0)
    with pytest.raises(InvalidConfig):
        LmConfig(lambda_down=1.5)
    with pytest.raises(InvalidConfig):
        LmConfig(step_tolerance=0)
