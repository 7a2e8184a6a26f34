from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eqsolve import GaConfig, InvalidConfig, ga_solve, parse_system
from eqsolve.ga import (
    PENALTY,
    crossover_one_point,
    distinct_solutions,
    fitness,
    init_population,
    mutate,
    tournament_select,
)

LINEAR_BENCH = parse_system("3x1 + 2x2 = 5\n4x1 - x2 = 1")
ROW2 = parse_system("2x1 + x2 - x3 = 8\n-3x1 - x2 + 2x3 = -11\n-2x1 + x2 + 2x3 = -3")
SMALL = GaConfig(population_size=30, max_generations=25)


def rng(seed=0):
    return np.random.default_rng(seed)


def test_init_population():
    pop = init_population(GaConfig(), 2, rng())
    assert pop.shape == (100, 2)
    assert pop.min() >= -10 and pop.max() <= 10
    origin = init_population(GaConfig(init_low=0, init_high=0), 3, rng())
    assert not origin.any()
    np.testing.assert_array_equal(init_population(GaConfig(), 2, rng(7)), init_population(GaConfig(), 2, rng(7)))


def test_fitness_examples():
    assert fitness(ROW2, [2, 3, -1]) == 0.0
    assert fitness(LINEAR_BENCH, [0, 0]) == 6.0
    s = parse_system("ln(x1) = 0\nx2 = 0")
    assert fitness(s, [-1.0, 0.0]) == PENALTY
    # any in-domain chromosome beats the penalty
    assert fitness(s, [1e-300, 1e9]) < PENALTY


def _population(fits):
    return np.arange(len(fits), dtype=float).reshape(-1, 1), np.array(fits, dtype=float)


def test_tournament_picks_best_when_present():
    pop, fit = _population([4, 1, 3, 2])
    cfg = GaConfig(population_size=4, tournament_size=4, elite_count=0)
    g = rng()
    for _ in range(50):
        assert tournament_select(pop, fit, cfg, g)[0] == 1.0


def test_tournament_frequency_matches_enumeration():
    pop, fit = _population([1, 2, 3, 4])
    cfg = GaConfig(population_size=4, tournament_size=2, elite_count=0)
    g = rng(123)
    wins = sum(tournament_select(pop, fit, cfg, g)[0] == 0.0 for _ in range(10_000))
    assert abs(wins / 10_000 - 7 / 16) <= 0.02


def test_crossover_examples():
    cfg = GaConfig(crossover_rate=1.0)
    a, b = crossover_one_point([1, 2, 3, 4], [5, 6, 7, 8], cfg, rng(), cut=2)
    assert a.tolist() == [1, 2, 7, 8] and b.tolist() == [5, 6, 3, 4]
    p = np.array([1.5, -2.0, 3.0])
    a, b = crossover_one_point(p, p, cfg, rng())
    assert a.tolist() == p.tolist() and b.tolist() == p.tolist()
    g = rng(5)
    for _ in range(200):
        a, b = crossover_one_point([1, 2, 3], [4, 5, 6], GaConfig(crossover_rate=0.0), g)
        assert a.tolist() == [1, 2, 3] and b.tolist() == [4, 5, 6]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-10, 10, allow_nan=False), min_size=2, max_size=6), st.integers(0, 2**32 - 1))
def test_crossover_conserves_genes(genes, seed):
    p1 = np.array(genes)
    p2 = p1[::-1] + 1.0
    c1, c2 = crossover_one_point(p1, p2, GaConfig(crossover_rate=1.0), rng(seed))
    # each position holds the two parental genes, possibly swapped
    for i in range(len(genes)):
        assert sorted([c1[i], c2[i]]) == sorted([p1[i], p2[i]])


def test_mutation_examples():
    c = np.array([1.0, -2.0, 3.0])
    assert mutate(c, GaConfig(mutation_rate=0.0), rng()).tolist() == c.tolist()
    g = rng(3)
    for _ in range(100):
        out = mutate(c, GaConfig(mutation_rate=1.0, mutation_delta=0.5), g)
        assert np.all(np.abs(out - c) < 0.5) and np.all(out != c)
    top = np.array([10.0, 10.0])
    out = mutate(top, GaConfig(mutation_rate=1.0, mutation_delta=0.5), rng(1), bounds=(top - 1, top))
    assert np.all(out <= 10.0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.1, 5.0))
def test_bounds_closure(seed, delta):
    cfg = GaConfig(population_size=20, max_generations=10, mutation_rate=0.5, mutation_delta=delta,
                   init_low=-1.0, init_high=2.0, seed=seed)
    res = ga_solve(LINEAR_BENCH, cfg)
    assert all(-1.0 <= v <= 2.0 for s in res.report.solutions for v in s)
    assert -1.0 <= min(res.best) and max(res.best) <= 2.0


@pytest.mark.parametrize("seed", range(5))
def test_elitism_keeps_best_fitness_monotone(seed):
    res = ga_solve(ROW2, replace(SMALL, seed=seed))
    values = [v for _, v in res.report.trace]
    assert all(b <= a for a, b in zip(values, values[1:]))


def test_elitism_with_single_child():
    cfg = GaConfig(population_size=3, elite_count=2, tournament_size=2, max_generations=40, seed=4)
    values = [v for _, v in ga_solve(LINEAR_BENCH, cfg).report.trace]
    assert all(b <= a for a, b in zip(values, values[1:]))


def test_seeded_runs_are_identical():
    a = ga_solve(ROW2, replace(SMALL, seed=11))
    b = ga_solve(ROW2, replace(SMALL, seed=11))
    assert a.report.trace == b.report.trace
    assert a.report.solutions == b.report.solutions and a.best == b.best
    c = ga_solve(ROW2, replace(SMALL, seed=12))
    assert c.report.trace != a.report.trace


def test_trace_and_stop_reasons():
    res = ga_solve(LINEAR_BENCH, replace(SMALL, max_generations=7))
    assert res.report.trace[0][0] == 0
    assert len(res.report.trace) == res.generations_run + 1
    assert res.report.stop_reason in {"threshold", "max_generations", "stalled"}
    easy = ga_solve(parse_system("x1 = 0"), GaConfig(init_low=0, init_high=0))
    assert easy.report.converged and easy.generations_run == 0


def test_distinct_solutions_examples():
    cfg = GaConfig()
    roots = [[1, 2, 3], [2, 0, 4], [0, 4, 2]]
    kept = distinct_solutions(roots, [0.0, 0.0, 0.0], cfg)
    assert [k for k, _ in kept] == roots
    assert len(distinct_solutions([[1, 2, 3], [1, 2, 3]], [0.0, 0.0], cfg)) == 1
    assert distinct_solutions([[0.0], [1.0]], [1.0, 2.0], cfg) == []


def test_config_validation():
    with pytest.raises(InvalidConfig):
        GaConfig(population_size=1)
    with pytest.raises(InvalidConfig):
        GaConfig(crossover_rate=1.5)
    with pytest.raises(InvalidConfig):
        GaConfig(tournament_size=1)
    with pytest.raises(InvalidConfig):
        GaConfig(init_low=1, init_high=0)
    assert GaConfig().population_size == 100
