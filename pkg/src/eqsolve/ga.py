"""Real-coded genetic algorithm that drives the summed absolute residual to zero."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, InvalidConfig
from .expr import EquationSystem
from .report import Method, SolveReport

PENALTY = 1e12
STALL_EPS = 1e-12

Bound = Union[float, Sequence[float]]


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 100
    crossover_rate: float = 0.8
    mutation_rate: float = 0.01
    max_generations: int = 100
    tournament_size: int = 3
    elite_count: int = 2
    init_low: Bound = -10.0
    init_high: Bound = 10.0
    mutation_delta: float = 0.5
    fitness_threshold: float = 1e-6
    stall_generations: int = 30
    dedup_radius: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.population_size < 2:
            raise InvalidConfig("population_size must be >= 2")
        for name in ("crossover_rate", "mutation_rate"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise InvalidConfig(f"{name} must lie in [0, 1]")
        if not 2 <= self.tournament_size <= self.population_size:
            raise InvalidConfig("tournament_size must lie in [2, population_size]")
        if not 0 <= self.elite_count < self.population_size:
            raise InvalidConfig("elite_count must lie in [0, population_size)")
        if self.max_generations < 0:
            raise InvalidConfig("max_generations must be >= 0")
        if not self.mutation_delta > 0:
            raise InvalidConfig("mutation_delta must be > 0")
        if not self.fitness_threshold > 0:
            raise InvalidConfig("fitness_threshold must be > 0")
        if self.stall_generations < 1:
            raise InvalidConfig("stall_generations must be >= 1")
        if self.dedup_radius < 0:
            raise InvalidConfig("dedup_radius must be >= 0")
        if self.seed < 0:
            raise InvalidConfig("seed must be a non-negative integer")
        low, high = np.atleast_1d(self.init_low), np.atleast_1d(self.init_high)
        if low.shape != high.shape and low.size != 1 and high.size != 1:
            raise InvalidConfig("init_low and init_high have different lengths")
        if np.any(low > high):
            raise InvalidConfig("init_low must not exceed init_high")
        if not (np.all(np.isfinite(low)) and np.all(np.isfinite(high))):
            raise InvalidConfig("bounds must be finite")

    def bounds(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Per-variable ``(low, high)`` arrays of length ``n``."""
        low = np.broadcast_to(np.asarray(self.init_low, dtype=float), (n,)).copy()
        high = np.broadcast_to(np.asarray(self.init_high, dtype=float), (n,)).copy()
        return low, high


@dataclass
class GaResult:
    report: SolveReport
    distinct_solutions: list[tuple[list[float], float]]
    generations_run: int
    seed_used: int
    # best chromosome's sum of squared residuals per generation
    squared_trace: list[tuple[int, float]] = field(default_factory=list)
    best: list[float] | None = None
    best_fitness: float = math.inf


# ----------------------------------------------------------------- fitness

def fitness(system: EquationSystem, genes) -> float:
    """Sum of absolute residuals; ``PENALTY`` where any residual is undefined."""
    try:
        r = system.residual_vector(genes)
    except DomainError:
        return PENALTY
    return math.fsum(abs(v) for v in r)


def squared_objective(system: EquationSystem, genes) -> float:
    try:
        r = system.residual_vector(genes)
    except DomainError:
        return PENALTY
    return math.fsum(v * v for v in r)


def _population_fitness(system: EquationSystem, pop: np.ndarray) -> np.ndarray:
    funcs = system._compiled
    out = np.empty(len(pop))
    for k, row in enumerate(pop.tolist()):
        total = 0.0
        try:
            for f in funcs:
                total += abs(f(row))
        except DomainError:
            total = PENALTY
        out[k] = total
    return out


# --------------------------------------------------------------- operators

def init_population(cfg: GaConfig, n: int, rng: np.random.Generator) -> np.ndarray:
    """``population_size x n`` genes drawn uniformly inside the bounds."""
    if n < 1:
        raise InvalidConfig("a chromosome needs at least one gene")
    low, high = cfg.bounds(n)
    return rng.uniform(low, high, size=(cfg.population_size, n))


def _tournament_index(fitnesses: np.ndarray, size: int, rng: np.random.Generator) -> int:
    # entrants are drawn with replacement; a population-sized tournament is exhaustive
    if size >= len(fitnesses):
        entrants = np.arange(len(fitnesses))
    else:
        entrants = rng.integers(0, len(fitnesses), size=size)
    # lowest fitness wins, ties go to the lowest index
    return int(min(entrants, key=lambda i: (fitnesses[i], i)))


def tournament_select(pop: np.ndarray, fitnesses, cfg: GaConfig, rng: np.random.Generator) -> np.ndarray:
    return pop[_tournament_index(np.asarray(fitnesses), cfg.tournament_size, rng)].copy()


def crossover_one_point(p1, p2, cfg: GaConfig, rng: np.random.Generator, cut: int | None = None):
    """Swap gene tails after a cut point drawn from ``1..n-1``.

    Happens with probability ``crossover_rate``; otherwise (and always for a
    single gene) the children are copies of the parents.
    """
    p1, p2 = np.asarray(p1, dtype=float), np.asarray(p2, dtype=float)
    if p1.shape != p2.shape:
        raise ValueError("parents have different gene counts")
    n = p1.shape[0]
    if n < 2 or not rng.random() < cfg.crossover_rate:
        return p1.copy(), p2.copy()
    k = int(rng.integers(1, n)) if cut is None else cut
    return np.concatenate([p1[:k], p2[k:]]), np.concatenate([p2[:k], p1[k:]])


def mutate(c, cfg: GaConfig, rng: np.random.Generator, bounds=None) -> np.ndarray:
    """Add ``U(-delta, delta)`` to each gene with probability ``mutation_rate``, then clamp."""
    c = np.array(c, dtype=float)
    low, high = cfg.bounds(c.shape[0]) if bounds is None else bounds
    hit = rng.random(c.shape[0]) < cfg.mutation_rate
    if hit.any():
        c[hit] += rng.uniform(-cfg.mutation_delta, cfg.mutation_delta, size=int(hit.sum()))
    return np.clip(c, low, high)


def distinct_solutions(population, fitnesses, cfg: GaConfig) -> list[tuple[list[float], float]]:
    """Near-roots (fitness below ``100 * fitness_threshold``), greedily deduplicated by distance."""
    pop = np.asarray(population, dtype=float)
    fit = np.asarray(fitnesses, dtype=float)
    cutoff = 100.0 * cfg.fitness_threshold
    kept: list[tuple[np.ndarray, float]] = []
    for i in np.argsort(fit, kind="stable"):
        if not fit[i] < cutoff:
            break
        if all(np.linalg.norm(pop[i] - k) >= cfg.dedup_radius for k, _ in kept):
            kept.append((pop[i], float(fit[i])))
    return [(k.tolist(), f) for k, f in kept]


# --------------------------------------------------------------------- loop

def ga_solve(system: EquationSystem, cfg: GaConfig = GaConfig()) -> GaResult:
    """Generational GA with elitism.

    Each generation keeps the ``elite_count`` best chromosomes and fills the
    rest with mutated one-point-crossover children of tournament winners.
    Stops when the best fitness drops under ``fitness_threshold``, after
    ``max_generations``, or after ``stall_generations`` generations without
    an improvement of at least ``STALL_EPS``.
    """
    start = time.perf_counter()
    n = system.n
    rng = np.random.default_rng(cfg.seed)
    bounds = cfg.bounds(n)
    pop = init_population(cfg, n, rng)
    fit = _population_fitness(system, pop)
    n_children = cfg.population_size - cfg.elite_count

    trace: list[tuple[int, float]] = []
    sq_trace: list[tuple[int, float]] = []

    def record(gen):
        i = int(np.argmin(fit))
        trace.append((gen, float(fit[i])))
        sq_trace.append((gen, squared_objective(system, pop[i])))

    record(0)
    gen = 0
    stall = 0
    best = trace[-1][1]
    reason = "max_generations"
    while True:
        if best < cfg.fitness_threshold:
            reason = "threshold"
            break
        if gen >= cfg.max_generations:
            break
        if stall >= cfg.stall_generations:
            reason = "stalled"
            break
        order = np.argsort(fit, kind="stable")
        elite = order[: cfg.elite_count]
        children = []
        while len(children) < n_children:
            p1 = pop[_tournament_index(fit, cfg.tournament_size, rng)]
            p2 = pop[_tournament_index(fit, cfg.tournament_size, rng)]
            c1, c2 = crossover_one_point(p1, p2, cfg, rng)
            children.append(mutate(c1, cfg, rng, bounds))
            children.append(mutate(c2, cfg, rng, bounds))
        children = np.array(children[:n_children]).reshape(n_children, n)
        pop = np.vstack([pop[elite], children])
        fit = np.concatenate([fit[elite], _population_fitness(system, children)])
        gen += 1
        record(gen)
        new_best = trace[-1][1]
        stall = stall + 1 if best - new_best < STALL_EPS else 0
        best = min(best, new_best)

    i = int(np.argmin(fit))
    distinct = distinct_solutions(pop, fit, cfg)
    solutions = [x for x, _ in distinct] or [pop[i].tolist()]
    norms = []
    for x in solutions:
        try:
            norms.append(system.residual_norm(x))
        except DomainError:
            norms.append(math.inf)
    report = SolveReport(
        Method.GA, solutions, norms, gen, reason == "threshold", trace,
        time.perf_counter() - start, stop_reason=reason,
    )
    return GaResult(report, distinct, gen, cfg.seed, sq_trace, pop[i].tolist(), float(fit[i]))
