"""Real-coded generational GA with elitism.

Operators: binary tournament selection, blend crossover
``child = lam * a + (1 - lam) * b`` with one ``lam`` per child drawn uniformly
on ``[blend_lo, blend_hi]`` (children stay on the line through both parents), Gaussian mutation with sigma proportional to the
bound width, then clamping. The ``elite_count`` best candidates survive
unchanged.

Random draws per generation, in order: tournament contenders ``(m, 2, 2)``,
crossover coins ``(m,)``, blend weights ``(m, 1)``, mutation coins ``(m, d)``,
mutation noise ``(m, d)``, where ``m`` is the number of children.
"""

import numpy as np

from .base import ConvergenceHistory, OptimizationResult, Population, evaluate, make_rng
from .jaya import initial_population


def _tournament(fitness, contenders):
    a, b = contenders[..., 0], contenders[..., 1]
    fa, fb = fitness[a], fitness[b]
    take_b = (fb < fa) | ((fb == fa) & (b < a))
    return np.where(take_b, b, a)


def ga_step(pop, objective, bounds, rng, settings):
    X = pop.candidates
    n, d = X.shape
    n_elite = settings.elite_count
    m = n - n_elite

    contenders = rng.integers(0, n, size=(m, 2, 2))
    cross = rng.random(m) < settings.crossover_rate
    lam = rng.uniform(settings.blend_lo, settings.blend_hi, size=(m, 1))
    mutate = rng.random((m, d)) < settings.mutation_rate
    noise = rng.standard_normal((m, d))

    parents = _tournament(pop.fitness, contenders)
    a = X[parents[:, 0]]
    b = X[parents[:, 1]]
    children = np.where(cross[:, None], lam * a + (1.0 - lam) * b, a)
    sigma = settings.mutation_scale * bounds.width
    children = np.where(mutate, children + noise * sigma, children)
    children = bounds.clip(children)

    elite = np.argsort(pop.fitness, kind="stable")[:n_elite]
    child_fitness = evaluate(objective, children)
    return Population(
        np.concatenate([X[elite], children]),
        np.concatenate([pop.fitness[elite], child_fitness]),
    )


def run(objective, bounds, config):
    rng = make_rng(config.seed)
    pop = initial_population(objective, bounds, config.population_size, rng)
    n_eval = len(pop)
    history = ConvergenceHistory()
    for it in range(config.max_iterations):
        pop = ga_step(pop, objective, bounds, rng, config.ga)
        n_eval += len(pop) - config.ga.elite_count
        history.append(it + 1, pop.best_fitness, pop.best)
    return OptimizationResult(pop.best.copy(), pop.best_fitness, history, n_eval)
