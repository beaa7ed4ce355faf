"""Jaya: move toward the best candidate and away from the worst.

Each generation sweeps the population in index order. Best and worst are
frozen for the sweep, each trial point is clamped to the bounds, and a trial
replaces its parent only when it is strictly better.
"""

import numpy as np

from .base import ConvergenceHistory, OptimizationResult, Population, evaluate, make_rng


def jaya_trial(x, x_best, x_worst, r1, r2):
    """Trial point ``x + r1 (x_best - |x|) - r2 (x_worst - |x|)``, elementwise."""
    ax = np.abs(x)
    return x + r1 * (x_best - ax) - r2 * (x_worst - ax)


def jaya_step(pop, objective, bounds, rng, rand=None):
    """One Jaya generation.

    Parameters
    ----------
    pop : Population
    objective : callable
        Batch objective.
    bounds : SearchBounds
    rng : numpy.random.Generator
        Source of ``r1, r2``; ignored when ``rand`` is given.
    rand : ndarray, optional
        Explicit ``(n, d, 2)`` draws, last axis ``(r1, r2)``.

    Returns
    -------
    Population
        New population; the input is left untouched.
    """
    X = pop.candidates
    n, d = X.shape
    if rand is None:
        rand = rng.random((n, d, 2))
    x_best = X[pop.best_index].copy()
    x_worst = X[pop.worst_index].copy()

    trial = bounds.clip(jaya_trial(X, x_best, x_worst, rand[:, :, 0], rand[:, :, 1]))
    trial_fitness = evaluate(objective, trial)

    accept = trial_fitness < pop.fitness
    new = pop.copy()
    new.candidates[accept] = trial[accept]
    new.fitness[accept] = trial_fitness[accept]
    return new


def initial_population(objective, bounds, size, rng):
    X = bounds.sample(rng, size)
    return Population(X, evaluate(objective, X))


def run(objective, bounds, config):
    rng = make_rng(config.seed)
    pop = initial_population(objective, bounds, config.population_size, rng)
    n_eval = len(pop)
    history = ConvergenceHistory()
    for it in range(config.max_iterations):
        pop = jaya_step(pop, objective, bounds, rng)
        n_eval += len(pop)
        history.append(it + 1, pop.best_fitness, pop.best)
    return OptimizationResult(pop.best.copy(), pop.best_fitness, history, n_eval)
