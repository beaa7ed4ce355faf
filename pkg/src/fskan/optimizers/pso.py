"""Global-best particle swarm with inertia weight."""

from dataclasses import dataclass

import numpy as np

from .base import ConvergenceHistory, OptimizationResult, evaluate, make_rng


@dataclass
class Swarm:
    position: np.ndarray
    velocity: np.ndarray
    fitness: np.ndarray  # at the current positions
    pbest: np.ndarray
    pbest_fitness: np.ndarray

    @property
    def gbest_index(self):
        return int(np.argmin(self.pbest_fitness))

    @property
    def gbest(self):
        return self.pbest[self.gbest_index]

    @property
    def gbest_fitness(self):
        return float(self.pbest_fitness[self.gbest_index])

    def copy(self):
        return Swarm(*(a.copy() for a in (self.position, self.velocity, self.fitness,
                                          self.pbest, self.pbest_fitness)))


def init_swarm(objective, bounds, size, rng):
    X = bounds.sample(rng, size)
    f = evaluate(objective, X)
    return Swarm(X, np.zeros_like(X), f, X.copy(), f.copy())


def pso_step(swarm, objective, bounds, rng, w, c1, c2):
    """Velocity and position update followed by memory update.

    ``v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x)``, ``x <- x + v``.
    Clamped coordinates have their velocity zeroed.
    """
    s = swarm.copy()
    n, d = s.position.shape
    r = rng.random((n, d, 2))
    gbest = s.gbest.copy()

    X = s.position
    V = w * s.velocity + c1 * r[:, :, 0] * (s.pbest - X) + c2 * r[:, :, 1] * (gbest - X)
    moved = X + V
    clipped = bounds.clip(moved)
    V[clipped != moved] = 0.0

    s.position = clipped
    s.velocity = V
    s.fitness = evaluate(objective, clipped)

    improved = s.fitness < s.pbest_fitness
    s.pbest[improved] = clipped[improved]
    s.pbest_fitness[improved] = s.fitness[improved]
    return s


def run(objective, bounds, config):
    rng = make_rng(config.seed)
    p = config.pso
    swarm = init_swarm(objective, bounds, config.population_size, rng)
    n_eval = config.population_size
    history = ConvergenceHistory()
    for it in range(config.max_iterations):
        swarm = pso_step(swarm, objective, bounds, rng, p.w, p.c1, p.c2)
        n_eval += config.population_size
        history.append(it + 1, swarm.gbest_fitness, swarm.gbest)
    return OptimizationResult(swarm.gbest.copy(), swarm.gbest_fitness, history, n_eval)
