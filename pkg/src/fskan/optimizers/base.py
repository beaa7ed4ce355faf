"""Shared types for the population-based minimizers.

Objectives are *batch* callables: they take an ``(n, d)`` array of points and
return ``n`` objective values. Use :func:`batched` to lift a scalar function.
Non-finite objective values are treated as ``+inf``.

Randomness comes from a single ``numpy.random.Generator`` on the PCG64 bit
generator, seeded with the configured 64-bit seed, and is drawn in a fixed
order: initial population first, then per iteration with candidate-major,
dimension-minor layout. Draws always happen before the objective is called,
so a batch objective may evaluate its rows in any order or in parallel
without changing results.
"""

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

__all__ = [
    "ConfigurationError",
    "ConvergenceHistory",
    "GASettings",
    "HyperbandSettings",
    "OptimizationResult",
    "OptimizerConfig",
    "PSOSettings",
    "Population",
    "SearchBounds",
    "batched",
    "evaluate",
    "make_rng",
]

BatchObjective = Callable[[np.ndarray], np.ndarray]


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class SearchBounds:
    lo: np.ndarray
    hi: np.ndarray

    def __init__(self, lo, hi):
        lo = np.array(lo, dtype=np.float64).reshape(-1)
        hi = np.array(hi, dtype=np.float64).reshape(-1)
        if lo.shape != hi.shape or lo.size == 0:
            raise ConfigurationError("lower and upper bounds must be non-empty and of equal length")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ConfigurationError("bounds must be finite")
        if np.any(lo >= hi):
            raise ConfigurationError(f"need lo < hi in every dimension, got lo={lo}, hi={hi}")
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self):
        return self.lo.size

    @property
    def width(self):
        return self.hi - self.lo

    def clip(self, x):
        return np.clip(x, self.lo, self.hi)

    def contains(self, x):
        x = np.asarray(x)
        return bool(np.all((x >= self.lo) & (x <= self.hi)))

    def sample(self, rng, n):
        return self.lo + rng.random((n, self.dim)) * self.width

    def __eq__(self, other):
        if not isinstance(other, SearchBounds):
            return NotImplemented
        return np.array_equal(self.lo, other.lo) and np.array_equal(self.hi, other.hi)

    def __hash__(self):
        return hash((self.lo.tobytes(), self.hi.tobytes()))


@dataclass(frozen=True)
class PSOSettings:
    w: float = 0.7
    c1: float = 1.5
    c2: float = 1.5


@dataclass(frozen=True)
class GASettings:
    crossover_rate: float = 0.9
    mutation_rate: float = 0.1
    mutation_scale: float = 0.1  # Gaussian sigma as a fraction of the bound width
    elite_count: int = 1
    blend_lo: float = -0.25
    blend_hi: float = 1.25


@dataclass(frozen=True)
class HyperbandSettings:
    R: int = 81
    halving_factor: int = 3
    # each sweep after the first samples a box shrunk by this factor around the incumbent
    shrink: float = 0.9


@dataclass(frozen=True)
class OptimizerConfig:
    population_size: int = 20
    max_iterations: int = 100
    seed: int = 0
    pso: PSOSettings = field(default_factory=PSOSettings)
    ga: GASettings = field(default_factory=GASettings)
    hyperband: HyperbandSettings = field(default_factory=HyperbandSettings)

    def validate(self):
        def is_int(v):
            return isinstance(v, (int, np.integer)) and not isinstance(v, bool)

        if not is_int(self.population_size) or self.population_size < 4:
            raise ConfigurationError(f"population_size must be an integer >= 4, got {self.population_size!r}")
        if not is_int(self.max_iterations) or self.max_iterations < 1:
            raise ConfigurationError(f"max_iterations must be a positive integer, got {self.max_iterations!r}")
        if not is_int(self.seed) or not 0 <= self.seed < 2**64:
            raise ConfigurationError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")

        p = self.pso
        for name in ("w", "c1", "c2"):
            v = getattr(p, name)
            if not np.isfinite(v) or v < 0:
                raise ConfigurationError(f"pso.{name} must be finite and non-negative, got {v!r}")

        g = self.ga
        for name in ("crossover_rate", "mutation_rate"):
            v = getattr(g, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigurationError(f"ga.{name} must lie in [0, 1], got {v!r}")
        if not np.isfinite(g.mutation_scale) or g.mutation_scale < 0:
            raise ConfigurationError(f"ga.mutation_scale must be non-negative, got {g.mutation_scale!r}")
        if not is_int(g.elite_count) or not 0 <= g.elite_count < self.population_size:
            raise ConfigurationError(
                f"ga.elite_count must be in [0, population_size), got {g.elite_count!r}"
            )
        if not g.blend_lo <= g.blend_hi:
            raise ConfigurationError("ga.blend_lo must not exceed ga.blend_hi")

        hb = self.hyperband
        if not is_int(hb.halving_factor) or hb.halving_factor < 2:
            raise ConfigurationError(f"hyperband.halving_factor must be an integer >= 2, got {hb.halving_factor!r}")
        if not is_int(hb.R) or hb.R < 1:
            raise ConfigurationError(f"hyperband.R must be a positive integer, got {hb.R!r}")
        if not 0.0 < hb.shrink <= 1.0:
            raise ConfigurationError(f"hyperband.shrink must lie in (0, 1], got {hb.shrink!r}")
        return self


@dataclass
class Population:
    candidates: np.ndarray  # (n, d)
    fitness: np.ndarray  # (n,)

    def __post_init__(self):
        if self.candidates.shape[0] != self.fitness.shape[0]:
            raise ValueError("candidates and fitness must have equal length")

    def __len__(self):
        return self.fitness.size

    # np.argmin/argmax return the first occurrence: ties go to the lowest index
    @property
    def best_index(self):
        return int(np.argmin(self.fitness))

    @property
    def worst_index(self):
        return int(np.argmax(self.fitness))

    @property
    def best(self):
        return self.candidates[self.best_index]

    @property
    def best_fitness(self):
        return float(self.fitness[self.best_index])

    def copy(self):
        return Population(self.candidates.copy(), self.fitness.copy())


class ConvergenceRecord(NamedTuple):
    iteration: int
    best_fitness: float
    best: np.ndarray


@dataclass
class ConvergenceHistory:
    iterations: list = field(default_factory=list)
    best_fitness: list = field(default_factory=list)
    best: list = field(default_factory=list)

    def append(self, iteration, fitness, x):
        self.iterations.append(int(iteration))
        self.best_fitness.append(float(fitness))
        self.best.append(np.array(x, dtype=np.float64))

    def __len__(self):
        return len(self.iterations)

    def __getitem__(self, i):
        return ConvergenceRecord(self.iterations[i], self.best_fitness[i], self.best[i])

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def as_arrays(self):
        """``(iterations, best_fitness, best)`` as numpy arrays."""
        dim = self.best[0].size if self.best else 0
        best = np.array(self.best).reshape(len(self), dim)
        return np.array(self.iterations, dtype=np.int64), np.array(self.best_fitness), best


class OptimizationResult(NamedTuple):
    x: np.ndarray
    fun: float
    history: ConvergenceHistory
    n_evaluations: int = 0


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(int(seed)))


def batched(fn):
    """Lift ``fn(x) -> float`` to a batch objective."""

    def objective(X):
        return np.array([fn(x) for x in np.atleast_2d(X)], dtype=np.float64)

    objective.batched = True
    return objective


def evaluate(objective, X):
    values = np.asarray(objective(X), dtype=np.float64).reshape(-1)
    if values.size != X.shape[0]:
        raise ValueError(f"objective returned {values.size} values for {X.shape[0]} points")
    values = values.copy()
    values[~np.isfinite(values)] = np.inf
    return values
