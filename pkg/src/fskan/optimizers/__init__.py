"""Derivative-free, box-bounded minimizers behind one entry point."""

from . import ga, hyperband, jaya, pso
from .base import (
    ConfigurationError,
    ConvergenceHistory,
    GASettings,
    HyperbandSettings,
    OptimizationResult,
    OptimizerConfig,
    PSOSettings,
    Population,
    SearchBounds,
    batched,
    evaluate,
    make_rng,
)
from .ga import ga_step
from .hyperband import hyperband_run
from .jaya import jaya_step, jaya_trial
from .pso import Swarm, pso_step

ALGORITHMS = ("jaya", "pso", "ga", "hyperband")

__all__ = [
    "ALGORITHMS",
    "ConfigurationError",
    "ConvergenceHistory",
    "GASettings",
    "HyperbandSettings",
    "OptimizationResult",
    "OptimizerConfig",
    "PSOSettings",
    "Population",
    "SearchBounds",
    "Swarm",
    "batched",
    "evaluate",
    "ga_step",
    "hyperband_run",
    "jaya_step",
    "jaya_trial",
    "make_rng",
    "optimize",
    "pso_step",
]


def optimize(objective, bounds, config=None, algorithm="jaya", *, vectorized=False,
             objective_at_fidelity=None):
    """Minimize ``objective`` over ``bounds``.

    Parameters
    ----------
    objective : callable
        ``f(x) -> float`` for a 1-D point, or a batch objective
        ``f(X) -> (n,)`` when ``vectorized`` is true.
    bounds : SearchBounds or (lo, hi)
    config : OptimizerConfig, optional
    algorithm : {"jaya", "pso", "ga", "hyperband"}
    objective_at_fidelity : callable, optional
        Batch objective ``f(X, fidelity)`` used by Hyperband, with fidelity
        in [0, 1] and 1 meaning full accuracy. Defaults to ignoring the
        fidelity argument.

    Returns
    -------
    OptimizationResult
        ``(x, fun, history, n_evaluations)``; unpacks like a tuple.

    Raises
    ------
    ConfigurationError
        Invalid bounds, config or algorithm name. Raised before the
        objective is ever called.
    """
    if not isinstance(bounds, SearchBounds):
        bounds = SearchBounds(*bounds)
    config = (config or OptimizerConfig()).validate()
    if algorithm not in ALGORITHMS:
        raise ConfigurationError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")

    batch = objective if vectorized else batched(objective)

    if algorithm == "hyperband":
        if objective_at_fidelity is None:
            def objective_at_fidelity(X, fidelity):
                return batch(X)
        return hyperband.run(objective_at_fidelity, bounds, config)

    runner = {"jaya": jaya.run, "pso": pso.run, "ga": ga.run}[algorithm]
    return runner(batch, bounds, config)

