"""Shooting driver: fitness function, single solves and the case matrix.

The fitness of a candidate ``(alpha, eta_inf)`` is the Euclidean norm of the
terminal residuals ``(f'(eta_inf) - 1, f''(eta_inf))`` after RK4 shooting on
the unit interval. Optimization runs at a cheap fidelity (``n_steps``); the
reported residual and profile are recomputed at ``report_steps``.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import kernels
from .ode import Grid, integrate
from .optimizers import (
    ALGORITHMS,
    ConfigurationError,
    ConvergenceHistory,
    OptimizerConfig,
    SearchBounds,
    optimize,
)
from .problem import Candidate, Profile, WedgeParams, initial_state, physical_profile, vector_field

__all__ = [
    "DEFAULT_BOUNDS",
    "MatrixCell",
    "SolveReport",
    "derive_seed",
    "fidelity_steps",
    "fitness",
    "fitness_batch",
    "profile_for",
    "run_case_matrix",
    "solve",
]

DEFAULT_BOUNDS = SearchBounds([0.0, 1.0], [3.0, 12.0])
SEARCH_STEPS = 1000
REPORT_STEPS = 4000
MIN_FIDELITY_STEPS = 50
DECELERATING_STARTS = 5


def fitness_batch(X, params, n_steps=SEARCH_STEPS):
    """Fitness for each row ``(alpha, eta_inf)`` of ``X``; ``inf`` on divergence."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    b0, b = params
    return kernels.residual_norm(X[:, 0], X[:, 1], b0, b, n_steps)


def fitness(candidate, params, n_steps=SEARCH_STEPS):
    alpha, eta_inf = candidate
    initial_state(candidate)  # validates
    return float(fitness_batch([[alpha, eta_inf]], params, n_steps)[0])


def fidelity_steps(fidelity, n_steps, min_steps=MIN_FIDELITY_STEPS):
    """RK step count for a Hyperband fidelity in [0, 1], linear in the resource."""
    if n_steps <= min_steps:
        return int(n_steps)
    return int(round(min_steps + fidelity * (n_steps - min_steps)))


def derive_seed(seed, *keys):
    """Independent 64-bit seed for a sub-run, derived from ``seed`` and ``keys``."""
    ss = np.random.SeedSequence([int(seed), *(int(k) for k in keys)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def profile_for(candidate, params, n_steps=REPORT_STEPS):
    """Recorded solution for a candidate, mapped to physical ``eta``."""
    sol = integrate(vector_field(params), Grid(0.0, 1.0, n_steps), initial_state(candidate), record=True)
    return physical_profile(sol.trajectory, candidate)


@dataclass
class SolveReport:
    params: WedgeParams
    best: Candidate
    residual: float
    history: ConvergenceHistory
    profile: Profile
    config: dict = field(default_factory=dict)
    search_fitness: float = float("nan")

    def to_dict(self):
        it, fit, best = self.history.as_arrays()
        return {
            "params": {"beta0": float(self.params.beta0), "beta": float(self.params.beta)},
            "best": {"alpha": float(self.best.alpha), "eta_inf": float(self.best.eta_inf)},
            "residual": float(self.residual),
            "history": {
                "iteration": it.tolist(),
                "best_fitness": fit.tolist(),
                "alpha": best[:, 0].tolist() if len(best) else [],
                "eta_inf": best[:, 1].tolist() if len(best) else [],
            },
            "profile": {
                "eta": self.profile.eta.tolist(),
                "f": self.profile.f.tolist(),
                "fp": self.profile.fp.tolist(),
                "fpp": self.profile.fpp.tolist(),
            },
            "config": dict(self.config),
        }

    @classmethod
    def from_dict(cls, d):
        h = d["history"]
        history = ConvergenceHistory()
        for i, f, a, e in zip(h["iteration"], h["best_fitness"], h["alpha"], h["eta_inf"]):
            history.append(i, f, (a, e))
        p = d["profile"]
        eta = np.array(p["eta"], dtype=np.float64)
        eta_inf = float(d["best"]["eta_inf"])
        profile = Profile(
            xi=eta / eta_inf if eta.size else eta,
            eta=eta,
            f=np.array(p["f"], dtype=np.float64),
            fp=np.array(p["fp"], dtype=np.float64),
            fpp=np.array(p["fpp"], dtype=np.float64),
        )
        return cls(
            params=WedgeParams(d["params"]["beta0"], d["params"]["beta"]),
            best=Candidate(d["best"]["alpha"], eta_inf),
            residual=float(d["residual"]),
            history=history,
            profile=profile,
            config=dict(d["config"]),
        )


def _starts_for(params, n_starts):
    if n_starts is not None:
        return int(n_starts)
    return DECELERATING_STARTS if params[1] < 0 else 1


def solve(params, algorithm="jaya", config=None, n_steps=SEARCH_STEPS, *,
          report_steps=REPORT_STEPS, bounds=DEFAULT_BOUNDS, n_starts=None, record=True):
    """Find ``(alpha, eta_inf)`` for one regime and package the result.

    Decelerating regimes (``beta < 0``) run ``DECELERATING_STARTS`` independent
    starts by default and keep the best; start 0 uses ``config.seed``, later
    starts use :func:`derive_seed`.
    """
    params = WedgeParams(float(params[0]), float(params[1]))
    if not (np.isfinite(params.beta0) and np.isfinite(params.beta)):
        raise ConfigurationError(f"regime parameters must be finite, got {tuple(params)}")
    config = (config or OptimizerConfig()).validate()
    if not isinstance(bounds, SearchBounds):
        bounds = SearchBounds(*bounds)
    if bounds.dim != 2 or bounds.lo[1] <= 0:
        raise ConfigurationError("bounds must be 2-D with a positive lower eta_inf bound")
    n_steps = int(n_steps)
    report_steps = int(report_steps)
    if n_steps < 1 or report_steps < 1:
        raise ConfigurationError("step counts must be positive")
    starts = _starts_for(params, n_starts)
    if starts < 1:
        raise ConfigurationError("n_starts must be positive")

    def objective(X):
        return fitness_batch(X, params, n_steps)

    def objective_at_fidelity(X, fidelity):
        return fitness_batch(X, params, fidelity_steps(fidelity, n_steps))

    best = None
    for k in range(starts):
        seed = config.seed if k == 0 else derive_seed(config.seed, k)
        cfg = OptimizerConfig(
            population_size=config.population_size,
            max_iterations=config.max_iterations,
            seed=seed,
            pso=config.pso,
            ga=config.ga,
            hyperband=config.hyperband,
        )
        result = optimize(objective, bounds, cfg, algorithm, vectorized=True,
                          objective_at_fidelity=objective_at_fidelity)
        if best is None or result.fun < best.fun:
            best = result

    candidate = Candidate(float(best.x[0]), float(best.x[1]))
    residual = fitness(candidate, params, report_steps)
    profile = profile_for(candidate, params, report_steps) if record else Profile.empty()

    echo = {
        "optimizer": algorithm,
        "seed": int(config.seed),
        "n_steps": n_steps,
        "report_steps": report_steps,
        "population_size": int(config.population_size),
        "max_iterations": int(config.max_iterations),
        "starts": starts,
        "bounds": [float(bounds.lo[0]), float(bounds.hi[0]), float(bounds.lo[1]), float(bounds.hi[1])],
    }
    return SolveReport(params, candidate, residual, best.history, profile, echo, float(best.fun))


class MatrixCell(NamedTuple):
    params: WedgeParams
    algorithm: str
    report: Optional[SolveReport]
    error: Optional[str]

    @property
    def alpha(self):
        return self.report.best.alpha if self.report else float("nan")

    @property
    def eta_inf(self):
        return self.report.best.eta_inf if self.report else float("nan")


def run_case_matrix(rows, algorithms, config=None, n_steps=SEARCH_STEPS, *,
                    max_workers=None, **solve_kwargs):
    """One solve per ``(row, algorithm)``, returned in row-major order.

    Each cell seeds its own generator from ``(config.seed, row index,
    algorithm index)``, so cells may run on a thread pool and still give the
    same numbers as a serial run. A failing solve is recorded in its cell and
    does not stop the matrix.
    """
    rows = [WedgeParams(float(r[0]), float(r[1])) for r in rows]
    if not rows:
        raise ValueError("the case matrix needs at least one row")
    algorithms = list(algorithms)
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ConfigurationError(f"unknown algorithm {a!r}")
    config = (config or OptimizerConfig()).validate()

    jobs = [(i, j, row, alg) for i, row in enumerate(rows) for j, alg in enumerate(algorithms)]

    def run(job):
        i, j, row, alg = job
        cfg = OptimizerConfig(
            population_size=config.population_size,
            max_iterations=config.max_iterations,
            seed=derive_seed(config.seed, i, j),
            pso=config.pso,
            ga=config.ga,
            hyperband=config.hyperband,
        )
        try:
            return MatrixCell(row, alg, solve(row, alg, cfg, n_steps, **solve_kwargs), None)
        except Exception as err:  # noqa: BLE001 - recorded per cell by contract
            return MatrixCell(row, alg, None, f"{type(err).__name__}: {err}")

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            return list(pool.map(run, jobs))
    return [run(job) for job in jobs]
