import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fskan.optimizers import (
    ALGORITHMS,
    ConfigurationError,
    GASettings,
    OptimizerConfig,
    Population,
    SearchBounds,
    Swarm,
    ga_step,
    hyperband_run,
    jaya_step,
    jaya_trial,
    make_rng,
    optimize,
    pso_step,
)
from fskan.optimizers.hyperband import brackets, max_bracket, rungs
from fskan.shooting import DEFAULT_BOUNDS, fidelity_steps, fitness_batch

BOUNDS = SearchBounds([0.0, 1.0], [3.0, 12.0])


def quadratic(X):
    X = np.atleast_2d(X)
    return (X[:, 0] - 1.0) ** 2 + (X[:, 1] - 5.0) ** 2


class Recorder:
    """Batch objective that remembers every point it was asked about."""

    def __init__(self, fn=quadratic):
        self.fn = fn
        self.points = []

    def __call__(self, X, *rest):
        self.points.append(np.array(X, copy=True))
        return self.fn(X)

    @property
    def all_points(self):
        return np.concatenate(self.points) if self.points else np.empty((0, 2))


@pytest.mark.parametrize("algorithm,tol", [("jaya", 1e-6), ("pso", 1e-4), ("ga", 1e-3)])
def test_quadratic_minimum(algorithm, tol):
    res = optimize(quadratic, BOUNDS, OptimizerConfig(seed=1), algorithm, vectorized=True)
    assert np.max(np.abs(res.x - [1.0, 5.0])) <= tol


def test_hyperband_quadratic_minimum():
    res = optimize(quadratic, BOUNDS, OptimizerConfig(seed=1), "hyperband", vectorized=True)
    assert np.max(np.abs(res.x - [1.0, 5.0])) <= 1e-3


def test_scalar_objective_is_lifted():
    res = optimize(lambda x: float(np.sum((x - 0.5) ** 2)), ([0, 0], [1, 1]),
                   OptimizerConfig(max_iterations=50), "jaya")
    assert res.fun < 1e-8


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_constant_objective(algorithm):
    res = optimize(lambda X: np.full(len(X), 7.0), BOUNDS, OptimizerConfig(max_iterations=5), algorithm, vectorized=True)
    assert res.fun == 7.0
    assert res.history.best_fitness == [7.0] * 5


def _pop(X, objective=quadratic):
    X = np.array(X, dtype=np.float64)
    return Population(X, objective(X))


def test_jaya_zero_draws_leave_population_unchanged():
    rng = make_rng(0)
    pop = _pop(BOUNDS.sample(rng, 6))
    new = jaya_step(pop, quadratic, BOUNDS, rng, rand=np.zeros((6, 2, 2)))
    assert np.array_equal(new.candidates, pop.candidates)
    assert np.array_equal(new.fitness, pop.fitness)


@settings(max_examples=30, deadline=None)
@given(x=st.tuples(st.floats(0.0, 3.0), st.floats(1.0, 12.0)), seed=st.integers(0, 2**32))
def test_jaya_collapsed_population_is_fixed_point(x, seed):
    pop = _pop([x] * 5)
    new = jaya_step(pop, quadratic, BOUNDS, make_rng(seed))
    assert np.array_equal(new.candidates, pop.candidates)


def test_jaya_trial_hand_arithmetic():
    assert jaya_trial(np.array([2.0]), np.array([3.0]), np.array([0.0]), 1.0, 1.0)[0] == 5.0


def test_jaya_permutation_equivariant():
    rng = make_rng(4)
    X = BOUNDS.sample(rng, 8)
    rand = rng.random((8, 2, 2))
    perm = rng.permutation(8)
    a = jaya_step(_pop(X), quadratic, BOUNDS, None, rand=rand)
    b = jaya_step(_pop(X[perm]), quadratic, BOUNDS, None, rand=rand[perm])
    assert np.array_equal(a.candidates[perm], b.candidates)


def _swarm(X, V):
    X = np.array(X, dtype=np.float64)
    f = quadratic(X)
    return Swarm(X, np.array(V, dtype=np.float64), f, X.copy(), f.copy())


def test_pso_zero_coefficients_freeze_swarm():
    rng = make_rng(2)
    X = BOUNDS.sample(rng, 5)
    s = pso_step(_swarm(X, rng.normal(size=(5, 2))), quadratic, BOUNDS, rng, 0.0, 0.0, 0.0)
    assert np.array_equal(s.velocity, np.zeros((5, 2)))
    assert np.array_equal(s.position, X)


def test_pso_single_particle_keeps_inertia_only():
    s = pso_step(_swarm([[1.5, 6.0]], [[0.2, -0.4]]), quadratic, BOUNDS, make_rng(0), 0.7, 1.5, 1.5)
    assert np.allclose(s.velocity, [[0.14, -0.28]], atol=0, rtol=1e-15)
    assert np.allclose(s.position, [[1.64, 5.72]], atol=1e-15)


def test_pso_clamped_dimension_loses_velocity():
    s = pso_step(_swarm([[2.9, 6.0]], [[1.0, 0.1]]), quadratic, BOUNDS, make_rng(0), 1.0, 0.0, 0.0)
    assert s.position[0, 0] == 3.0 and s.velocity[0, 0] == 0.0
    assert s.velocity[0, 1] == 0.1


def test_ga_without_variation_copies_parents():
    rng = make_rng(8)
    pop = _pop(BOUNDS.sample(rng, 10))
    ga = GASettings(crossover_rate=0.0, mutation_rate=0.0)
    for _ in range(20):
        new = ga_step(pop, quadratic, BOUNDS, rng, ga)
        assert new.best_fitness <= pop.best_fitness
        parents = {tuple(x) for x in pop.candidates}
        assert all(tuple(x) in parents for x in new.candidates)
        pop = new


def test_hyperband_bracket_schedule():
    assert max_bracket(81, 3) == 4
    b = brackets(81, 3)
    assert [x.s for x in b] == [4, 3, 2, 1, 0]
    assert [x.n for x in b] == [81, 34, 15, 8, 5]
    assert [x.r for x in b] == [1, 3, 9, 27, 81]
    assert rungs(b[0], 3) == [(81, 1), (27, 3), (9, 9), (3, 27), (1, 81)]


def test_hyperband_single_bracket_is_random_search():
    assert brackets(1, 3) == [(0, 1, 1.0)]
    fidelities = []

    def obj(X, fidelity):
        fidelities.append(fidelity)
        return quadratic(X)

    sweep = hyperband_run(obj, BOUNDS, 1, 3, make_rng(0))
    assert fidelities == [1.0] and sweep.n_full == 1


def test_hyperband_loss_bounded_by_full_evaluations():
    full = []

    def obj(X, fidelity):
        loss = quadratic(X) + (1.0 - fidelity)
        if fidelity == 1.0:
            full.append(loss)
        return loss

    sweep = hyperband_run(obj, BOUNDS, 81, 3, make_rng(3))
    full = np.concatenate(full)
    assert len(full) == sweep.n_full
    assert sweep.loss <= full.min()
    assert sweep.loss == quadratic(sweep.x[None])[0]


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_history_monotone(algorithm):
    res = optimize(quadratic, BOUNDS, OptimizerConfig(seed=9, max_iterations=30), algorithm, vectorized=True)
    f = np.array(res.history.best_fitness)
    assert len(f) == 30
    assert np.all(np.diff(f) <= 0)
    assert res.fun == f[-1]


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_every_evaluated_point_in_bounds(algorithm):
    rec = Recorder(lambda X: -X[:, 0] - X[:, 1])  # drives candidates into the corner
    res = optimize(rec, BOUNDS, OptimizerConfig(max_iterations=20), algorithm, vectorized=True,
                   objective_at_fidelity=rec)
    pts = rec.all_points
    assert pts.shape[0] >= res.n_evaluations > 0
    assert np.all(pts >= BOUNDS.lo) and np.all(pts <= BOUNDS.hi)


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_seed_determinism(algorithm):
    cfg = OptimizerConfig(seed=2**63 + 11, max_iterations=20)
    a, b = Recorder(), Recorder()
    ra = optimize(a, BOUNDS, cfg, algorithm, vectorized=True)
    rb = optimize(b, BOUNDS, cfg, algorithm, vectorized=True)
    assert a.all_points.tobytes() == b.all_points.tobytes()
    assert ra.history.best_fitness == rb.history.best_fitness
    assert ra.x.tobytes() == rb.x.tobytes()


def test_different_seeds_differ():
    a = optimize(quadratic, BOUNDS, OptimizerConfig(seed=1, max_iterations=3), "pso", vectorized=True)
    b = optimize(quadratic, BOUNDS, OptimizerConfig(seed=2, max_iterations=3), "pso", vectorized=True)
    assert a.x.tobytes() != b.x.tobytes()


@pytest.mark.parametrize(
    "bounds,config,algorithm",
    [
        (BOUNDS, OptimizerConfig(population_size=2), "jaya"),
        (BOUNDS, OptimizerConfig(max_iterations=0), "pso"),
        (BOUNDS, OptimizerConfig(seed=-1), "ga"),
        (BOUNDS, OptimizerConfig(), "simplex"),
        (([0.0, 1.0], [0.0, 12.0]), OptimizerConfig(), "jaya"),
        (([0.0, np.nan], [3.0, 12.0]), OptimizerConfig(), "hyperband"),
    ],
)
def test_configuration_errors_before_any_call(bounds, config, algorithm):
    rec = Recorder()
    with pytest.raises(ConfigurationError):
        optimize(rec, bounds, config, algorithm, vectorized=True, objective_at_fidelity=rec)
    assert rec.points == []


def test_non_finite_objective_values_become_inf():
    def obj(X):
        out = quadratic(X)
        out[::2] = np.nan
        return out

    res = optimize(obj, BOUNDS, OptimizerConfig(max_iterations=10), "jaya", vectorized=True)
    assert np.isfinite(res.fun)


def _fs(params, n_steps=1000):
    def objective(X):
        return fitness_batch(X, params, n_steps)

    def at_fidelity(X, fidelity):
        return fitness_batch(X, params, fidelity_steps(fidelity, n_steps))

    return objective, at_fidelity


@pytest.mark.parametrize(
    "algorithm,params,want,tol",
    [
        ("jaya", (0.5, 0.0), 0.332057, 1e-3),
        ("hyperband", (0.5, 0.0), 0.33142, 1e-3),
        ("ga", (1.0, 1.0), 1.23257, 5e-3),
    ],
)
def test_falkner_skan_wall_shear(algorithm, params, want, tol):
    objective, at_fidelity = _fs(params)
    res = optimize(objective, DEFAULT_BOUNDS, OptimizerConfig(seed=0), algorithm,
                   vectorized=True, objective_at_fidelity=at_fidelity)
    assert abs(res.x[0] - want) <= tol
