import numpy as np
import pytest
from scipy.integrate import solve_bvp

from fskan.ode import Grid, Trajectory, integrate
from fskan.problem import (
    Candidate,
    InvalidCandidateError,
    Profile,
    ProfileSample,
    WedgeParams,
    boundary_residual,
    initial_state,
    physical_profile,
    rhs,
    vector_field,
)
from fskan.reference import find
from fskan.shooting import profile_for, solve


@pytest.mark.parametrize("beta0,beta", [(0.5, 0.0), (1.0, 1.0), (2.0, -0.3)])
def test_rhs_free_stream_state(beta0, beta):
    out = rhs(np.array([0.0, 1.0, 0.0, 7.5]), WedgeParams(beta0, beta))
    assert np.array_equal(out, [7.5, 0.0, 0.0, 0.0])


def test_rhs_at_wall():
    out = rhs(np.array([0.0, 0.0, 0.4, 6.0]), WedgeParams(1.0, 0.0))
    assert np.array_equal(out, [0.0, 0.4 * 6.0, 0.0, 0.0])


def test_rhs_arithmetic():
    out = rhs(np.array([1.0, 0.0, 1.0, 2.0]), WedgeParams(2.0, 1.0))
    assert np.array_equal(out, [0.0, 2.0, -6.0, 0.0])


def test_vector_field_ignores_coordinate():
    f = vector_field((1.0, 0.5))
    y = np.array([0.2, 0.3, 0.4, 5.0])
    assert np.array_equal(f(0.0, y), f(0.9, y))


@pytest.mark.parametrize(
    "alpha,eta_inf",
    [(0.332057, 11.856964), (0.0, 1.0), (1.311938, 4.840246)],
)
def test_initial_state(alpha, eta_inf):
    y0 = initial_state(Candidate(alpha, eta_inf))
    assert np.array_equal(y0, [0.0, 0.0, alpha, eta_inf])


@pytest.mark.parametrize("c", [(0.3, 0.0), (0.3, -2.0), (np.nan, 5.0), (0.3, np.inf)])
def test_initial_state_rejects(c):
    with pytest.raises(InvalidCandidateError):
        initial_state(Candidate(*c))


def test_boundary_residual_examples():
    assert boundary_residual([9.0, 1.0, 0.0, 3.0]) == (0.0, 0.0)
    r1, r2 = boundary_residual([0.0, 0.99998524, 1e-9, 5.0])
    assert r1 == pytest.approx(-1.476e-5, abs=1e-12)
    assert r2 == 1e-9
    assert boundary_residual([0.0, 1.5, -0.2, 1.0]) == (0.5, -0.2)


def test_physical_profile_maps_eta():
    traj = Trajectory(np.array([0.0, 0.5]), np.array([[0.0, 0.0, 0.7, 4.0], [0.1, 0.2, 0.3, 4.0]]))
    p = physical_profile(traj, Candidate(0.7, 4.0))
    assert p[1] == ProfileSample(eta=2.0, f=0.1, fp=0.2, fpp=0.3)
    assert len(p) == 2
    assert p.samples()[0] == ProfileSample(0.0, 0.0, 0.0, 0.7)


def test_empty_profile():
    p = Profile.empty()
    assert len(p) == 0
    assert p.samples() == []


def _ref_profile(reference, beta0, beta):
    rec = find(reference, beta0, beta)
    return rec, profile_for(Candidate(rec.alpha_ref["jaya"], rec.eta_inf_ref), rec.params)


def test_blasius_velocity_near_wall(reference):
    _, p = _ref_profile(reference, 0.5, 0.0)
    assert p.at_xi(0.1) == pytest.approx(0.38924, abs=1e-4)


def test_hiemenz_velocity(reference):
    _, p = _ref_profile(reference, 1.0, 1.0)
    assert p.at_xi(0.2) == pytest.approx(0.95838, abs=1e-3)


def test_profile_starts_exactly_at_wall(reference):
    rec, p = _ref_profile(reference, 0.5, 0.0)
    assert p[0] == ProfileSample(0.0, 0.0, 0.0, rec.alpha_ref["jaya"])
    assert p.eta[-1] == rec.eta_inf_ref


@pytest.mark.parametrize("beta", [0.0, 0.5, 1.0, 2.0])
def test_velocity_monotone_for_accelerating_flow(beta):
    # at a solved optimum; the six-digit published alpha overshoots slightly for beta=2
    p = solve((1.0, beta)).profile
    assert np.all(np.diff(p.fp) >= -1e-9)


def _bvp_alpha(beta0, beta, eta_inf=10.0):
    # collocation solve on [0, eta_inf] as an independent oracle for f''(0)
    def fun(eta, y):
        return np.vstack([y[1], y[2], -beta0 * y[0] * y[2] - beta * (1 - y[1] ** 2)])

    def bc(ya, yb):
        return np.array([ya[0], ya[1], yb[1] - 1.0])

    eta = np.linspace(0.0, eta_inf, 200)
    guess = np.vstack([eta - 1 + np.exp(-eta), 1 - np.exp(-eta), np.exp(-eta)])
    sol = solve_bvp(fun, bc, eta, guess, tol=1e-8, max_nodes=100000)
    assert sol.success
    return sol.sol(0.0)[2]


def test_blasius_wall_shear_classic_value():
    assert _bvp_alpha(0.5, 0.0) == pytest.approx(0.33206, abs=1e-5)


@pytest.mark.parametrize("beta0,beta", [(0.5, 0.0), (1.0, 1.0), (2.0, 1.0), (1.0, 0.5), (1.0, 0.0)])
def test_reference_alpha_agrees_with_collocation(reference, beta0, beta):
    rec = find(reference, beta0, beta)
    assert rec.alpha_ref["zhang"] == pytest.approx(_bvp_alpha(beta0, beta), abs=1e-4)


def test_reference_point_satisfies_far_field(reference):
    rec = find(reference, 0.5, 0.0)
    y = integrate(vector_field(rec.params), Grid(n_steps=2000),
                  initial_state(Candidate(rec.alpha_ref["jaya"], rec.eta_inf_ref))).final
    r1, r2 = boundary_residual(y)
    assert abs(r1) < 1e-5 and abs(r2) < 1e-5
