"""The Falkner-Skan free-boundary problem on the unit interval.

The third-order equation

    f''' + beta0 * f * f'' + beta * (1 - f'^2) = 0,   f(0) = f'(0) = 0,
    f'(eta) -> 1 as eta -> inf

is truncated at an unknown ``eta_inf`` and mapped to ``xi = eta / eta_inf``
in [0, 1]. The state ``(f1, f2, f3, f4) = (f, f', f'', eta_inf)`` then obeys

    f1' = f2 f4,  f2' = f3 f4,  f3' = -beta0 f1 f3 f4 - beta (1 - f2^2) f4,
    f4' = 0

with derivatives taken in ``xi``. Shooting starts from ``(0, 0, alpha, eta_inf)``
and the terminal conditions are ``f2(1) = 1`` and ``f3(1) = 0``.

Decelerating flows with ``beta`` below about -0.1988 have no attached
solution; such inputs are accepted here and simply never reach a small
residual.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "Candidate",
    "InvalidCandidateError",
    "Profile",
    "ProfileSample",
    "WedgeParams",
    "boundary_residual",
    "initial_state",
    "physical_profile",
    "rhs",
    "vector_field",
]


class InvalidCandidateError(ValueError):
    pass


class WedgeParams(NamedTuple):
    """Flow regime. ``beta * pi`` is the wedge angle."""

    beta0: float
    beta: float


class Candidate(NamedTuple):
    """Unknown wall shear ``alpha = f''(0)`` and truncated boundary ``eta_inf``."""

    alpha: float
    eta_inf: float


class ProfileSample(NamedTuple):
    eta: float
    f: float
    fp: float
    fpp: float


def rhs(y, params):
    """Derivative of the reduced state with respect to ``xi``."""
    b0, b = params
    f1, f2, f3, f4 = y[0], y[1], y[2], y[3]
    # operation order is mirrored in fskan.kernels; keep the two in sync
    return np.array(
        [
            f2 * f4,
            f3 * f4,
            -b0 * f1 * f3 * f4 - b * (1.0 - f2 * f2) * f4,
            0.0,
        ]
    )


def vector_field(params):
    """``rhs`` bound to a regime, in the ``(t, y)`` form used by :mod:`fskan.ode`."""
    params = WedgeParams(float(params[0]), float(params[1]))

    def field(t, y):
        return rhs(y, params)

    return field


def initial_state(candidate):
    alpha, eta_inf = float(candidate[0]), float(candidate[1])
    if not (np.isfinite(alpha) and np.isfinite(eta_inf)):
        raise InvalidCandidateError(f"candidate must be finite, got {tuple(candidate)}")
    if eta_inf <= 0:
        raise InvalidCandidateError(f"eta_inf must be positive, got {eta_inf}")
    return np.array([0.0, 0.0, alpha, eta_inf])


def boundary_residual(y_final):
    """Signed terminal residuals ``(f2(1) - 1, f3(1))``."""
    return float(y_final[1]) - 1.0, float(y_final[2])


@dataclass(frozen=True)
class Profile:
    """Solution sampled on the integration grid, in physical coordinates."""

    xi: np.ndarray
    eta: np.ndarray
    f: np.ndarray
    fp: np.ndarray
    fpp: np.ndarray

    @classmethod
    def empty(cls):
        z = np.empty(0)
        return cls(z, z, z, z, z)

    def __len__(self):
        return self.eta.size

    def __getitem__(self, i):
        return ProfileSample(
            float(self.eta[i]), float(self.f[i]), float(self.fp[i]), float(self.fpp[i])
        )

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def samples(self):
        return list(self)

    def at_xi(self, xi):
        """Velocity ``f'`` interpolated at computational coordinates ``xi``."""
        return np.interp(xi, self.xi, self.fp)


def physical_profile(trajectory, candidate):
    """Map a recorded trajectory back to ``eta = xi * eta_inf``.

    ``eta_inf`` is taken from the candidate rather than from the carried
    fourth state component.
    """
    xi, states = trajectory
    xi = np.asarray(xi, dtype=np.float64)
    states = np.asarray(states, dtype=np.float64)
    eta_inf = float(candidate[1])
    return Profile(
        xi=xi.copy(),
        eta=xi * eta_inf,
        f=states[:, 0].copy(),
        fp=states[:, 1].copy(),
        fpp=states[:, 2].copy(),
    )
