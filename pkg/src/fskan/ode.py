"""Fixed-step classical Runge-Kutta (RK4) integration.

The integrator is generic: ``rhs(t, y)`` returns the derivative of the state
vector ``y`` at coordinate ``t``. States are 1-D float64 numpy arrays.
"""

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

__all__ = [
    "Grid",
    "IntegrationError",
    "Solution",
    "Trajectory",
    "integrate",
    "rk4_step",
]

VectorField = Callable[[float, np.ndarray], np.ndarray]


class IntegrationError(ArithmeticError):
    """A stage or step produced a non-finite state.

    Attributes
    ----------
    t : float
        Coordinate of the step in which the failure was detected.
    components : tuple of int
        Indices of the non-finite state components.
    step : int or None
        Step index, filled in by :func:`integrate`.
    """

    def __init__(self, t, components, step=None, stage=None):
        self.t = t
        self.components = tuple(int(c) for c in components)
        self.step = step
        self.stage = stage
        where = f"t={t!r}"
        if step is not None:
            where = f"step {step}, " + where
        if stage is not None:
            where += f", stage k{stage}"
        super().__init__(
            f"non-finite state at {where} in components {list(self.components)}"
        )


@dataclass(frozen=True)
class Grid:
    """Uniform grid on ``[t0, t1]`` with ``n_steps`` steps."""

    t0: float = 0.0
    t1: float = 1.0
    n_steps: int = 1000

    def __post_init__(self):
        if not isinstance(self.n_steps, (int, np.integer)) or self.n_steps < 1:
            raise ValueError(f"n_steps must be a positive integer, got {self.n_steps!r}")
        if not (np.isfinite(self.t0) and np.isfinite(self.t1)):
            raise ValueError("grid end points must be finite")
        if not self.t0 < self.t1:
            raise ValueError(f"need t0 < t1, got t0={self.t0}, t1={self.t1}")

    @property
    def h(self):
        return (self.t1 - self.t0) / self.n_steps

    def coordinate(self, i):
        # index multiplication, never repeated addition; the end point is pinned
        if i == self.n_steps:
            return float(self.t1)
        return self.t0 + i * self.h

    def coordinates(self):
        t = self.t0 + np.arange(self.n_steps + 1) * self.h
        t[-1] = self.t1
        return t


class Trajectory(NamedTuple):
    t: np.ndarray  # (n_steps + 1,)
    y: np.ndarray  # (n_steps + 1, dim)


class Solution(NamedTuple):
    final: np.ndarray
    trajectory: Optional[Trajectory]


def _check(t, y, stage):
    bad = ~np.isfinite(y)
    if bad.any():
        raise IntegrationError(t, np.flatnonzero(bad), stage=stage)


def rk4_step(rhs: VectorField, t, y, h):
    """Advance ``y`` by one classical RK4 step of size ``h``.

    Raises
    ------
    IntegrationError
        If any stage or the updated state is not finite.
    """
    if not h > 0:
        raise ValueError(f"step size must be positive, got {h!r}")
    y = np.asarray(y, dtype=np.float64)
    with np.errstate(over="ignore", invalid="ignore"):
        return _rk4_stages(rhs, t, y, h)


def _rk4_stages(rhs, t, y, h):
    k1 = h * np.asarray(rhs(t, y), dtype=np.float64)
    _check(t, k1, 1)
    k2 = h * np.asarray(rhs(t + h / 2, y + k1 / 2), dtype=np.float64)
    _check(t, k2, 2)
    k3 = h * np.asarray(rhs(t + h / 2, y + k2 / 2), dtype=np.float64)
    _check(t, k3, 3)
    k4 = h * np.asarray(rhs(t + h, y + k3), dtype=np.float64)
    _check(t, k4, 4)

    y_next = y + (k1 + 2 * k2 + 2 * k3 + k4) / 6
    _check(t, y_next, None)
    return y_next


def integrate(rhs: VectorField, grid: Grid, y0, record=False):
    """Apply :func:`rk4_step` ``grid.n_steps`` times starting from ``y0``.

    With ``record=True`` the returned trajectory holds all ``n_steps + 1``
    samples, end points included.
    """
    y = np.array(y0, dtype=np.float64)
    if y.ndim != 1:
        raise ValueError("state must be a 1-D vector")
    if not np.all(np.isfinite(y)):
        raise IntegrationError(grid.t0, np.flatnonzero(~np.isfinite(y)), step=0)

    h = grid.h
    n = grid.n_steps
    samples = None
    if record:
        samples = np.empty((n + 1, y.size))
        samples[0] = y

    for i in range(n):
        t = grid.coordinate(i)
        try:
            y = rk4_step(rhs, t, y, h)
        except IntegrationError as err:
            raise IntegrationError(err.t, err.components, step=i, stage=err.stage) from None
        if record:
            samples[i + 1] = y

    trajectory = Trajectory(grid.coordinates(), samples) if record else None
    return Solution(y, trajectory)
