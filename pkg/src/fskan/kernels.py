"""Batched RK4 shooting kernels for the Falkner-Skan state.

Every fitness evaluation is one full integration over [0, 1], so this is
where the run time goes. Two implementations exist:

* ``terminal_state_numba``: scalar loops compiled with numba, one candidate at
  a time.
* ``terminal_state_numpy``: vectorised across candidates, python loop over
  steps.

Both reproduce the arithmetic of :func:`fskan.ode.rk4_step` applied to
:func:`fskan.problem.rhs` operation for operation, so all three routes agree
bit for bit. ``BACKEND`` selects the default path; it is ``"numpy"`` when
``FSKAN_DISABLE_NUMBA`` is set or numba is missing.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

BACKEND = "numba" if USE_NUMBA else "numpy"


@njit
def _terminal_loop(alpha, eta_inf, beta0, beta, n_steps, out):
    h = 1.0 / n_steps
    inf = np.inf
    for j in range(alpha.size):
        f1 = 0.0
        f2 = 0.0
        f3 = alpha[j]
        e = eta_inf[j]
        for _ in range(n_steps):
            k11 = h * (f2 * e)
            k12 = h * (f3 * e)
            k13 = h * (-beta0 * f1 * f3 * e - beta * (1.0 - f2 * f2) * e)

            g1 = f1 + k11 / 2
            g2 = f2 + k12 / 2
            g3 = f3 + k13 / 2
            k21 = h * (g2 * e)
            k22 = h * (g3 * e)
            k23 = h * (-beta0 * g1 * g3 * e - beta * (1.0 - g2 * g2) * e)

            g1 = f1 + k21 / 2
            g2 = f2 + k22 / 2
            g3 = f3 + k23 / 2
            k31 = h * (g2 * e)
            k32 = h * (g3 * e)
            k33 = h * (-beta0 * g1 * g3 * e - beta * (1.0 - g2 * g2) * e)

            g1 = f1 + k31
            g2 = f2 + k32
            g3 = f3 + k33
            k41 = h * (g2 * e)
            k42 = h * (g3 * e)
            k43 = h * (-beta0 * g1 * g3 * e - beta * (1.0 - g2 * g2) * e)

            f1 = f1 + (k11 + 2 * k21 + 2 * k31 + k41) / 6
            f2 = f2 + (k12 + 2 * k22 + 2 * k32 + k42) / 6
            f3 = f3 + (k13 + 2 * k23 + 2 * k33 + k43) / 6
            if not (abs(f1) + abs(f2) + abs(f3) < inf):
                f1 = np.nan
                f2 = np.nan
                f3 = np.nan
                break
        out[j, 0] = f1
        out[j, 1] = f2
        out[j, 2] = f3
        out[j, 3] = e


def _prepare(alpha, eta_inf, n_steps):
    alpha = np.ascontiguousarray(np.atleast_1d(alpha), dtype=np.float64)
    eta_inf = np.ascontiguousarray(np.atleast_1d(eta_inf), dtype=np.float64)
    alpha, eta_inf = np.broadcast_arrays(alpha, eta_inf)
    n_steps = int(n_steps)
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps}")
    return np.ascontiguousarray(alpha), np.ascontiguousarray(eta_inf), n_steps


def terminal_state_numba(alpha, eta_inf, beta0, beta, n_steps):
    alpha, eta_inf, n_steps = _prepare(alpha, eta_inf, n_steps)
    out = np.empty((alpha.size, 4))
    _terminal_loop(alpha, eta_inf, float(beta0), float(beta), n_steps, out)
    return out


def terminal_state_numpy(alpha, eta_inf, beta0, beta, n_steps):
    alpha, eta_inf, n_steps = _prepare(alpha, eta_inf, n_steps)
    b0 = float(beta0)
    b = float(beta)
    h = 1.0 / n_steps
    e = eta_inf
    f1 = np.zeros_like(alpha)
    f2 = np.zeros_like(alpha)
    f3 = alpha.copy()

    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(n_steps):
            k11 = h * (f2 * e)
            k12 = h * (f3 * e)
            k13 = h * (-b0 * f1 * f3 * e - b * (1.0 - f2 * f2) * e)

            g1 = f1 + k11 / 2
            g2 = f2 + k12 / 2
            g3 = f3 + k13 / 2
            k21 = h * (g2 * e)
            k22 = h * (g3 * e)
            k23 = h * (-b0 * g1 * g3 * e - b * (1.0 - g2 * g2) * e)

            g1 = f1 + k21 / 2
            g2 = f2 + k22 / 2
            g3 = f3 + k23 / 2
            k31 = h * (g2 * e)
            k32 = h * (g3 * e)
            k33 = h * (-b0 * g1 * g3 * e - b * (1.0 - g2 * g2) * e)

            g1 = f1 + k31
            g2 = f2 + k32
            g3 = f3 + k33
            k41 = h * (g2 * e)
            k42 = h * (g3 * e)
            k43 = h * (-b0 * g1 * g3 * e - b * (1.0 - g2 * g2) * e)

            f1 = f1 + (k11 + 2 * k21 + 2 * k31 + k41) / 6
            f2 = f2 + (k12 + 2 * k22 + 2 * k32 + k42) / 6
            f3 = f3 + (k13 + 2 * k23 + 2 * k33 + k43) / 6

    out = np.stack([f1, f2, f3, e.copy()], axis=1)
    bad = ~np.isfinite(out[:, :3]).all(axis=1)
    out[bad, :3] = np.nan
    return out


def terminal_state(alpha, eta_inf, beta0, beta, n_steps, backend=None):
    """State at ``xi = 1`` for each ``(alpha, eta_inf)`` pair.

    Returns an ``(n, 4)`` array. Rows whose integration left the finite
    range hold NaN in the first three columns.
    """
    backend = backend or BACKEND
    if backend == "numba":
        return terminal_state_numba(alpha, eta_inf, beta0, beta, n_steps)
    if backend == "numpy":
        return terminal_state_numpy(alpha, eta_inf, beta0, beta, n_steps)
    raise ValueError(f"unknown backend {backend!r}")


def residual_norm(alpha, eta_inf, beta0, beta, n_steps, backend=None):
    """Euclidean norm of ``(f2(1) - 1, f3(1))``; ``inf`` where integration failed."""
    y = terminal_state(alpha, eta_inf, beta0, beta, n_steps, backend)
    with np.errstate(invalid="ignore", over="ignore"):
        r = np.hypot(y[:, 1] - 1.0, y[:, 2])
    r[~np.isfinite(r)] = np.inf
    return r
