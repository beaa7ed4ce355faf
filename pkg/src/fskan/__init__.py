"""Falkner-Skan boundary layers by RK4 shooting and population-based search.

The unknown wall shear ``alpha = f''(0)`` and truncation point ``eta_inf`` are
found by minimizing the terminal residual of a fixed-step RK4 integration,
using Jaya, particle swarm, a real-coded GA or Hyperband.
"""

from .ode import Grid, IntegrationError, integrate, rk4_step
from .optimizers import ALGORITHMS, OptimizerConfig, SearchBounds, optimize
from .problem import (
    Candidate,
    InvalidCandidateError,
    Profile,
    ProfileSample,
    WedgeParams,
    boundary_residual,
    initial_state,
    physical_profile,
    rhs,
)
from .shooting import DEFAULT_BOUNDS, SolveReport, fitness, fitness_batch, run_case_matrix, solve

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "Candidate",
    "DEFAULT_BOUNDS",
    "Grid",
    "IntegrationError",
    "InvalidCandidateError",
    "OptimizerConfig",
    "Profile",
    "ProfileSample",
    "SearchBounds",
    "SolveReport",
    "WedgeParams",
    "boundary_residual",
    "fitness",
    "fitness_batch",
    "initial_state",
    "integrate",
    "optimize",
    "physical_profile",
    "rhs",
    "rk4_step",
    "run_case_matrix",
    "solve",
]
