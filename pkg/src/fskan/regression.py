"""Regression of solved regimes against the packaged reference data."""

from typing import NamedTuple

import numpy as np

from .problem import Candidate
from .shooting import REPORT_STEPS, SEARCH_STEPS, profile_for, run_case_matrix

# per-algorithm tolerance on alpha against that algorithm's own published column
ALPHA_TOL = {"jaya": 1e-3, "pso": 5e-3, "ga": 5e-3, "hyperband": 2e-2}
VELOCITY_TOL = 1e-3


class Check(NamedTuple):
    regime: str
    quantity: str
    got: float
    want: float
    tol: float
    passed: bool


class RegressionReport(NamedTuple):
    checks: list
    cells: list

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]


def _regime(params):
    return f"beta0={params.beta0:g} beta={params.beta:g}"


def _check(regime, quantity, got, want, tol):
    passed = bool(np.isfinite(got) and abs(got - want) <= tol)
    return Check(regime, quantity, float(got), float(want), float(tol), passed)


def velocity_at_reference(alpha, record, n_steps=REPORT_STEPS):
    """Solved ``f'`` at the table's ``xi``, mapped through the record's ``eta_inf``.

    Tabulated velocities are indexed by ``xi = eta / eta_inf`` with the
    published ``eta_inf``. The residual hardly constrains ``eta_inf``, so a
    solve may land on a different value; the profile is therefore
    re-integrated with the solved ``alpha`` up to the published ``eta_inf``.
    """
    profile = profile_for(Candidate(alpha, record.eta_inf_ref), record.params, n_steps)
    return profile.at_xi(record.velocity_table.xi)


def regress(records, algorithm="jaya", config=None, n_steps=SEARCH_STEPS, *,
            alpha_tol=None, velocity_tol=VELOCITY_TOL, max_workers=None, **solve_kwargs):
    """Solve every record's regime and compare against its published values."""
    tol = ALPHA_TOL[algorithm] if alpha_tol is None else alpha_tol
    cells = run_case_matrix([r.params for r in records], [algorithm], config, n_steps,
                            max_workers=max_workers, record=False, **solve_kwargs)
    checks = []
    for record, cell in zip(records, cells):
        regime = _regime(record.params)
        if cell.report is None:
            checks.append(Check(regime, f"solve ({cell.error})", float("nan"), float("nan"), 0.0, False))
            continue
        alpha = cell.report.best.alpha
        checks.append(_check(regime, "alpha", alpha, record.alpha_ref[algorithm], tol))

        table = record.velocity_table
        if table is not None:
            got = velocity_at_reference(alpha, record)
            for xi, g, want in zip(table.xi, got, table.reference):
                checks.append(_check(regime, f"fp@xi={xi:g}", g, want, velocity_tol))
    return RegressionReport(checks, cells)
