"""Hyperband over a continuous box, with fidelity as the resource.

A single sweep (:func:`hyperband_run`) follows the standard bracket schedule:

    s_max = floor(log_eta R),  B = (s_max + 1) R
    for s = s_max .. 0:
        n = ceil(B / R * eta^s / (s + 1)),  r = R eta^-s
        sample n configurations uniformly in the box
        for i = 0 .. s:
            n_i = floor(n eta^-i),  r_i = r eta^i
            evaluate every survivor at resource r_i
            keep the floor(n_i / eta) best

and returns the configuration with the lowest loss among those evaluated at
full resource ``R``.

The objective is called as ``objective(X, fidelity)`` with
``fidelity = (r - 1) / (R - 1)`` in [0, 1] (1 when ``R == 1``), so callers
decide what a unit of resource means.

:func:`run` repeats sweeps for ``max_iterations`` iterations. Sweep 0 samples
the full bounds; sweep ``k`` samples a box of width ``shrink**k`` times the
bound width, centred on the incumbent and shifted to stay inside the bounds.
Without that zoom, uniform sampling cannot resolve a 2-D minimum beyond the
sample spacing.
"""

from typing import NamedTuple

import numpy as np

from .base import ConvergenceHistory, OptimizationResult, SearchBounds, evaluate, make_rng


class Bracket(NamedTuple):
    s: int
    n: int
    r: float


class SweepResult(NamedTuple):
    x: np.ndarray
    loss: float
    n_evaluations: int
    n_full: int


def max_bracket(R, eta):
    """``floor(log_eta R)`` computed in integers."""
    s = 0
    while eta ** (s + 1) <= R:
        s += 1
    return s


def brackets(R, eta):
    s_max = max_bracket(R, eta)
    out = []
    for s in range(s_max, -1, -1):
        # B / R * eta^s / (s + 1) == (s_max + 1) eta^s / (s + 1), kept exact
        n = -(-((s_max + 1) * eta**s) // (s + 1))
        out.append(Bracket(s, int(n), R / eta**s))
    return out


def rungs(bracket, eta):
    """``(n_i, r_i)`` for ``i = 0 .. s``."""
    return [(bracket.n // eta**i, bracket.r * eta**i) for i in range(bracket.s + 1)]


def _fidelity(r, R):
    if R <= 1:
        return 1.0
    return min(1.0, max(0.0, (r - 1.0) / (R - 1.0)))


def hyperband_run(objective_at_fidelity, bounds, R, eta, rng, box=None):
    """One full Hyperband sweep; returns a :class:`SweepResult`.

    ``box`` restricts sampling to a sub-box of ``bounds`` (defaults to the
    bounds themselves).
    """
    box = box or bounds
    best_x = None
    best_loss = np.inf
    n_eval = 0
    n_full = 0

    for bracket in brackets(R, eta):
        configs = box.sample(rng, bracket.n)
        for n_i, r_i in rungs(bracket, eta):
            if configs.shape[0] == 0:
                break
            full = r_i >= R * (1 - 1e-12)
            losses = evaluate(lambda X: objective_at_fidelity(X, 1.0 if full else _fidelity(r_i, R)), configs)
            n_eval += configs.shape[0]
            if full:
                n_full += configs.shape[0]
                j = int(np.argmin(losses))
                if losses[j] < best_loss or best_x is None:
                    best_loss = float(losses[j])
                    best_x = configs[j].copy()
            keep = n_i // eta
            order = np.argsort(losses, kind="stable")[:keep]
            configs = configs[order]

    return SweepResult(best_x, best_loss, n_eval, n_full)


def zoom_box(bounds, center, fraction):
    """Box of ``fraction`` times the bound width around ``center``, inside ``bounds``."""
    if fraction >= 1.0:
        return bounds
    half = 0.5 * fraction * bounds.width
    lo = np.clip(center - half, bounds.lo, bounds.hi - 2 * half)
    hi = lo + 2 * half
    return SearchBounds(lo, np.minimum(hi, bounds.hi))


def run(objective_at_fidelity, bounds, config):
    hb = config.hyperband
    rng = make_rng(config.seed)
    history = ConvergenceHistory()
    best_x = None
    best_loss = np.inf
    n_eval = 0

    for k in range(config.max_iterations):
        box = bounds if best_x is None else zoom_box(bounds, best_x, hb.shrink**k)
        sweep = hyperband_run(objective_at_fidelity, bounds, hb.R, hb.halving_factor, rng, box)
        n_eval += sweep.n_evaluations
        if best_x is None or sweep.loss < best_loss:
            best_x, best_loss = sweep.x, sweep.loss
        history.append(k + 1, best_loss, best_x)

    return OptimizationResult(best_x.copy(), float(best_loss), history, n_eval)


__all__ = ["Bracket", "SweepResult", "brackets", "hyperband_run", "max_bracket", "rungs", "run", "zoom_box"]
