"""Gradient ascent over piecewise controls, for landscape corroboration.

Deliberately plain: steepest ascent on the midpoint-sampled gradient with
backtracking line search. In trap-free regimes local search from random
starts should reach the global objective value; any terminal point that is
critical but suboptimal would be a trap candidate worth inspecting.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .canonical import ControlSystem
from .kernels import gradient_profile
from .montecarlo import SamplingConfig, random_control
from .propagation import PiecewiseControl, objective, propagate


@dataclass(frozen=True)
class AscentConfig:
    step_size: float = 0.1
    max_iters: int = 1000
    grad_tolerance: float = 1e-8
    n_segments: int = 20
    seed: int = 0

    def __post_init__(self):
        if not (self.step_size > 0.0 and self.grad_tolerance > 0.0):
            raise ValueError("step_size and grad_tolerance must be positive")


@dataclass(frozen=True)
class AscentTrace:
    initial: PiecewiseControl
    final: PiecewiseControl
    j_history: list
    terminal_grad_norm: float
    converged: bool
    started_critical: bool

    @property
    def final_j(self) -> float:
        return self.j_history[-1]


@dataclass(frozen=True)
class MultistartSummary:
    best_j: float
    success_fraction: float
    runs: list = field(repr=False)

    def to_json_dict(self) -> dict:
        return {
            "best_j": self.best_j,
            "success_fraction": self.success_fraction,
            "runs": [
                {
                    "final_j": run.final_j,
                    "initial_j": run.j_history[0],
                    "iterations": len(run.j_history) - 1,
                    "terminal_grad_norm": run.terminal_grad_norm,
                    "converged": run.converged,
                    "started_critical": run.started_critical,
                }
                for run in self.runs
            ],
        }


_MAX_BACKTRACKS = 30


def gradient_ascent(
    sys: ControlSystem, W, T: float, init: PiecewiseControl, cfg: AscentConfig
) -> AscentTrace:
    """Monotone ascent of J from init; every accepted step increases J."""
    if abs(init.horizon - T) > 1e-12:
        raise ValueError("initial control horizon must equal T")
    f = init
    traj = propagate(sys, f)
    j = objective(W, traj.final)
    history = [j]
    mids = f.midpoints()
    grad = gradient_profile(traj, W, mids).values
    gnorm = float(np.max(np.abs(grad)))
    started_critical = gnorm < cfg.grad_tolerance
    converged = started_critical
    for _ in range(cfg.max_iters):
        if gnorm < cfg.grad_tolerance:
            converged = True
            break
        eta = cfg.step_size
        accepted = None
        for _ in range(_MAX_BACKTRACKS):
            candidate = PiecewiseControl(T, f.amplitudes + eta * grad)
            cand_traj = propagate(sys, candidate)
            cand_j = objective(W, cand_traj.final)
            if cand_j > j:
                accepted = (candidate, cand_traj, cand_j)
                break
            eta *= 0.5
        if accepted is None:
            break  # no ascent direction at float resolution
        f, traj, j = accepted
        history.append(j)
        grad = gradient_profile(traj, W, mids).values
        gnorm = float(np.max(np.abs(grad)))
    else:
        converged = gnorm < cfg.grad_tolerance
    if gnorm < cfg.grad_tolerance:
        converged = True
    return AscentTrace(
        initial=init,
        final=f,
        j_history=history,
        terminal_grad_norm=gnorm,
        converged=converged,
        started_critical=started_critical,
    )


def multistart(
    sys: ControlSystem, W, T: float, n_starts: int, cfg: AscentConfig
) -> MultistartSummary:
    """Run gradient_ascent from n_starts random initial controls."""
    if n_starts < 1:
        raise ValueError("n_starts must be >= 1")
    sampling = SamplingConfig(
        horizon=T, n_segments=cfg.n_segments, n_samples=n_starts, seed=cfg.seed
    )
    runs = []
    for k in range(n_starts):
        init = random_control(sampling, k)
        runs.append(gradient_ascent(sys, W, T, init, cfg))
    best = max(run.final_j for run in runs)
    success = sum(run.final_j > 1.0 - 1e-2 for run in runs) / n_starts
    return MultistartSummary(best_j=best, success_fraction=success, runs=runs)


__all__ = ["AscentConfig", "AscentTrace", "MultistartSummary", "gradient_ascent", "multistart"]
