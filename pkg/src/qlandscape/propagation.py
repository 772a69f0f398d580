"""Exact piecewise-constant time evolution of the controlled qubit.

Controls are uniform piecewise-constant functions on [0, T]. Each segment is
propagated with the closed-form 2x2 exponential, so unitarity holds to
round-off for any segment count and amplitude magnitude; there is no
integrator tolerance anywhere in the stack.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .canonical import ControlSystem
from .pauli import check_hermitian, check_unitary, expm_hermitian, IDENTITY


@dataclass(frozen=True)
class PiecewiseControl:
    """f(t) = amplitudes[i] on [(i-1) T/N, i T/N), i = 1..N."""

    horizon: float
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=float)
        if amps.ndim != 1 or amps.size < 1:
            raise ValueError("amplitudes must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        if not (self.horizon > 0.0):
            raise ValueError(f"horizon must be positive, got {self.horizon}")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_segments(self) -> int:
        return self.amplitudes.size

    @property
    def dt(self) -> float:
        return self.horizon / self.n_segments

    @property
    def l1_norm(self) -> float:
        return float(self.dt * np.sum(np.abs(self.amplitudes)))

    def value_at(self, t: float) -> float:
        """Amplitude of the segment containing t (right-continuous)."""
        if t < 0.0 or t > self.horizon:
            raise ValueError(f"t={t} outside [0, {self.horizon}]")
        i = min(int(t / self.dt), self.n_segments - 1)
        return float(self.amplitudes[i])

    def midpoints(self) -> np.ndarray:
        return (np.arange(self.n_segments) + 0.5) * self.dt

    def boundaries(self) -> np.ndarray:
        return np.linspace(0.0, self.horizon, self.n_segments + 1)

    @staticmethod
    def constant(value: float, horizon: float, n_segments: int = 1) -> "PiecewiseControl":
        return PiecewiseControl(horizon, np.full(n_segments, float(value)))


def constant_shift(control: PiecewiseControl, offset: float) -> PiecewiseControl:
    """The control f + offset on the same grid."""
    return PiecewiseControl(control.horizon, control.amplitudes + offset)


@dataclass(frozen=True)
class Trajectory:
    """Unitaries at the segment boundaries of a piecewise evolution.

    unitaries[i] is U at time i*dt with unitaries[0] = I and
    unitaries[i+1] = expm(-i (H0 + a_{i+1} V) dt) @ unitaries[i].
    """

    system: ControlSystem
    control: PiecewiseControl
    unitaries: list = field(repr=False)

    @property
    def horizon(self) -> float:
        return self.control.horizon

    @property
    def final(self) -> np.ndarray:
        return self.unitaries[-1]

    def unitary_at(self, t: float) -> np.ndarray:
        """Exact U_t for arbitrary t in [0, T].

        Uses the stored boundary unitary below t plus the closed-form
        residual exponential within the segment, so the result is exact
        without a dense trajectory.
        """
        ctrl = self.control
        if t < 0.0 or t > ctrl.horizon:
            raise ValueError(f"t={t} outside [0, {ctrl.horizon}]")
        i = min(int(t / ctrl.dt), ctrl.n_segments - 1)
        residual = t - i * ctrl.dt
        U = self.unitaries[i]
        if residual == 0.0:
            return U
        H = self.system.H0 + ctrl.amplitudes[i] * self.system.V
        return expm_hermitian(H, residual) @ U


def propagate(sys: ControlSystem, f: PiecewiseControl) -> Trajectory:
    """Solve i dU/dt = (H0 + f(t) V) U exactly on the control's grid."""
    dt = f.dt
    unitaries = [IDENTITY.copy()]
    U = IDENTITY
    for a in f.amplitudes:
        U = expm_hermitian(sys.H0 + a * sys.V, dt) @ U
        unitaries.append(U)
    return Trajectory(system=sys, control=f, unitaries=unitaries)


def interaction_v(traj: Trajectory, t: float) -> np.ndarray:
    """Interaction-picture operator V_t = U_t^dag V U_t (Hermitian)."""
    U = traj.unitary_at(t)
    return U.conj().T @ traj.system.V @ U


def objective(W, U_T) -> float:
    """Gate fidelity J = |Tr(W^dag U_T)|^2 / 4, in [0, 1]."""
    W = check_unitary(W)
    U_T = check_unitary(U_T)
    tr = np.trace(W.conj().T @ U_T)
    return float(abs(tr) ** 2 / 4.0)


def objective_of_control(sys: ControlSystem, W, f: PiecewiseControl) -> float:
    return objective(W, propagate(sys, f).final)


__all__ = [
    "PiecewiseControl",
    "Trajectory",
    "constant_shift",
    "propagate",
    "interaction_v",
    "objective",
    "objective_of_control",
]
