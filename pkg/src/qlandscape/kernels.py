"""Analytic first and second variations of the gate fidelity.

With Y = W^dag U_T and V_t = U_t^dag V U_t, the gradient and the Hessian
kernel of J = |Tr(W^dag U_T)|^2 / 4 are

    dJ/df(t)        = Im(Tr Y^dag Tr(Y V_t)) / 2,
    d2J/df(t2)df(t1) = Re(Tr(Y V_t1) Tr(Y^dag V_t2)
                          - Tr(Y V_t2 V_t1) Tr Y^dag) / 2   for t2 >= t1,

with the arguments swapped for t2 < t1 (the kernel is symmetric). Both are
phase invariant under Y -> e^{i w} Y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pauli import check_unitary
from .propagation import PiecewiseControl, Trajectory, interaction_v

_DEGENERATE_ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class GradientProfile:
    """Samples of the gradient dJ/df(t) on a time grid."""

    times: np.ndarray
    values: np.ndarray

    @property
    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True)
class HessianGrid:
    """Symmetric samples of the Hessian kernel on a time grid.

    values[i, j] is the kernel at (times[i], times[j]); horizon records the
    underlying control interval so quadrature can validate its inputs.
    """

    times: np.ndarray
    values: np.ndarray
    horizon: float


@dataclass(frozen=True)
class YAngles:
    """Angles of Y = e^{iw} [[e^{i phi} cos th, e^{i psi} sin th],
                             [-e^{-i psi} sin th, e^{-i phi} cos th]]."""

    phi: float
    psi: float
    theta: float
    omega: float


def y_matrix(traj: Trajectory, W) -> np.ndarray:
    """Y = W^dag U_T."""
    return check_unitary(W).conj().T @ traj.final


def interaction_v_stack(traj: Trajectory, times) -> np.ndarray:
    """V_t for each time, stacked into shape (len(times), 2, 2)."""
    return np.stack([interaction_v(traj, float(t)) for t in np.asarray(times, float)])


def gradient_values(Y: np.ndarray, v_stack: np.ndarray) -> np.ndarray:
    """Gradient samples Im(Tr Y^dag Tr(Y V_t))/2 from precomputed V_t."""
    a = np.einsum("ij,tji->t", Y, v_stack)  # Tr(Y V_t)
    return 0.5 * np.imag(np.conj(np.trace(Y)) * a)


def gradient_profile(traj: Trajectory, W, grid) -> GradientProfile:
    """Sample the analytic gradient on the given time grid."""
    times = np.asarray(grid, dtype=float)
    Y = y_matrix(traj, W)
    values = gradient_values(Y, interaction_v_stack(traj, times))
    return GradientProfile(times=times, values=values)


def segment_gradient(traj: Trajectory, W, nodes_per_segment: int = 12) -> np.ndarray:
    """Exact derivative of J with respect to each segment amplitude.

    dJ/da_i = int over segment i of the gradient, evaluated with
    Gauss-Legendre quadrature per segment (the integrand is trigonometric,
    so a dozen nodes reach round-off accuracy for desk-scale segments).
    """
    ctrl = traj.control
    nodes, weights = np.polynomial.legendre.leggauss(nodes_per_segment)
    dt = ctrl.dt
    Y = y_matrix(traj, W)
    out = np.empty(ctrl.n_segments)
    for i in range(ctrl.n_segments):
        a, b = i * dt, (i + 1) * dt
        ts = 0.5 * (b - a) * nodes + 0.5 * (a + b)
        vals = gradient_values(Y, interaction_v_stack(traj, ts))
        out[i] = 0.5 * (b - a) * np.dot(weights, vals)
    return out


def hessian_kernel(traj: Trajectory, W, t1: float, t2: float) -> float:
    """Hessian kernel value at (t1, t2); symmetric by the case split."""
    if t2 < t1:
        t1, t2 = t2, t1
    Y = y_matrix(traj, W)
    v1 = interaction_v(traj, t1)
    v2 = interaction_v(traj, t2)
    tr_y = np.trace(Y)
    term = np.trace(Y @ v1) * np.conj(np.trace(Y @ v2))
    term -= np.trace(Y @ v2 @ v1) * np.conj(tr_y)
    return float(0.5 * term.real)


def build_hessian_grid(traj: Trajectory, W, times) -> HessianGrid:
    """Evaluate the Hessian kernel on a full grid (vectorized over pairs)."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 2 or np.any(np.diff(times) <= 0.0):
        raise ValueError("times must be strictly increasing with >= 2 points")
    Y = y_matrix(traj, W)
    v_stack = interaction_v_stack(traj, times)
    a = np.einsum("ij,tji->t", Y, v_stack)           # Tr(Y V_t)
    yv = np.einsum("ij,tjk->tik", Y, v_stack)        # Y V_t
    # P[b, a] = Tr(Y V_{t_b} V_{t_a})
    prod_tr = np.einsum("bik,aki->ba", yv, v_stack)
    tr_y = np.trace(Y)
    # Valid for t_j >= t_i (j is t2): K[i, j] = Re(a_i conj(a_j) - P[j, i] trY*)/2
    upper = 0.5 * np.real(np.outer(a, np.conj(a)) - prod_tr.T * np.conj(tr_y))
    values = np.triu(upper) + np.triu(upper, 1).T
    return HessianGrid(times=times, values=values, horizon=traj.horizon)


def segment_aligned_times(control: PiecewiseControl, per_segment: int) -> np.ndarray:
    """Uniform grid whose nodes include every segment boundary of the control."""
    n = control.n_segments * per_segment
    return np.linspace(0.0, control.horizon, n + 1)


def second_variation(grid: HessianGrid, perturbation: PiecewiseControl) -> float:
    """Quadratic form (g, Hess g) by trapezoidal quadrature on the grid.

    The perturbation is evaluated at quadrature-cell midpoints, so the grid
    should refine the perturbation's segment grid (segment_aligned_times
    builds such grids); a cell straddling a segment boundary would otherwise
    smear the jump.
    """
    if abs(grid.horizon - perturbation.horizon) > 1e-12:
        raise ValueError(
            f"horizon mismatch: grid on [0, {grid.horizon}], "
            f"perturbation on [0, {perturbation.horizon}]"
        )
    ts = grid.times
    widths = np.diff(ts)
    mids = 0.5 * (ts[:-1] + ts[1:])
    g_mid = np.array([perturbation.value_at(t) for t in mids])
    # Node weights of per-cell trapezoid with the (piecewise-constant)
    # perturbation factored out exactly.
    u = np.zeros(ts.size)
    u[:-1] += 0.5 * g_mid * widths
    u[1:] += 0.5 * g_mid * widths
    return float(u @ grid.values @ u)


def y_angles(Y) -> YAngles:
    """Extract the (phi, psi, theta, omega) parametrization of a unitary Y.

    Branch: theta in [0, pi/2]; omega = arg(det Y)/2 in (-pi/2, pi/2];
    phi and psi are principal arguments of the dephased entries, set to 0
    where the parametrization degenerates (cos theta = 0 or sin theta = 0).
    """
    Y = check_unitary(Y)
    theta = math.atan2(abs(Y[0, 1]), abs(Y[0, 0]))
    omega = 0.5 * np.angle(np.linalg.det(Y))
    Yt = np.exp(-1j * omega) * Y
    phi = float(np.angle(Yt[0, 0])) if math.cos(theta) > _DEGENERATE_ANGLE_TOL else 0.0
    psi = float(np.angle(Yt[0, 1])) if math.sin(theta) > _DEGENERATE_ANGLE_TOL else 0.0
    return YAngles(phi=phi, psi=psi, theta=theta, omega=float(omega))


def reconstruct_y(angles: YAngles) -> np.ndarray:
    """Inverse of y_angles."""
    c, s = math.cos(angles.theta), math.sin(angles.theta)
    core = np.array(
        [
            [np.exp(1j * angles.phi) * c, np.exp(1j * angles.psi) * s],
            [-np.exp(-1j * angles.psi) * s, np.exp(-1j * angles.phi) * c],
        ]
    )
    return np.exp(1j * angles.omega) * core


def l_functional(Y, X) -> float:
    """L(X) = Im(Tr Y^dag Tr(Y X)) / 2, the critical-point coefficient."""
    Y = np.asarray(Y, dtype=complex)
    X = np.asarray(X, dtype=complex)
    return float(0.5 * (np.conj(np.trace(Y)) * np.trace(Y @ X)).imag)


__all__ = [
    "GradientProfile",
    "HessianGrid",
    "YAngles",
    "y_matrix",
    "gradient_profile",
    "gradient_values",
    "interaction_v_stack",
    "segment_gradient",
    "hessian_kernel",
    "build_hessian_grid",
    "segment_aligned_times",
    "second_variation",
    "y_angles",
    "reconstruct_y",
    "l_functional",
]
