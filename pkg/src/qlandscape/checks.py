"""Randomized self-checks: finite-difference oracles and exact invariances.

These are the cross-validations behind the library's analytic kernels:
  * gradient: per-segment derivatives vs central differences;
  * hessian: the quadrature quadratic form vs second-order differences;
  * invariance: J is exactly unchanged when the transverse coupling is
    rotated, for targets commuting with sigma_z;
  * recentering: J is exactly unchanged by the traceless recentering.
Each check is seed-parametrized; the claims themselves are seed-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .canonical import ControlSystem, phase_shift_target, recenter_traceless
from .kernels import (
    build_hessian_grid,
    second_variation,
    segment_aligned_times,
    segment_gradient,
)
from .montecarlo import rotation_invariance_check
from .pauli import IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z, commutator_norm
from .propagation import PiecewiseControl, objective_of_control, propagate


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    worst_error: float
    tolerance: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] {self.name}: worst error {self.worst_error:.3e} "
            f"(tolerance {self.tolerance:.1e})"
        )


def random_hermitian_coeffs(rng: np.random.Generator) -> np.ndarray:
    c = rng.standard_normal(4)
    return c[0] * IDENTITY + c[1] * SIGMA_X + c[2] * SIGMA_Y + c[3] * SIGMA_Z


def random_system(rng: np.random.Generator) -> ControlSystem:
    """Random Pauli-coefficient (H0, V) with a safely nonzero commutator."""
    while True:
        H0 = random_hermitian_coeffs(rng)
        V = random_hermitian_coeffs(rng)
        if commutator_norm(H0, V) > 1e-2:
            return ControlSystem(H0, V)


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    """Haar-uniform U(2) via QR of a complex Gaussian matrix."""
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


@dataclass(frozen=True)
class RandomInstance:
    system: ControlSystem
    target: np.ndarray
    control: PiecewiseControl


def random_instance(rng: np.random.Generator, n_segments: int = 20) -> RandomInstance:
    sys = random_system(rng)
    W = random_unitary(rng)
    T = rng.uniform(0.1, math.pi)
    control = PiecewiseControl(T, rng.standard_normal(n_segments))
    return RandomInstance(system=sys, target=W, control=control)


def gradient_fd_errors(inst: RandomInstance, step: float = 1e-5) -> float:
    """Worst relative mismatch between analytic and central-FD gradients.

    Every segment indicator is used as a direction; the relative scale is
    the gradient's max magnitude on the instance.
    """
    analytic = segment_gradient(propagate(inst.system, inst.control), inst.target)
    amps = inst.control.amplitudes
    fd = np.empty_like(analytic)
    for i in range(amps.size):
        up = PiecewiseControl(inst.control.horizon, amps + step * np.eye(amps.size)[i])
        dn = PiecewiseControl(inst.control.horizon, amps - step * np.eye(amps.size)[i])
        fd[i] = (
            objective_of_control(inst.system, inst.target, up)
            - objective_of_control(inst.system, inst.target, dn)
        ) / (2.0 * step)
    scale = max(float(np.max(np.abs(analytic))), 1e-12)
    return float(np.max(np.abs(fd - analytic)) / scale)


def hessian_fd_error(
    inst: RandomInstance,
    rng: np.random.Generator,
    step: float = 1e-3,
    per_segment: int = 80,
) -> float:
    """Relative mismatch of the second variation vs central second differences.

    The probe direction is a random unit-L1 piecewise control on the same
    grid as the instance's control. The trapezoidal quadrature's O(M^-2)
    discretization error would dominate the comparison on instances where
    the form is small, so two grid levels are Richardson-extrapolated.
    """
    ctrl = inst.control
    g = rng.standard_normal(ctrl.n_segments)
    g = g / (ctrl.dt * np.sum(np.abs(g)))  # unit L1 norm
    direction = PiecewiseControl(ctrl.horizon, g)
    traj = propagate(inst.system, ctrl)
    levels = []
    for per in (per_segment // 2, per_segment):
        grid = build_hessian_grid(
            traj, inst.target, segment_aligned_times(ctrl, per)
        )
        levels.append(second_variation(grid, direction))
    analytic = (4.0 * levels[1] - levels[0]) / 3.0
    j0 = objective_of_control(inst.system, inst.target, ctrl)
    up = PiecewiseControl(ctrl.horizon, ctrl.amplitudes + step * g)
    dn = PiecewiseControl(ctrl.horizon, ctrl.amplitudes - step * g)
    fd = (
        objective_of_control(inst.system, inst.target, up)
        - 2.0 * j0
        + objective_of_control(inst.system, inst.target, dn)
    ) / step**2
    return abs(fd - analytic) / max(abs(analytic), abs(fd), 1e-12)


def run_gradient_check(seed: int = 0, n_instances: int = 50, tolerance: float = 1e-6) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_instances):
        worst = max(worst, gradient_fd_errors(random_instance(rng)))
    return CheckResult("gradient vs finite differences", worst <= tolerance, worst, tolerance)


def run_hessian_check(seed: int = 0, n_instances: int = 50, tolerance: float = 1e-4) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_instances):
        inst = random_instance(rng)
        worst = max(worst, hessian_fd_error(inst, rng))
    return CheckResult("hessian vs finite differences", worst <= tolerance, worst, tolerance)


def run_invariance_check(seed: int = 0, n_instances: int = 25, tolerance: float = 1e-10) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_instances):
        phi_w = rng.uniform(0.05, math.pi)
        T = rng.uniform(0.1, math.pi)
        control = PiecewiseControl(T, rng.standard_normal(40))
        a1, a2 = rng.uniform(0.0, 2.0 * math.pi, size=2)
        j1, j2 = rotation_invariance_check(phase_shift_target(phi_w), control, a1, a2)
        worst = max(worst, abs(j1 - j2))
    return CheckResult("rotation invariance of J", worst <= tolerance, worst, tolerance)


def run_recentering_check(seed: int = 0, n_instances: int = 25, tolerance: float = 1e-10) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_instances):
        inst = random_instance(rng)
        recentered, _, _ = recenter_traceless(inst.system)
        j_full = objective_of_control(inst.system, inst.target, inst.control)
        j_rec = objective_of_control(recentered, inst.target, inst.control)
        worst = max(worst, abs(j_full - j_rec))
    return CheckResult("recentering phase equivalence", worst <= tolerance, worst, tolerance)


def run_all_checks(seed: int = 0, tolerance_override: float | None = None) -> list:
    kwargs = {} if tolerance_override is None else {"tolerance": tolerance_override}
    return [
        run_gradient_check(seed, **kwargs),
        run_hessian_check(seed, **kwargs),
        run_invariance_check(seed, **kwargs),
        run_recentering_check(seed, **kwargs),
    ]


__all__ = [
    "CheckResult",
    "RandomInstance",
    "random_system",
    "random_unitary",
    "random_instance",
    "gradient_fd_errors",
    "hessian_fd_error",
    "run_gradient_check",
    "run_hessian_check",
    "run_invariance_check",
    "run_recentering_check",
    "run_all_checks",
]
