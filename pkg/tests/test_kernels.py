import math

import numpy as np
import pytest

from qlandscape.canonical import ControlSystem, phase_shift_target
from qlandscape.checks import (
    gradient_fd_errors,
    hessian_fd_error,
    random_instance,
    random_unitary,
)
from qlandscape.kernels import (
    build_hessian_grid,
    gradient_profile,
    hessian_kernel,
    l_functional,
    reconstruct_y,
    second_variation,
    segment_aligned_times,
    segment_gradient,
    y_angles,
    y_matrix,
)
from qlandscape.pauli import IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z
from qlandscape.propagation import PiecewiseControl, objective, propagate

CANONICAL = ControlSystem(SIGMA_Z, SIGMA_X)


def zero_trajectory(T, n=20):
    return propagate(CANONICAL, PiecewiseControl.constant(0.0, T, n))


class TestGradient:
    def test_vanishes_for_commuting_target(self):
        # Diagonal Y (sin theta = 0) kills the gradient identically.
        T = 1.3
        traj = zero_trajectory(T)
        prof = gradient_profile(traj, phase_shift_target(0.7), np.linspace(0.0, T, 50))
        assert prof.max_abs < 1e-14

    def test_vanishes_at_global_maximum(self):
        rng = np.random.default_rng(0)
        inst = random_instance(rng)
        traj = propagate(inst.system, inst.control)
        prof = gradient_profile(traj, traj.final, np.linspace(0.0, inst.control.horizon, 30))
        assert prof.max_abs < 1e-12

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(1)
        for _ in range(5):
            assert gradient_fd_errors(random_instance(rng)) < 1e-6

    def test_phase_invariance(self):
        rng = np.random.default_rng(2)
        inst = random_instance(rng)
        traj = propagate(inst.system, inst.control)
        grid = np.linspace(0.0, inst.control.horizon, 25)
        base = gradient_profile(traj, inst.target, grid).values
        shifted = gradient_profile(traj, inst.target * np.exp(-1.234j), grid).values
        assert np.max(np.abs(base - shifted)) < 1e-12

    def test_segment_gradient_integrates_profile(self):
        rng = np.random.default_rng(3)
        inst = random_instance(rng, n_segments=6)
        traj = propagate(inst.system, inst.control)
        seg = segment_gradient(traj, inst.target)
        # Dense midpoint-rule integral over each segment as a cross-check.
        dt = inst.control.dt
        for i in range(6):
            ts = i * dt + (np.arange(400) + 0.5) * dt / 400
            dense = np.sum(gradient_profile(traj, inst.target, ts).values) * dt / 400
            # Midpoint rule at 400 nodes carries ~1e-8 error of its own.
            assert abs(seg[i] - dense) < 1e-6


class TestHessianKernel:
    def test_commuting_diagonal_value(self):
        # phi_w + T = 2 pi makes phi = 0, so the kernel at t1 = t2 is -2 v^2.
        T = math.pi
        traj = zero_trajectory(T)
        W = phase_shift_target(math.pi)
        assert hessian_kernel(traj, W, 0.4, 0.4) == pytest.approx(-2.0, abs=1e-10)

    def test_commuting_closed_form(self):
        T, phi_w = 1.1, 0.6
        phi = -(phi_w + T)
        traj = zero_trajectory(T)
        W = phase_shift_target(phi_w)
        rng = np.random.default_rng(4)
        for _ in range(50):
            t1, t2 = rng.uniform(0.0, T, size=2)
            expected = -2.0 * math.cos(phi) * math.cos(2.0 * abs(t2 - t1) + phi)
            assert abs(hessian_kernel(traj, W, t1, t2) - expected) < 1e-10

    def test_symmetry(self):
        rng = np.random.default_rng(5)
        inst = random_instance(rng)
        traj = propagate(inst.system, inst.control)
        for _ in range(20):
            t1, t2 = rng.uniform(0.0, inst.control.horizon, size=2)
            a = hessian_kernel(traj, inst.target, t1, t2)
            b = hessian_kernel(traj, inst.target, t2, t1)
            assert a == b

    def test_grid_matches_pointwise_kernel(self):
        rng = np.random.default_rng(6)
        inst = random_instance(rng, n_segments=5)
        traj = propagate(inst.system, inst.control)
        times = segment_aligned_times(inst.control, 4)
        grid = build_hessian_grid(traj, inst.target, times)
        assert np.max(np.abs(grid.values - grid.values.T)) == 0.0
        for i in (0, 3, 11, 20):
            for j in (2, 7, 15):
                ref = hessian_kernel(traj, inst.target, times[i], times[j])
                assert abs(grid.values[i, j] - ref) < 1e-12

    def test_grid_rejects_bad_times(self):
        traj = zero_trajectory(1.0)
        with pytest.raises(ValueError):
            build_hessian_grid(traj, IDENTITY, np.array([0.0, 0.5, 0.4]))

    def test_phase_invariance(self):
        rng = np.random.default_rng(7)
        inst = random_instance(rng)
        traj = propagate(inst.system, inst.control)
        t1, t2 = 0.3 * inst.control.horizon, 0.8 * inst.control.horizon
        a = hessian_kernel(traj, inst.target, t1, t2)
        b = hessian_kernel(traj, inst.target * np.exp(0.77j), t1, t2)
        assert abs(a - b) < 1e-12


class TestSecondVariation:
    def test_zero_perturbation(self):
        traj = zero_trajectory(1.0)
        grid = build_hessian_grid(traj, phase_shift_target(0.5),
                                  segment_aligned_times(traj.control, 10))
        g = PiecewiseControl.constant(0.0, 1.0, 20)
        assert second_variation(grid, g) == 0.0

    def test_horizon_mismatch_rejected(self):
        traj = zero_trajectory(1.0)
        grid = build_hessian_grid(traj, phase_shift_target(0.5),
                                  segment_aligned_times(traj.control, 4))
        with pytest.raises(ValueError):
            second_variation(grid, PiecewiseControl.constant(1.0, 2.0, 4))

    def test_two_bump_limit_form(self):
        # Narrow two-bump perturbations approach -2 v^2 cos(phi) G(lam, mu).
        T, phi_w = 1.0, 0.7
        phi = -(phi_w + T)
        n = 400
        zero = PiecewiseControl.constant(0.0, T, n)
        traj = propagate(CANONICAL, zero)
        W = phase_shift_target(phi_w)
        grid = build_hessian_grid(traj, W, segment_aligned_times(zero, 2))
        dt = T / n
        i1, i2 = 100, 300
        s = (i2 - i1) * dt
        for lam, mu in [(1.0, 1.0), (1.0, -1.0), (0.5, 2.0)]:
            amps = np.zeros(n)
            amps[i1] = lam / dt
            amps[i2] = mu / dt
            realized = second_variation(grid, PiecewiseControl(T, amps))
            g = (lam**2 + mu**2) * math.cos(phi) + 2 * lam * mu * math.cos(2 * s + phi)
            expected = -2.0 * math.cos(phi) * g
            assert abs(realized - expected) < 0.05 * max(1.0, abs(expected))

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(8)
        for _ in range(3):
            assert hessian_fd_error(random_instance(rng), rng) < 1e-4


class TestTaylorRemainder:
    def test_cubic_order(self):
        # J[f + h g] - J[f] - h (grad, g) - h^2/2 (g, Hess g) = O(h^3).
        rng = np.random.default_rng(9)
        inst = random_instance(rng)
        f, sys, W = inst.control, inst.system, inst.target
        traj = propagate(sys, f)
        j0 = objective(W, traj.final)
        lin = segment_gradient(traj, W)
        grid = build_hessian_grid(traj, W, segment_aligned_times(f, 40))
        g_amps = rng.standard_normal(f.n_segments)
        g = PiecewiseControl(f.horizon, g_amps)
        quad = second_variation(grid, g)
        steps = np.array([0.1, 0.05, 0.025, 0.0125])
        remainders = []
        for h in steps:
            fh = PiecewiseControl(f.horizon, f.amplitudes + h * g_amps)
            jh = objective(W, propagate(sys, fh).final)
            remainders.append(abs(jh - j0 - h * lin @ g_amps - 0.5 * h**2 * quad))
        slope = np.polyfit(np.log(steps), np.log(np.maximum(remainders, 1e-300)), 1)[0]
        assert slope > 2.5


class TestYAngles:
    def test_identity(self):
        ang = y_angles(IDENTITY)
        assert (ang.phi, ang.theta, ang.omega) == (0.0, 0.0, 0.0)
        assert math.cos(ang.phi) ** 2 * math.cos(ang.theta) ** 2 == 1.0

    def test_diagonal_phase(self):
        alpha = 0.4
        Y = np.diag([np.exp(-1j * alpha), np.exp(1j * alpha)])
        ang = y_angles(Y)
        assert ang.phi == pytest.approx(-alpha, abs=1e-12)
        assert ang.theta == 0.0
        j = math.cos(ang.phi) ** 2 * math.cos(ang.theta) ** 2
        assert j == pytest.approx(math.cos(alpha) ** 2, abs=1e-12)

    def test_round_trip_and_trace_identity(self):
        rng = np.random.default_rng(10)
        for _ in range(100):
            Y = random_unitary(rng)
            ang = y_angles(Y)
            assert np.max(np.abs(reconstruct_y(ang) - Y)) < 1e-10
            j = (math.cos(ang.phi) * math.cos(ang.theta)) ** 2
            assert abs(j - abs(np.trace(Y)) ** 2 / 4.0) < 1e-10

    def test_objective_at_zero_control(self):
        # J[0] read off the angles of Y = W^dag U_T.
        rng = np.random.default_rng(11)
        T = 0.9
        traj = zero_trajectory(T)
        for _ in range(20):
            W = random_unitary(rng)
            ang = y_angles(y_matrix(traj, W))
            j = (math.cos(ang.phi) * math.cos(ang.theta)) ** 2
            assert abs(j - objective(W, traj.final)) < 1e-10


class TestLFunctional:
    def test_diagonal_y_x_coefficient(self):
        Y = np.diag([np.exp(0.3j), np.exp(-0.3j)])
        assert l_functional(Y, SIGMA_X) == 0.0

    def test_identity_y_traceless_x(self):
        assert l_functional(IDENTITY, SIGMA_X + 2 * SIGMA_Y - SIGMA_Z) == 0.0

    def test_matches_angle_formulas(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            Y = random_unitary(rng)
            ang = y_angles(Y)
            common = 2.0 * math.cos(ang.phi) * math.cos(ang.theta) * math.sin(ang.theta)
            lx = common * math.sin(ang.psi)
            ly = common * math.cos(ang.psi)
            assert abs(l_functional(Y, SIGMA_X) - lx) < 1e-10
            assert abs(l_functional(Y, SIGMA_Y) - ly) < 1e-10

    def test_phase_invariance(self):
        rng = np.random.default_rng(13)
        Y = random_unitary(rng)
        for X in (SIGMA_X, SIGMA_Y, SIGMA_Z):
            assert abs(l_functional(Y, X) - l_functional(np.exp(2.1j) * Y, X)) < 1e-12
