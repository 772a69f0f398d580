import math

import numpy as np
import pytest

from qlandscape.canonical import ControlSystem, HADAMARD
from qlandscape.checks import random_system, random_unitary
from qlandscape.pauli import (
    IDENTITY,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    expm_hermitian,
    operator_norm,
    unitarity_defect,
)
from qlandscape.propagation import (
    PiecewiseControl,
    constant_shift,
    interaction_v,
    objective,
    objective_of_control,
    propagate,
)

CANONICAL = ControlSystem(SIGMA_Z, SIGMA_X)


class TestPiecewiseControl:
    def test_grid_quantities(self):
        f = PiecewiseControl(2.0, np.array([1.0, -3.0, 2.0, 0.0]))
        assert f.n_segments == 4
        assert f.dt == 0.5
        assert f.l1_norm == pytest.approx(3.0)
        assert f.value_at(0.0) == 1.0
        assert f.value_at(0.5) == -3.0
        assert f.value_at(2.0) == 0.0  # right endpoint belongs to the last segment

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            PiecewiseControl(0.0, np.array([1.0]))
        with pytest.raises(ValueError):
            PiecewiseControl(1.0, np.array([]))
        with pytest.raises(ValueError):
            PiecewiseControl(1.0, np.array([np.inf]))
        with pytest.raises(ValueError):
            PiecewiseControl(1.0, np.array([1.0])).value_at(1.5)

    def test_constant_and_shift(self):
        f = PiecewiseControl.constant(2.0, 1.0, n_segments=5)
        assert np.all(f.amplitudes == 2.0)
        g = constant_shift(f, -0.5)
        assert np.all(g.amplitudes == 1.5)
        assert g.horizon == f.horizon


class TestPropagate:
    def test_drift_full_rotation(self):
        f = PiecewiseControl.constant(0.0, math.pi, n_segments=7)
        traj = propagate(CANONICAL, f)
        assert np.max(np.abs(traj.final + IDENTITY)) < 1e-12

    def test_drift_partial_rotation(self):
        f = PiecewiseControl.constant(0.0, math.pi / 3, n_segments=5)
        traj = propagate(CANONICAL, f)
        expected = np.diag([np.exp(-1j * math.pi / 3), np.exp(1j * math.pi / 3)])
        assert np.max(np.abs(traj.final - expected)) < 1e-12

    def test_single_segment_reduction(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            sys = random_system(rng)
            a, T = rng.standard_normal(), rng.uniform(0.1, math.pi)
            traj = propagate(sys, PiecewiseControl(T, np.array([a])))
            expected = expm_hermitian(sys.H0 + a * sys.V, T)
            assert np.max(np.abs(traj.final - expected)) < 1e-12

    def test_unitarity_for_large_amplitudes(self):
        rng = np.random.default_rng(2)
        f = PiecewiseControl(3.0, 100.0 * rng.standard_normal(50))
        traj = propagate(CANONICAL, f)
        assert all(unitarity_defect(U) < 1e-10 for U in traj.unitaries)

    def test_refinement_consistency(self):
        rng = np.random.default_rng(3)
        amps = rng.standard_normal(10)
        f = PiecewiseControl(1.7, amps)
        f2 = PiecewiseControl(1.7, np.repeat(amps, 2))
        u1 = propagate(CANONICAL, f).final
        u2 = propagate(CANONICAL, f2).final
        assert np.max(np.abs(u1 - u2)) < 1e-12

    def test_concatenation(self):
        rng = np.random.default_rng(4)
        amps = rng.standard_normal(8)
        full = propagate(CANONICAL, PiecewiseControl(2.0, amps)).final
        first = propagate(CANONICAL, PiecewiseControl(1.0, amps[:4])).final
        second = propagate(CANONICAL, PiecewiseControl(1.0, amps[4:])).final
        assert np.max(np.abs(second @ first - full)) < 1e-12

    def test_step_recurrence(self):
        rng = np.random.default_rng(5)
        sys = random_system(rng)
        f = PiecewiseControl(1.3, rng.standard_normal(6))
        traj = propagate(sys, f)
        assert np.array_equal(traj.unitaries[0], IDENTITY)
        for i, a in enumerate(f.amplitudes):
            step = expm_hermitian(sys.H0 + a * sys.V, f.dt)
            err = np.max(np.abs(traj.unitaries[i + 1] - step @ traj.unitaries[i]))
            assert err < 1e-10

    def test_unitary_at_interior_times(self):
        rng = np.random.default_rng(6)
        sys = random_system(rng)
        f = PiecewiseControl(1.0, rng.standard_normal(4))
        traj = propagate(sys, f)
        # Exact at boundaries and inside segments via the residual exponential.
        for t in (0.0, 0.25, 0.3, 0.77, 1.0):
            dense = propagate(sys, PiecewiseControl(t, _restrict(f, t))).final if t > 0 else IDENTITY
            assert np.max(np.abs(traj.unitary_at(t) - dense)) < 1e-12
        with pytest.raises(ValueError):
            traj.unitary_at(1.5)


def _restrict(f, t):
    """Amplitudes of f on [0, t] on a 0.01-wide uniform grid.

    Exact (not approximate) when t and all boundaries of f are multiples of
    0.01, because each cell then lies inside a single segment of f.
    """
    n = int(round(t * 100))
    return np.array([f.value_at((k + 0.5) * t / n) for k in range(n)])


class TestInteractionV:
    def test_zero_control_closed_form(self):
        # Transverse coupling rotates as v cos(2t - phi) sx - v sin(2t - phi) sy.
        sys = ControlSystem(SIGMA_Z, 2 * SIGMA_X + SIGMA_Y)
        v, phi = math.sqrt(5.0), math.atan2(1.0, 2.0)
        f = PiecewiseControl.constant(0.0, 1.5, n_segments=10)
        traj = propagate(sys, f)
        for t in np.linspace(0.0, 1.5, 13):
            expected = v * math.cos(2 * t - phi) * SIGMA_X - v * math.sin(2 * t - phi) * SIGMA_Y
            assert np.max(np.abs(interaction_v(traj, t) - expected)) < 1e-10

    def test_initial_time(self):
        traj = propagate(CANONICAL, PiecewiseControl.constant(0.3, 1.0, 4))
        assert np.max(np.abs(interaction_v(traj, 0.0) - SIGMA_X)) < 1e-14

    def test_half_period(self):
        traj = propagate(CANONICAL, PiecewiseControl.constant(0.0, math.pi, 6))
        assert np.max(np.abs(interaction_v(traj, math.pi / 2) + SIGMA_X)) < 1e-12

    def test_norm_preserved(self):
        rng = np.random.default_rng(7)
        sys = random_system(rng)
        traj = propagate(sys, PiecewiseControl(1.0, rng.standard_normal(8)))
        base = operator_norm(sys.V)
        for t in rng.uniform(0.0, 1.0, size=10):
            assert abs(operator_norm(interaction_v(traj, t)) - base) < 1e-10

    def test_out_of_range_rejected(self):
        traj = propagate(CANONICAL, PiecewiseControl.constant(0.0, 1.0, 2))
        with pytest.raises(ValueError):
            interaction_v(traj, -0.1)


class TestObjective:
    def test_perfect_gate(self):
        rng = np.random.default_rng(8)
        U = random_unitary(rng)
        assert objective(U, U) == pytest.approx(1.0, abs=1e-12)

    def test_hadamard_against_drift(self):
        U = expm_hermitian(SIGMA_Z, math.pi / 3)
        assert objective(HADAMARD, U) == pytest.approx(0.375, abs=1e-12)

    def test_traceless_mismatch(self):
        assert objective(SIGMA_X, IDENTITY) == 0.0

    def test_bounds_and_phase(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            W, U = random_unitary(rng), random_unitary(rng)
            j = objective(W, U)
            assert 0.0 <= j <= 1.0 + 1e-12
            omega = rng.uniform(0.0, 2 * math.pi)
            assert objective(W, W * np.exp(1j * omega)) == pytest.approx(1.0, abs=1e-12)

    def test_objective_of_control(self):
        f = PiecewiseControl.constant(0.0, math.pi / 3, 3)
        assert objective_of_control(CANONICAL, HADAMARD, f) == pytest.approx(0.375, abs=1e-12)
