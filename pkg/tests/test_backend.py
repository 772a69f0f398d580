import os
import subprocess
import sys

import numpy as np
import pytest

from qlandscape import _su2_numpy
from qlandscape.backend import backend_name
from qlandscape.canonical import ControlSystem
from qlandscape.pauli import SIGMA_X, SIGMA_Y, SIGMA_Z, unitarity_defect
from qlandscape.propagation import PiecewiseControl, propagate

try:
    from qlandscape import _su2_cy
except ImportError:
    _su2_cy = None

needs_extension = pytest.mark.skipif(_su2_cy is None, reason="compiled kernel not built")


def random_batch(rng, m=64, n=50):
    return (rng.standard_normal((m, n)), 0.4 * rng.standard_normal((m, n)),
            np.ones((m, n)) + 0.1 * rng.standard_normal((m, n)))


class TestNumpyKernel:
    def test_matches_generic_propagator(self):
        rng = np.random.default_rng(0)
        amps = rng.standard_normal(40)
        T = 1.3
        # Canonical-style system: hx = a, hy = 0.4 a, hz = 1.
        sys = ControlSystem(SIGMA_Z, SIGMA_X + 0.4 * SIGMA_Y)
        u_ref = propagate(sys, PiecewiseControl(T, amps)).final
        u = _su2_numpy.propagate_pauli_batch(
            amps[None, :], 0.4 * amps[None, :], np.ones((1, amps.size)), T / amps.size
        )[0]
        assert np.max(np.abs(u - u_ref)) < 1e-12

    def test_unitarity(self):
        rng = np.random.default_rng(1)
        hx, hy, hz = random_batch(rng)
        u = _su2_numpy.propagate_pauli_batch(hx, hy, hz, 0.02)
        assert max(unitarity_defect(u[m]) for m in range(u.shape[0])) < 1e-12

    def test_zero_field_rows(self):
        # |a| = 0 rows must hit the sinc limit without dividing by zero.
        z = np.zeros((3, 10))
        u = _su2_numpy.propagate_pauli_batch(z, z, z, 0.1)
        assert np.max(np.abs(u - np.eye(2))) < 1e-14


@needs_extension
class TestCompiledKernel:
    def test_agrees_with_numpy(self):
        rng = np.random.default_rng(2)
        hx, hy, hz = random_batch(rng, m=200, n=80)
        dt = 0.031
        u_np = _su2_numpy.propagate_pauli_batch(hx, hy, hz, dt)
        u_cy = _su2_cy.propagate_pauli_batch(hx, hy, hz, dt)
        assert np.max(np.abs(u_np - u_cy)) < 1e-13

    def test_zero_field_agreement(self):
        z = np.zeros((2, 5))
        u_np = _su2_numpy.propagate_pauli_batch(z, z, z, 0.5)
        u_cy = _su2_cy.propagate_pauli_batch(z, z, z, 0.5)
        assert np.max(np.abs(u_np - u_cy)) == 0.0


class TestBackendSelection:
    def test_name_is_known(self):
        assert backend_name() in ("cython", "numpy")

    def test_force_numpy_env_var(self):
        env = dict(os.environ, QLANDSCAPE_FORCE_NUMPY="1")
        out = subprocess.run(
            [sys.executable, "-c",
             "from qlandscape.backend import backend_name; print(backend_name())"],
            env=env, capture_output=True, text=True, check=True,
        )
        assert out.stdout.strip() == "numpy"
