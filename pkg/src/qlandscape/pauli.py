"""Exact 2x2 Hermitian/unitary algebra in the Pauli basis.

Everything here is closed-form: decompositions are four traces, operator
norms come from the eigenvalues c0 +/- |a|, and matrix exponentials use the
su(2) rotation formula. No iterative linear algebra is involved, so these
routines are safe to use as oracles for everything downstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

IDENTITY = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

HERMITICITY_TOL = 1e-10
UNITARITY_TOL = 1e-10

# Below this Pauli-vector length the exponential is treated as a pure phase.
_ZERO_AXIS_CUTOFF = 1e-14


class NonHermitianError(ValueError):
    """Input matrix has an anti-Hermitian part above tolerance."""

    def __init__(self, deviation: float):
        self.deviation = deviation
        super().__init__(
            f"matrix is not Hermitian: max |M - M^dag| entry = {deviation:.3e} "
            f"(tolerance {HERMITICITY_TOL:.1e})"
        )


class NonUnitaryError(ValueError):
    """Input matrix fails the U^dag U = I check above tolerance."""

    def __init__(self, deviation: float):
        self.deviation = deviation
        super().__init__(
            f"matrix is not unitary: max |U^dag U - I| entry = {deviation:.3e} "
            f"(tolerance {UNITARITY_TOL:.1e})"
        )


@dataclass(frozen=True)
class PauliCoefficients:
    """Real coefficients of M = c0*I + ax*sx + ay*sy + az*sz."""

    c0: float
    ax: float
    ay: float
    az: float

    @property
    def vector_norm(self) -> float:
        """Length of the traceless Pauli vector (ax, ay, az)."""
        return float(np.sqrt(self.ax**2 + self.ay**2 + self.az**2))


def _as_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {M.shape}")
    return M


def hermiticity_defect(M) -> float:
    """Max entrywise magnitude of M - M^dag."""
    M = _as_matrix(M)
    return float(np.max(np.abs(M - M.conj().T)))


def check_hermitian(M) -> np.ndarray:
    """Validate and return M as a 2x2 complex array; raise if not Hermitian."""
    M = _as_matrix(M)
    defect = hermiticity_defect(M)
    if defect > HERMITICITY_TOL:
        raise NonHermitianError(defect)
    return M


def unitarity_defect(U) -> float:
    """Max entrywise magnitude of U^dag U - I."""
    U = _as_matrix(U)
    return float(np.max(np.abs(U.conj().T @ U - IDENTITY)))


def check_unitary(U) -> np.ndarray:
    """Validate and return U as a 2x2 complex array; raise if not unitary."""
    U = _as_matrix(U)
    defect = unitarity_defect(U)
    if defect > UNITARITY_TOL:
        raise NonUnitaryError(defect)
    return U


def pauli_decompose(M) -> PauliCoefficients:
    """Decompose a Hermitian 2x2 matrix into real Pauli coefficients.

    c0 = Tr(M)/2 and a_k = Tr(M sigma_k)/2; rejects non-Hermitian input.
    """
    M = check_hermitian(M)
    c0 = np.trace(M) / 2.0
    ax = np.trace(M @ SIGMA_X) / 2.0
    ay = np.trace(M @ SIGMA_Y) / 2.0
    az = np.trace(M @ SIGMA_Z) / 2.0
    return PauliCoefficients(float(c0.real), float(ax.real), float(ay.real), float(az.real))


def pauli_compose(c: PauliCoefficients) -> np.ndarray:
    """Assemble c0*I + ax*sx + ay*sy + az*sz (always Hermitian)."""
    return c.c0 * IDENTITY + c.ax * SIGMA_X + c.ay * SIGMA_Y + c.az * SIGMA_Z


def operator_norm(M) -> float:
    """Operator (spectral) norm of a Hermitian 2x2 matrix.

    Eigenvalues are c0 +/- |a|, so the norm is max(|c0 + |a||, |c0 - |a||).
    """
    c = pauli_decompose(M)
    r = c.vector_norm
    return max(abs(c.c0 + r), abs(c.c0 - r))


def expm_hermitian(M, t: float) -> np.ndarray:
    """Exact e^{-i M t} for Hermitian M via the su(2) rotation formula.

    e^{-iMt} = e^{-i c0 t} (cos(|a| t) I - i sin(|a| t) (a.sigma)/|a|),
    with the |a| -> 0 limit handled by a hard cutoff.
    """
    c = pauli_decompose(M)
    phase = np.exp(-1j * c.c0 * t)
    r = c.vector_norm
    if r < _ZERO_AXIS_CUTOFF:
        return phase * IDENTITY
    axis = (c.ax * SIGMA_X + c.ay * SIGMA_Y + c.az * SIGMA_Z) / r
    return phase * (np.cos(r * t) * IDENTITY - 1j * np.sin(r * t) * axis)


def commutator(A, B) -> np.ndarray:
    return _as_matrix(A) @ _as_matrix(B) - _as_matrix(B) @ _as_matrix(A)


def commutator_norm(A, B) -> float:
    """Operator norm of [A, B]/i, which is Hermitian for Hermitian A, B."""
    return operator_norm(commutator(A, B) / 1j)
