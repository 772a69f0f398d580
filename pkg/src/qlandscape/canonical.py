"""Special control, special time, and the canonical frame.

Given a qubit control system i dU/dt = (H0 + f(t) V) U, this module computes
the unique constant control f0 that can be a short-horizon critical point,
the horizon T0 beyond which all maxima are global, the traceless recentering
(H0, V) -> (H0 - Tr H0/2, V - Tr V/2), and the unitary frame S that maps the
drift H0 + f0 V to h*sigma_z with purely transverse couplings (vx, vy).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pauli import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    check_hermitian,
    check_unitary,
    commutator,
    commutator_norm,
    operator_norm,
    pauli_decompose,
)

NONTRIVIALITY_TOL = 1e-8   # required ||[H0, V]||
COMMUTING_GATE_TOL = 1e-8  # spectral norm of [drift, W] separating the Theorem-2 branches
DEGENERATE_DENOM_TOL = 1e-12


class CommutingSystemError(ValueError):
    """H0 and V commute, so the control problem is trivial and unsupported."""


@dataclass(frozen=True)
class ControlSystem:
    """Pair (H0, V) of 2x2 Hermitian matrices with [H0, V] != 0."""

    H0: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "H0", check_hermitian(self.H0))
        object.__setattr__(self, "V", check_hermitian(self.V))
        cnorm = commutator_norm(self.H0, self.V)
        if cnorm <= NONTRIVIALITY_TOL:
            raise CommutingSystemError(
                f"[H0, V] has norm {cnorm:.3e}; the system must be noncommuting"
            )


@dataclass(frozen=True)
class CanonicalSystem:
    """Result of the frame change S (H0~ + f0 V~) S^dag = h sigma_z.

    In the new frame and with time rescaled by h, the dynamics is
    i dU/dt = (sigma_z + g(t) (vx sx + vy sy)) U with g = f - f0.
    trace_h0/trace_v keep the recentering phase reconstructible.
    """

    S: np.ndarray
    h: float
    vx: float
    vy: float
    f0: float
    trace_h0: float
    trace_v: float

    @property
    def v(self) -> float:
        """Transverse coupling magnitude sqrt(vx^2 + vy^2)."""
        return math.hypot(self.vx, self.vy)

    @property
    def phi_v(self) -> float:
        """Coupling direction angle, atan2(vy, vx)."""
        return math.atan2(self.vy, self.vx)


@dataclass(frozen=True)
class GateDecomposition:
    """Placement of a target W relative to the drift H0 + f0 V.

    commuting is False when ||[drift, W]|| exceeds the commuting tolerance;
    degenerate marks W proportional to the identity (a trivial target with
    no well-defined alpha_w). d is the drift norm used in Theorem-2 ranges.
    """

    commuting: bool
    degenerate: bool
    d: float
    alpha_w: float | None = None
    beta_w: float | None = None


def special_control(sys: ControlSystem) -> float:
    """The special constant control f0 (the only possible short-T trap)."""
    H0, V = sys.H0, sys.V
    tr_h0 = np.trace(H0).real
    tr_v = np.trace(V).real
    tr_h0v = np.trace(H0 @ V).real
    tr_v2 = np.trace(V @ V).real
    denom = tr_v**2 - 2.0 * tr_v2
    if abs(denom) < DEGENERATE_DENOM_TOL:
        raise CommutingSystemError(
            "denominator (Tr V)^2 - 2 Tr V^2 vanishes: V is proportional to the "
            "identity, contradicting [H0, V] != 0"
        )
    return float((-tr_h0 * tr_v + 2.0 * tr_h0v) / denom)


def recenter_traceless(sys: ControlSystem) -> tuple[ControlSystem, float, float]:
    """Subtract the trace parts of H0 and V; returns the removed traces.

    The removed traces only contribute a global phase
    lambda(T) = (T Tr H0 + Tr V * int f dt)/2 to U_T, so the objective is
    unchanged.
    """
    tr_h0 = float(np.trace(sys.H0).real)
    tr_v = float(np.trace(sys.V).real)
    H0t = sys.H0 - (tr_h0 / 2.0) * np.eye(2)
    Vt = sys.V - (tr_v / 2.0) * np.eye(2)
    return ControlSystem(H0t, Vt), tr_h0, tr_v


def _recentered_drift(sys: ControlSystem) -> tuple[np.ndarray, float]:
    """Traceless drift H0~ + f0 V~ and the special control f0."""
    f0 = special_control(sys)
    recentered, _, _ = recenter_traceless(sys)
    return recentered.H0 + f0 * recentered.V, f0


def special_time(sys: ControlSystem) -> float:
    """T0 = pi / ||H0~ + f0 V~||; finite because [H0, V] != 0."""
    drift, _ = _recentered_drift(sys)
    norm = operator_norm(drift)
    if norm < 1e-12:
        raise CommutingSystemError(
            "recentered drift H0~ + f0 V~ vanishes, which forces [H0, V] = 0"
        )
    return math.pi / norm


def _fixed_phase_eigvecs(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvectors of Hermitian M, ordered (plus, minus) by eigenvalue,
    each with its first nonzero component made real positive."""
    vals, vecs = np.linalg.eigh(M)  # ascending
    plus, minus = vecs[:, 1].copy(), vecs[:, 0].copy()
    out = []
    for v in (plus, minus):
        k = 0 if abs(v[0]) > 1e-12 else 1
        v = v * (abs(v[k]) / v[k])
        out.append(v)
    return out[0], out[1]


def canonical_frame(sys: ControlSystem) -> CanonicalSystem:
    """Frame change to the sigma_z form of the dynamics.

    The returned S satisfies S (H0~ + f0 V~) S^dag = h sigma_z with h > 0,
    and S V~ S^dag / h = vx sx + vy sy (the sigma_z coefficient vanishes
    identically because Tr[V~ (H0~ + f0 V~)] = 0 at f0).
    """
    drift, f0 = _recentered_drift(sys)
    recentered, tr_h0, tr_v = recenter_traceless(sys)
    h = operator_norm(drift)
    if h < 1e-12:
        raise CommutingSystemError("recentered drift vanishes")
    plus, minus = _fixed_phase_eigvecs(drift)
    S = np.vstack([plus.conj(), minus.conj()])
    coupling = pauli_decompose(S @ recentered.V @ S.conj().T)
    return CanonicalSystem(
        S=S,
        h=h,
        vx=coupling.ax / h,
        vy=coupling.ay / h,
        f0=f0,
        trace_h0=tr_h0,
        trace_v=tr_v,
    )


def gate_angles(W, sys: ControlSystem) -> GateDecomposition:
    """Decompose a commuting target as W = e^{i alpha_w (H0 + f0 V) + i beta_w}.

    The drift is taken in its traceless recentered form, d = ||H0~ + f0 V~||.
    For noncommuting W only d is meaningful. Eigenphases of W determine
    alpha_w through their difference Delta = 2 alpha_w d (mod 2 pi); Delta = 0
    means W is proportional to the identity, reported as degenerate.
    """
    W = check_unitary(W)
    drift, _ = _recentered_drift(sys)
    d = operator_norm(drift)
    comm = np.linalg.norm(commutator(drift, W), 2)
    if comm > COMMUTING_GATE_TOL:
        return GateDecomposition(commuting=False, degenerate=False, d=d)
    plus, minus = _fixed_phase_eigvecs(drift)
    theta_plus = math.atan2((plus.conj() @ W @ plus).imag, (plus.conj() @ W @ plus).real)
    theta_minus = math.atan2((minus.conj() @ W @ minus).imag, (minus.conj() @ W @ minus).real)
    delta = (theta_plus - theta_minus) % (2.0 * math.pi)
    if min(delta, 2.0 * math.pi - delta) < 1e-10:
        return GateDecomposition(commuting=True, degenerate=True, d=d)
    alpha_w = delta / (2.0 * d)
    beta_w = (theta_plus - alpha_w * d) % (2.0 * math.pi)
    return GateDecomposition(
        commuting=True, degenerate=False, d=d, alpha_w=alpha_w, beta_w=beta_w
    )


# Named targets used throughout the CLI and experiments.
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)


def phase_gate(phi: float) -> np.ndarray:
    """diag(1, e^{i phi}) = e^{-i phi_w} e^{i sigma_z phi_w} with phi_w = -phi/2."""
    return np.array([[1.0, 0.0], [0.0, np.exp(1j * phi)]], dtype=complex)


def phase_shift_target(phi_w: float) -> np.ndarray:
    """W = e^{i sigma_z phi_w} = diag(e^{i phi_w}, e^{-i phi_w})."""
    return np.array(
        [[np.exp(1j * phi_w), 0.0], [0.0, np.exp(-1j * phi_w)]], dtype=complex
    )


__all__ = [
    "ControlSystem",
    "CanonicalSystem",
    "GateDecomposition",
    "CommutingSystemError",
    "special_control",
    "special_time",
    "recenter_traceless",
    "canonical_frame",
    "gate_angles",
    "HADAMARD",
    "phase_gate",
    "phase_shift_target",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
]
