"""Monte-Carlo probing of the landscape around the special control.

The neighborhood probability P is the empirical fraction of random
piecewise-constant controls f = f0 + noise whose objective falls strictly
below J0 = J[f0]. Maps scan P and J0 over (alpha, phi_w), where alpha
rotates the transverse coupling V = cos(a) sx + sin(a) sy and phi_w
parametrizes the diagonal target e^{i sigma_z phi_w}.

Sampling is counter-based: control m is drawn from a stream keyed by
(seed, m), so results are identical under any evaluation order, and the
same M controls are shared by every grid cell. For targets commuting with
sigma_z this makes the P surface exactly alpha-independent, matching the
rotation-invariance lemma, not just in distribution.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .backend import propagate_pauli_batch
from .canonical import ControlSystem, HADAMARD, recenter_traceless, special_control
from .pauli import SIGMA_X, SIGMA_Y, SIGMA_Z, check_unitary, pauli_decompose
from .propagation import PiecewiseControl, objective_of_control

COMMUTING_TARGET_TOL = 1e-8


@dataclass(frozen=True)
class SamplingConfig:
    """Sampling parameters: N segments per control, M samples, noise scale."""

    horizon: float
    n_segments: int = 100
    n_samples: int = 1000
    seed: int = 0
    amplitude_scale: float = 1.0

    def __post_init__(self):
        if self.n_segments < 1 or self.n_samples < 1:
            raise ValueError("n_segments and n_samples must be >= 1")
        if not (self.amplitude_scale > 0.0):
            raise ValueError("amplitude_scale must be positive")
        if not (self.horizon > 0.0):
            raise ValueError("horizon must be positive")


@dataclass(frozen=True)
class ProbabilityMap:
    """J0 and P over the (alpha, phi_w) grid; matrices are (n_alpha, n_phi)."""

    alpha_grid: np.ndarray
    phi_w_grid: np.ndarray
    j0: np.ndarray
    p: np.ndarray
    config: SamplingConfig = field(repr=False)


def _sample_amplitudes(cfg: SamplingConfig, sample_index: int) -> np.ndarray:
    seq = np.random.SeedSequence(entropy=cfg.seed, spawn_key=(sample_index,))
    rng = np.random.default_rng(seq)
    return cfg.amplitude_scale * rng.standard_normal(cfg.n_segments)


def random_control(cfg: SamplingConfig, sample_index: int) -> PiecewiseControl:
    """The sample_index-th random control of the stream keyed by cfg.seed."""
    return PiecewiseControl(cfg.horizon, _sample_amplitudes(cfg, sample_index))


def control_batch(cfg: SamplingConfig) -> np.ndarray:
    """All M sample amplitude rows, shape (n_samples, n_segments)."""
    return np.stack([_sample_amplitudes(cfg, m) for m in range(cfg.n_samples)])


def batch_objectives(sys: ControlSystem, W, T: float, amps: np.ndarray) -> np.ndarray:
    """J for each amplitude row, via the batched SU(2) kernel.

    The trace parts of H0 and V only add a global phase, so the kernel
    propagates the recentered Pauli vectors and J is unaffected.
    """
    W = check_unitary(W)
    recentered, _, _ = recenter_traceless(sys)
    b = pauli_decompose(recentered.H0)
    c = pauli_decompose(recentered.V)
    amps = np.atleast_2d(np.asarray(amps, dtype=float))
    hx = b.ax + amps * c.ax
    hy = b.ay + amps * c.ay
    hz = b.az + amps * c.az
    u = propagate_pauli_batch(hx, hy, hz, T / amps.shape[1])
    tr = np.einsum("ij,mij->m", W.conj(), u)
    return 0.25 * np.abs(tr) ** 2


def _transverse_system(alpha: float) -> ControlSystem:
    return ControlSystem(
        SIGMA_Z, math.cos(alpha) * SIGMA_X + math.sin(alpha) * SIGMA_Y
    )


def phase_targets(phi_w_grid) -> np.ndarray:
    """Stack of e^{i sigma_z phi_w} targets, shape (n_phi, 2, 2)."""
    phi = np.asarray(phi_w_grid, dtype=float)
    out = np.zeros((phi.size, 2, 2), dtype=complex)
    out[:, 0, 0] = np.exp(1j * phi)
    out[:, 1, 1] = np.exp(-1j * phi)
    return out


def neighborhood_probability(sys: ControlSystem, W, cfg: SamplingConfig) -> tuple:
    """(J0 at the special control, fraction of samples with J < J0)."""
    f0 = special_control(sys)
    amps = f0 + control_batch(cfg)
    j = batch_objectives(sys, W, cfg.horizon, amps)
    j0 = float(batch_objectives(sys, W, cfg.horizon, np.full((1, cfg.n_segments), f0))[0])
    return j0, float(np.mean(j < j0))


def probability_map(T: float, alpha_grid, phi_w_grid, cfg: SamplingConfig) -> ProbabilityMap:
    """Fill the J0 and P matrices of the (alpha, phi_w) scan at horizon T."""
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    phi_w_grid = np.asarray(phi_w_grid, dtype=float)
    if alpha_grid.size == 0 or phi_w_grid.size == 0:
        raise ValueError("grids must be nonempty")
    if abs(cfg.horizon - T) > 1e-12:
        cfg = SamplingConfig(
            horizon=T,
            n_segments=cfg.n_segments,
            n_samples=cfg.n_samples,
            seed=cfg.seed,
            amplitude_scale=cfg.amplitude_scale,
        )
    amps = control_batch(cfg)
    targets = phase_targets(phi_w_grid)
    # J0 does not depend on alpha: the f = 0 evolution is e^{-i sigma_z T}.
    zeros = np.zeros((1, cfg.n_segments))
    u0 = propagate_pauli_batch(zeros, zeros, np.ones_like(zeros), T / cfg.n_segments)
    j0_row = 0.25 * np.abs(np.einsum("pij,mij->p", targets.conj(), u0)) ** 2
    j0 = np.tile(j0_row, (alpha_grid.size, 1))
    p = np.empty((alpha_grid.size, phi_w_grid.size))
    dt = T / cfg.n_segments
    for ia, alpha in enumerate(alpha_grid):
        hx = amps * math.cos(alpha)
        hy = amps * math.sin(alpha)
        hz = np.ones_like(amps)
        u = propagate_pauli_batch(hx, hy, hz, dt)
        for ip in range(phi_w_grid.size):
            j = 0.25 * np.abs(np.einsum("ij,mij->m", targets[ip].conj(), u)) ** 2
            p[ia, ip] = np.mean(j < j0_row[ip])
    return ProbabilityMap(alpha_grid=alpha_grid, phi_w_grid=phi_w_grid, j0=j0, p=p, config=cfg)


def hadamard_scan(T: float, alpha_grid, cfg: SamplingConfig) -> list:
    """P(alpha) for the Hadamard target; returns [(alpha, p), ...]."""
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    if abs(cfg.horizon - T) > 1e-12:
        cfg = SamplingConfig(
            horizon=T,
            n_segments=cfg.n_segments,
            n_samples=cfg.n_samples,
            seed=cfg.seed,
            amplitude_scale=cfg.amplitude_scale,
        )
    amps = control_batch(cfg)
    # J0 for Hadamard at f = 0: |Tr(H e^{-i sigma_z T})|^2 / 4 = sin^2(T)/2,
    # computed here through the same kernel for honesty.
    j0 = float(batch_objectives(_transverse_system(0.0), HADAMARD, T,
                                np.zeros((1, cfg.n_segments)))[0])
    out = []
    dt = T / cfg.n_segments
    for alpha in alpha_grid:
        u = propagate_pauli_batch(
            amps * math.cos(alpha), amps * math.sin(alpha), np.ones_like(amps), dt
        )
        j = 0.25 * np.abs(np.einsum("ij,mij->m", HADAMARD.conj(), u)) ** 2
        out.append((float(alpha), float(np.mean(j < j0))))
    return out


def rotation_invariance_check(W, f: PiecewiseControl, alpha1: float, alpha2: float) -> tuple:
    """J with V rotated to alpha1 and alpha2 for the SAME control.

    Exact equality (to round-off) is the rotation-invariance contract; it
    holds only for targets commuting with sigma_z, so others are rejected.
    """
    W = check_unitary(W)
    if np.max(np.abs(W @ SIGMA_Z - SIGMA_Z @ W)) > COMMUTING_TARGET_TOL:
        raise ValueError("rotation invariance requires [W, sigma_z] = 0")
    j1 = objective_of_control(_transverse_system(alpha1), W, f)
    j2 = objective_of_control(_transverse_system(alpha2), W, f)
    return j1, j2


def default_alpha_grid(n: int = 64) -> np.ndarray:
    """n points covering alpha in [0, 2 pi)."""
    return np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)


def default_phi_w_grid(n: int = 64) -> np.ndarray:
    """n points covering phi_w in (0, pi]."""
    return np.linspace(math.pi / n, math.pi, n)


def write_map_csv(pmap: ProbabilityMap, path) -> None:
    """CSV rows alpha,phi_w,j0,p (10 significant digits)."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["alpha", "phi_w", "j0", "p"])
        for ia, alpha in enumerate(pmap.alpha_grid):
            for ip, phi_w in enumerate(pmap.phi_w_grid):
                writer.writerow([
                    f"{alpha:.10g}",
                    f"{phi_w:.10g}",
                    f"{pmap.j0[ia, ip]:.10g}",
                    f"{pmap.p[ia, ip]:.10g}",
                ])


def write_scan_csv(rows, path) -> None:
    """CSV rows alpha,p for the 1-d Hadamard scan."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["alpha", "p"])
        for alpha, p in rows:
            writer.writerow([f"{alpha:.10g}", f"{p:.10g}"])


__all__ = [
    "SamplingConfig",
    "ProbabilityMap",
    "random_control",
    "control_batch",
    "batch_objectives",
    "neighborhood_probability",
    "probability_map",
    "hadamard_scan",
    "rotation_invariance_check",
    "default_alpha_grid",
    "default_phi_w_grid",
    "write_map_csv",
    "write_scan_csv",
]
