"""Trap-freedom classification and saddle-point witnesses at f0.

The classifier applies the three-way split: noncommuting targets are
trap-free for every horizon; commuting targets with alpha_w < pi/(2d) are
trap-free for every horizon; the remaining commuting targets carry the
guarantee only for T > pi/d - alpha_w. The witness machinery certifies the
saddle structure behind the commuting cases numerically, by realizing
two-bump perturbations whose quadratic form takes both signs whenever the
discriminant D = sin 2(phi_w + T - s) sin 2s is positive at some s = |t2-t1|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .canonical import (
    CanonicalSystem,
    ControlSystem,
    canonical_frame,
    gate_angles,
    phase_shift_target,
    special_time,
)
from .kernels import (
    build_hessian_grid,
    l_functional,
    second_variation,
    segment_aligned_times,
    y_angles,
)
from .pauli import SIGMA_X, SIGMA_Y, SIGMA_Z
from .propagation import PiecewiseControl, propagate

CASE_NONCOMMUTING = "NoncommutingAllT"
CASE_SMALL_ALPHA = "CommutingSmallAlphaAllT"
CASE_THRESHOLD = "CommutingThreshold"
CASE_DEGENERATE = "DegenerateTarget"

CRITICAL_GRADIENT_TOL = 1e-9
_GLOBAL_EXTREMUM_TOL = 1e-9


@dataclass(frozen=True)
class TrapVerdict:
    """Classification outcome with its governing parameters."""

    case: str
    d: float
    h: float
    t0: float
    min_trap_free_T: float
    horizon: float
    guaranteed_trap_free: bool
    alpha_w: float | None = None
    beta_w: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "case": self.case,
            "alpha_w": self.alpha_w,
            "beta_w": self.beta_w,
            "d": self.d,
            "h": self.h,
            "t0": self.t0,
            "min_trap_free_t": self.min_trap_free_T,
        }


@dataclass(frozen=True)
class CriticalPointReport:
    """Gradient status of the special control f0 for a given target."""

    critical: bool
    l_x: float
    l_y: float
    gradient_amplitude: float
    j0: float
    global_minimum: bool
    global_maximum: bool
    phi: float
    theta: float


@dataclass(frozen=True)
class SaddleWitness:
    """Two-bump perturbations realizing both signs of the second variation."""

    t1: float
    t2: float
    pos_pair: tuple
    neg_pair: tuple
    pos_value: float
    neg_value: float
    discriminant: float
    epsilon: float


def classify(sys: ControlSystem, W, T: float) -> TrapVerdict:
    """Apply the trap-freedom cases for target W at horizon T."""
    if not (T > 0.0):
        raise ValueError(f"horizon must be positive, got {T}")
    decomp = gate_angles(W, sys)
    t0 = special_time(sys)
    h = math.pi / t0  # norm of the recentered drift, equals d
    if not decomp.commuting:
        return TrapVerdict(
            case=CASE_NONCOMMUTING,
            d=decomp.d,
            h=h,
            t0=t0,
            min_trap_free_T=0.0,
            horizon=T,
            guaranteed_trap_free=True,
        )
    if decomp.degenerate:
        # W is a pure phase; J at f0 is already extremal for this target and
        # the alpha_w placement is undefined, so no trap analysis applies.
        return TrapVerdict(
            case=CASE_DEGENERATE,
            d=decomp.d,
            h=h,
            t0=t0,
            min_trap_free_T=0.0,
            horizon=T,
            guaranteed_trap_free=True,
        )
    d = decomp.d
    if decomp.alpha_w < math.pi / (2.0 * d):
        return TrapVerdict(
            case=CASE_SMALL_ALPHA,
            d=d,
            h=h,
            t0=t0,
            min_trap_free_T=0.0,
            horizon=T,
            guaranteed_trap_free=True,
            alpha_w=decomp.alpha_w,
            beta_w=decomp.beta_w,
        )
    threshold = math.pi / d - decomp.alpha_w
    return TrapVerdict(
        case=CASE_THRESHOLD,
        d=d,
        h=h,
        t0=t0,
        min_trap_free_T=threshold,
        horizon=T,
        guaranteed_trap_free=T > threshold,
        alpha_w=decomp.alpha_w,
        beta_w=decomp.beta_w,
    )


def _canonical_y(cs: CanonicalSystem, W, T: float) -> np.ndarray:
    """Y = (S W S^dag)^dag e^{-i sigma_z T h} in the canonical frame."""
    t_c = T * cs.h
    u_final = np.diag([np.exp(-1j * t_c), np.exp(1j * t_c)])
    w_c = cs.S @ np.asarray(W, dtype=complex) @ cs.S.conj().T
    return w_c.conj().T @ u_final


def critical_point_test(sys: ControlSystem, W, T: float) -> CriticalPointReport:
    """Evaluate the g = 0 gradient coefficients L(sx), L(sy) in the canonical frame.

    The gradient at f0 is v cos(2t - phi_v) L(sx) - v sin(2t - phi_v) L(sy),
    so f0 is critical exactly when both coefficients vanish.
    """
    cs = canonical_frame(sys)
    Y = _canonical_y(cs, W, T)
    l_x = l_functional(Y, SIGMA_X)
    l_y = l_functional(Y, SIGMA_Y)
    amplitude = cs.v * math.hypot(l_x, l_y)
    ang = y_angles(Y)
    j0 = (math.cos(ang.phi) * math.cos(ang.theta)) ** 2
    return CriticalPointReport(
        critical=amplitude < CRITICAL_GRADIENT_TOL,
        l_x=l_x,
        l_y=l_y,
        gradient_amplitude=amplitude,
        j0=j0,
        global_minimum=abs(math.cos(ang.phi) * math.cos(ang.theta)) < _GLOBAL_EXTREMUM_TOL,
        global_maximum=abs(j0 - 1.0) < _GLOBAL_EXTREMUM_TOL,
        phi=ang.phi,
        theta=ang.theta,
    )


def discriminant(phi_w: float, T: float, s: float) -> float:
    """D(s) = sin 2(phi_w + T - s) * sin 2s with s = |t2 - t1|."""
    if s < 0.0 or s > T:
        raise ValueError(f"s={s} outside [0, T={T}]")
    return math.sin(2.0 * (phi_w + T - s)) * math.sin(2.0 * s)


def _pick_separation(phi_w: float, t_c: float) -> float | None:
    """Choose s = |t2 - t1| with D(s) > 0, or None when no such s exists.

    The analytic constructions are tried first: s = T - eps for
    phi_w in (0, pi/2), and a small s below phi_w + T - pi for
    phi_w in [pi/2, pi) with T above threshold; a uniform scan over (0, T)
    covers everything else (D has period pi/2 in s).
    """
    candidates = []
    eps = t_c / 20.0
    if 0.0 < phi_w < math.pi / 2.0 and t_c < math.pi / 2.0:
        candidates.append(t_c - eps)
    if math.pi / 2.0 <= phi_w < math.pi and phi_w + t_c > math.pi:
        candidates.append(min(0.5 * (phi_w + t_c - math.pi), eps, 0.25 * math.pi))
    scan = np.linspace(0.0, t_c, 2001)[1:-1]
    d_scan = np.sin(2.0 * (phi_w + t_c - scan)) * np.sin(2.0 * scan)
    candidates.append(float(scan[np.argmax(d_scan)]))
    for s in candidates:
        if 0.0 < s < t_c and discriminant(phi_w, t_c, s) > 1e-9:
            return s
    return None


def _two_bump(t_c: float, n: int, centers_heights) -> PiecewiseControl:
    """Piecewise control made of single-segment bumps (height 1/width each)."""
    amps = np.zeros(n)
    dt = t_c / n
    for idx, lam in centers_heights:
        amps[idx] += lam / dt
    return PiecewiseControl(t_c, amps)


def saddle_witness(sys: ControlSystem, W, T: float) -> SaddleWitness | None:
    """Search for a sign-indefinite pair of two-bump perturbations at f0.

    Works in the canonical frame (drift sigma_z, horizon T*h, target
    e^{i sigma_z phi_w} with phi_w = alpha_w * d). Returns None when the
    hypotheses for a witness fail, e.g. T below the threshold of the
    commuting case, or J at f0 already globally extremal.
    """
    decomp = gate_angles(W, sys)
    if not decomp.commuting or decomp.degenerate:
        raise ValueError("saddle_witness requires a commuting, nondegenerate target")
    report = critical_point_test(sys, W, T)
    if not report.critical:
        raise ValueError("f0 is not a critical point for this target")
    if report.global_minimum or report.global_maximum:
        return None

    cs = canonical_frame(sys)
    t_c = T * cs.h
    phi_w = (decomp.alpha_w * decomp.d) % math.pi
    s = _pick_separation(phi_w, t_c)
    if s is None:
        return None

    v = cs.v
    phi = report.phi
    canonical_sys = ControlSystem(
        SIGMA_Z, cs.vx * SIGMA_X + cs.vy * SIGMA_Y
    )
    target = phase_shift_target(phi_w)

    def limit_form(lam: float, mu: float) -> float:
        g = lam**2 * math.cos(phi) + 2.0 * lam * mu * math.cos(2.0 * s + phi) + mu**2 * math.cos(phi)
        return -2.0 * v**2 * math.cos(phi) * g

    n_segments = 20
    for _ in range(11):
        if n_segments > 1600:
            # Finer bumps would need prohibitive Hessian grids; the signs
            # never stabilized, so no witness is reported.
            return None
        dt = t_c / n_segments
        i1 = min(int(((t_c - s) / 2.0) / dt), n_segments - 1)
        i2 = min(i1 + int(round(s / dt)), n_segments - 1)
        snapped_s = (i2 - i1) * dt
        if i2 <= i1 or not (
            0.0 < snapped_s < t_c and discriminant(phi_w, t_c, snapped_s) > 0.0
        ):
            n_segments *= 2
            continue
        zero = PiecewiseControl(t_c, np.zeros(n_segments))
        traj = propagate(canonical_sys, zero)
        per = max(1, 800 // n_segments)
        grid = build_hessian_grid(traj, target, segment_aligned_times(zero, per))
        t1 = (i1 + 0.5) * dt
        t2 = (i2 + 0.5) * dt
        s_real = t2 - t1

        pairs = [(1.0, 1.0), (1.0, -1.0)]
        realized = [
            second_variation(grid, _two_bump(t_c, n_segments, [(i1, lam), (i2, mu)]))
            for lam, mu in pairs
        ]
        expected = [limit_form(lam, mu) for lam, mu in pairs]
        signs_ok = all(
            r * e > 0.0 for r, e in zip(realized, expected)
        ) and realized[0] * realized[1] < 0.0
        if not signs_ok:
            # Fall back to the principal axes of the realized quadratic form.
            q11 = second_variation(grid, _two_bump(t_c, n_segments, [(i1, 1.0)]))
            q22 = second_variation(grid, _two_bump(t_c, n_segments, [(i2, 1.0)]))
            q12 = 0.5 * (realized[0] - q11 - q22)
            evals, evecs = np.linalg.eigh(np.array([[q11, q12], [q12, q22]]))
            if evals[0] < 0.0 < evals[1]:
                pairs = [tuple(evecs[:, 1]), tuple(evecs[:, 0])]
                realized = [float(evals[1]), float(evals[0])]
                signs_ok = True
        if signs_ok:
            order = [0, 1] if realized[0] > 0.0 else [1, 0]
            disc = discriminant(phi_w, t_c, s_real)
            return SaddleWitness(
                t1=t1,
                t2=t2,
                pos_pair=tuple(pairs[order[0]]),
                neg_pair=tuple(pairs[order[1]]),
                pos_value=realized[order[0]],
                neg_value=realized[order[1]],
                discriminant=disc,
                epsilon=dt,
            )
        # Narrower bumps approach the analytic limit; refine and retry.
        n_segments *= 2
    return None


__all__ = [
    "TrapVerdict",
    "CriticalPointReport",
    "SaddleWitness",
    "CASE_NONCOMMUTING",
    "CASE_SMALL_ALPHA",
    "CASE_THRESHOLD",
    "CASE_DEGENERATE",
    "classify",
    "critical_point_test",
    "discriminant",
    "saddle_witness",
]
