"""Pure-numpy batched SU(2) piecewise propagation (fallback backend).

A traceless 2x2 Hermitian generator a.sigma exponentiates to a unit
quaternion, so the product of per-segment exponentials is a chain of
quaternion multiplications. Everything is vectorized over the batch axis;
the compiled backend in _su2_cy implements the same contract.
"""

from __future__ import annotations

import numpy as np


def propagate_pauli_batch(hx, hy, hz, dt: float) -> np.ndarray:
    """Product of e^{-i (h.sigma) dt} over segments, for a batch of controls.

    hx, hy, hz have shape (M, N): Pauli-vector components of the (traceless)
    generator on each of the N segments for each of the M batch entries.
    Returns the final unitaries as a complex array of shape (M, 2, 2).
    """
    hx = np.ascontiguousarray(hx, dtype=np.float64)
    hy = np.ascontiguousarray(hy, dtype=np.float64)
    hz = np.ascontiguousarray(hz, dtype=np.float64)
    if hx.shape != hy.shape or hx.shape != hz.shape or hx.ndim != 2:
        raise ValueError("hx, hy, hz must share a (M, N) shape")
    m, n = hx.shape
    w = np.ones(m)
    x = np.zeros(m)
    y = np.zeros(m)
    z = np.zeros(m)
    for i in range(n):
        ax, ay, az = hx[:, i], hy[:, i], hz[:, i]
        r = np.sqrt(ax * ax + ay * ay + az * az)
        ang = r * dt
        c = np.cos(ang)
        s = dt * np.sinc(ang / np.pi)  # sin(r dt)/r with a clean r -> 0 limit
        ex, ey, ez = s * ax, s * ay, s * az
        # U = w I - i v.sigma composes like quaternions: (c, e) * (w, v).
        nw = c * w - ex * x - ey * y - ez * z
        nx = c * x + w * ex + ey * z - ez * y
        ny = c * y + w * ey + ez * x - ex * z
        nz = c * z + w * ez + ex * y - ey * x
        w, x, y, z = nw, nx, ny, nz
    out = np.empty((m, 2, 2), dtype=complex)
    out[:, 0, 0] = w - 1j * z
    out[:, 0, 1] = -y - 1j * x
    out[:, 1, 0] = y - 1j * x
    out[:, 1, 1] = w + 1j * z
    return out
