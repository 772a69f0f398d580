# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled batched SU(2) piecewise propagation (hot kernel).

Same contract as _su2_numpy.propagate_pauli_batch: per-segment closed-form
exponentials composed as quaternion products, one chain per batch entry.
"""

import numpy as np

from libc.math cimport cos, sin, sqrt


def propagate_pauli_batch(hx, hy, hz, double dt):
    cdef double[:, ::1] ax = np.ascontiguousarray(hx, dtype=np.float64)
    cdef double[:, ::1] ay = np.ascontiguousarray(hy, dtype=np.float64)
    cdef double[:, ::1] az = np.ascontiguousarray(hz, dtype=np.float64)
    if ax.shape[0] != ay.shape[0] or ax.shape[1] != ay.shape[1] \
            or ax.shape[0] != az.shape[0] or ax.shape[1] != az.shape[1]:
        raise ValueError("hx, hy, hz must share a (M, N) shape")
    cdef Py_ssize_t m = ax.shape[0]
    cdef Py_ssize_t n = ax.shape[1]
    out = np.empty((m, 2, 2), dtype=np.complex128)
    cdef double complex[:, :, ::1] u = out
    cdef Py_ssize_t i, j
    cdef double w, x, y, z, nw, nx, ny, nz
    cdef double vx, vy, vz, r, ang, c, s, ex, ey, ez
    with nogil:
        for i in range(m):
            w = 1.0
            x = 0.0
            y = 0.0
            z = 0.0
            for j in range(n):
                vx = ax[i, j]
                vy = ay[i, j]
                vz = az[i, j]
                r = sqrt(vx * vx + vy * vy + vz * vz)
                ang = r * dt
                c = cos(ang)
                if r > 1e-300:
                    s = sin(ang) / r
                else:
                    s = dt
                ex = s * vx
                ey = s * vy
                ez = s * vz
                nw = c * w - ex * x - ey * y - ez * z
                nx = c * x + w * ex + ey * z - ez * y
                ny = c * y + w * ey + ez * x - ex * z
                nz = c * z + w * ez + ex * y - ey * x
                w = nw
                x = nx
                y = ny
                z = nz
            u[i, 0, 0] = w - 1j * z
            u[i, 0, 1] = -y - 1j * x
            u[i, 1, 0] = y - 1j * x
            u[i, 1, 1] = w + 1j * z
    return out
