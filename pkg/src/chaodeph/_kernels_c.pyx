# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled phase-accumulation kernel; see _kernels_py for the contract.

Accumulates with Kahan compensation per node so long trajectories do not
lose precision to naive summation.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()


def phase_window_moments(double[::1] kx, double[::1] ky, double[::1] kz,
                         double[:, ::1] positions):
    cdef Py_ssize_t m = kx.shape[0]
    cdef Py_ssize_t n = positions.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] mean_phase = np.empty(m, dtype=np.complex128)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] mean_sq = np.empty(m, dtype=np.float64)

    cdef Py_ssize_t j, l
    cdef double kxj, kyj, kzj, ph, c, s
    cdef double sum_c, sum_s, sum_q
    cdef double comp_c, comp_s, comp_q, y, t

    for j in range(m):
        kxj = kx[j]
        kyj = ky[j]
        kzj = kz[j]
        sum_c = sum_s = sum_q = 0.0
        comp_c = comp_s = comp_q = 0.0
        for l in range(n):
            ph = kxj * positions[l, 0] + kyj * positions[l, 1] + kzj * positions[l, 2]
            c = cos(ph)
            s = sin(ph)

            y = c - comp_c
            t = sum_c + y
            comp_c = (t - sum_c) - y
            sum_c = t

            y = s - comp_s
            t = sum_s + y
            comp_s = (t - sum_s) - y
            sum_s = t

            y = (c * c + s * s) - comp_q
            t = sum_q + y
            comp_q = (t - sum_q) - y
            sum_q = t

        mean_phase[j] = complex(sum_c / n, -sum_s / n)
        mean_sq[j] = sum_q / n

    return mean_phase, mean_sq
