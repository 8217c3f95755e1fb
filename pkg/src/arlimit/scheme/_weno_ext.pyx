# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled WENO5-JS Lax-Friedrichs split flux; same contract as _weno_py."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef double EPS = 1e-6
cdef double D0 = 0.1, D1 = 0.6, D2 = 0.3


cdef inline double _weno(double a, double b, double c, double d, double e) nogil:
    cdef double b0, b1, b2, a0, a1, a2, t0, t1
    t0 = a - 2.0 * b + c
    t1 = a - 4.0 * b + 3.0 * c
    b0 = 13.0 / 12.0 * t0 * t0 + 0.25 * t1 * t1
    t0 = b - 2.0 * c + d
    t1 = b - d
    b1 = 13.0 / 12.0 * t0 * t0 + 0.25 * t1 * t1
    t0 = c - 2.0 * d + e
    t1 = 3.0 * c - 4.0 * d + e
    b2 = 13.0 / 12.0 * t0 * t0 + 0.25 * t1 * t1
    a0 = D0 / ((EPS + b0) * (EPS + b0))
    a1 = D1 / ((EPS + b1) * (EPS + b1))
    a2 = D2 / ((EPS + b2) * (EPS + b2))
    return (a0 * (2.0 * a - 7.0 * b + 11.0 * c)
            + a1 * (-b + 5.0 * c + 2.0 * d)
            + a2 * (2.0 * c + 5.0 * d - e)) / (6.0 * (a0 + a1 + a2))


def weno5_left(double a, double b, double c, double d, double e):
    return _weno(a, b, c, d, e)


def weno5_split_flux(u, f, double alpha):
    cdef double[:, ::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    cdef double[:, ::1] fv = np.ascontiguousarray(f, dtype=np.float64)
    cdef Py_ssize_t nc = uv.shape[0], m = uv.shape[1]
    cdef Py_ssize_t k, j
    out = np.empty((nc, m - 5), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef double[:, ::1] fp = np.empty((nc, m), dtype=np.float64)
    cdef double[:, ::1] fm = np.empty((nc, m), dtype=np.float64)
    with nogil:
        for k in range(nc):
            for j in range(m):
                fp[k, j] = 0.5 * (fv[k, j] + alpha * uv[k, j])
                fm[k, j] = 0.5 * (fv[k, j] - alpha * uv[k, j])
            for j in range(2, m - 3):
                ov[k, j - 2] = (_weno(fp[k, j - 2], fp[k, j - 1], fp[k, j], fp[k, j + 1], fp[k, j + 2])
                                + _weno(fm[k, j + 3], fm[k, j + 2], fm[k, j + 1], fm[k, j], fm[k, j - 1]))
    return out
