# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: Thomas tridiagonal solve and J0/J1 evaluation.

Mirrors ``_kernels_py``; see that module for the calling conventions.
"""
import numpy as np

from libc.math cimport cos, fabs, sin, sqrt, INFINITY, M_PI

Z_SWITCH = 12.0
DEF MIN_SERIES_TERMS = 30
DEF MAX_SERIES_TERMS = 120


def solve_tridiagonal(lower, diag, upper, rhs):
    cdef double[::1] a = np.ascontiguousarray(lower, dtype=np.float64)
    cdef double[::1] b = np.ascontiguousarray(diag, dtype=np.float64)
    cdef double[::1] c = np.ascontiguousarray(upper, dtype=np.float64)
    cdef double[::1] d = np.ascontiguousarray(rhs, dtype=np.float64)
    cdef Py_ssize_t n = b.shape[0]
    if a.shape[0] != n or c.shape[0] != n or d.shape[0] != n:
        raise ValueError("tridiagonal bands and rhs must have equal length")
    x_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] x = x_arr
    cdef double[::1] cp = np.empty(n, dtype=np.float64)
    cdef double w
    cdef Py_ssize_t i
    if n == 0:
        return x_arr
    if b[0] == 0.0:
        raise ZeroDivisionError("zero pivot in tridiagonal solve")
    cp[0] = c[0] / b[0]
    x[0] = d[0] / b[0]
    for i in range(1, n):
        w = b[i] - a[i] * cp[i - 1]
        if w == 0.0:
            raise ZeroDivisionError("zero pivot in tridiagonal solve")
        cp[i] = c[i] / w
        x[i] = (d[i] - a[i] * x[i - 1]) / w
    for i in range(n - 2, -1, -1):
        x[i] -= cp[i] * x[i + 1]
    return x_arr


cdef void _series(double z, double* j0, double* j1) nogil:
    cdef double q = -0.25 * z * z
    cdef double t0 = 1.0, s0 = 1.0, t1 = 1.0, s1 = 1.0
    cdef int k
    for k in range(1, MAX_SERIES_TERMS):
        t0 *= q / (k * k)
        t1 *= q / (k * (k + 1.0))
        s0 += t0
        s1 += t1
        if k >= MIN_SERIES_TERMS and fabs(t0) < 1e-18 and fabs(t1) < 1e-18:
            break
    j0[0] = s0
    j1[0] = 0.5 * z * s1


cdef double _hankel_one(double z, double mu, double shift) nogil:
    cdef double p = 0.0, q = 0.0, term = 1.0, prev = INFINITY, a, sign, chi
    cdef int k
    for k in range(60):
        if k > 0:
            term *= (mu - (2 * k - 1) * (2 * k - 1)) / (k * 8.0 * z)
        a = fabs(term)
        if a > prev:
            break
        sign = 1.0 if (k // 2) % 2 == 0 else -1.0
        if k % 2 == 0:
            p += sign * term
        else:
            q += sign * term
        if a < 1e-17:
            break
        prev = a
    chi = z - shift
    return sqrt(2.0 / (M_PI * z)) * (p * cos(chi) - q * sin(chi))


def bessel_j01(double z):
    cdef double j0, j1
    if z <= Z_SWITCH:
        _series(z, &j0, &j1)
    else:
        j0 = _hankel_one(z, 0.0, 0.25 * M_PI)
        j1 = _hankel_one(z, 4.0, 0.75 * M_PI)
    return j0, j1
