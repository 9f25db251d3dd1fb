# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cyclic Jacobi sweeps for complex Hermitian matrices, compiled kernel."""

import numpy as np

cimport numpy as cnp
from libc.math cimport atan2, cos, sin, sqrt

cnp.import_array()


cdef double _off_norm(double complex[:, :] a, Py_ssize_t n) nogil:
    cdef double acc = 0.0
    cdef Py_ssize_t i, j
    cdef double complex v
    for i in range(n):
        for j in range(n):
            if i != j:
                v = a[i, j]
                acc += v.real * v.real + v.imag * v.imag
    return sqrt(acc)


cdef int _sweep_loop(double complex[:, :] a, double complex[:, :] q,
                     Py_ssize_t n, double thresh, int max_sweeps) nogil:
    cdef Py_ssize_t p, m, k
    cdef int sweep
    cdef double r, theta, c, s
    cdef double complex apq, phase, pc, tp, tq

    for sweep in range(1, max_sweeps + 1):
            if _off_norm(a, n) <= thresh:
                return sweep - 1
            for p in range(n - 1):
                for m in range(p + 1, n):
                    apq = a[p, m]
                    r = sqrt(apq.real * apq.real + apq.imag * apq.imag)
                    if r <= 1e-300:
                        continue
                    phase = apq / r
                    theta = 0.5 * atan2(2.0 * r, a[p, p].real - a[m, m].real)
                    c = cos(theta)
                    s = sin(theta)
                    pc = phase.conjugate()
                    for k in range(n):
                        tp = a[k, p]
                        tq = a[k, m]
                        a[k, p] = c * tp + s * pc * tq
                        a[k, m] = -s * tp + c * pc * tq
                    for k in range(n):
                        tp = a[p, k]
                        tq = a[m, k]
                        a[p, k] = c * tp + s * phase * tq
                        a[m, k] = -s * tp + c * phase * tq
                    a[p, m] = 0.0
                    a[m, p] = 0.0
                    a[p, p] = a[p, p].real
                    a[m, m] = a[m, m].real
                    for k in range(n):
                        tp = q[k, p]
                        tq = q[k, m]
                        q[k, p] = c * tp + s * pc * tq
                        q[k, m] = -s * tp + c * pc * tq
            if _off_norm(a, n) <= thresh:
                return sweep
    return -1


def jacobi_sweeps(cnp.ndarray[cnp.complex128_t, ndim=2] a_arr,
                  cnp.ndarray[cnp.complex128_t, ndim=2] q_arr,
                  double tol, int max_sweeps):
    """In-place cyclic Jacobi; same contract as the numpy fallback."""
    cdef double complex[:, :] a = a_arr
    cdef double complex[:, :] q = q_arr
    cdef Py_ssize_t n = a_arr.shape[0]
    cdef Py_ssize_t i, j
    cdef double fro = 0.0
    cdef double complex v
    cdef int result

    for i in range(n):
        for j in range(n):
            v = a[i, j]
            fro += v.real * v.real + v.imag * v.imag
    fro = sqrt(fro)
    if fro == 0.0 or n < 2:
        return 0
    with nogil:
        result = _sweep_loop(a, q, n, tol * fro, max_sweeps)
    return result
