# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled cyclic Jacobi kernel for complex Hermitian matrices.

Only rows are rotated; Hermiticity fills the matching columns. Eigenvectors
are accumulated transposed so every update walks contiguous memory.
"""
import numpy as np
from libc.math cimport sqrt, hypot


cdef double _off_norm(double complex[:, ::1] a, Py_ssize_t m) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double acc = 0.0
    cdef double complex z
    for i in range(m):
        for j in range(m):
            if i != j:
                z = a[i, j]
                acc += z.real * z.real + z.imag * z.imag
    return sqrt(acc)


cdef void _rotate(double complex[:, ::1] a, double complex[:, ::1] vt, bint want_v,
                  Py_ssize_t m, Py_ssize_t p, Py_ssize_t q,
                  double c, double s, double complex e) noexcept nogil:
    cdef Py_ssize_t k
    cdef double complex x, y
    cdef double complex se = s * e
    cdef double complex ce = c * e
    cdef double complex sec = se.conjugate()
    cdef double complex cec = ce.conjugate()
    cdef double complex bpp, bpq, bqp, bqq
    for k in range(m):
        x = a[p, k]
        y = a[q, k]
        a[p, k] = c * x - se * y
        a[q, k] = s * x + ce * y
    bpp = a[p, p]
    bpq = a[p, q]
    bqp = a[q, p]
    bqq = a[q, q]
    for k in range(m):
        a[k, p] = a[p, k].conjugate()
        a[k, q] = a[q, k].conjugate()
    a[p, p] = (c * bpp - sec * bpq).real
    a[q, q] = (s * bqp + cec * bqq).real
    a[p, q] = 0.0
    a[q, p] = 0.0
    if want_v:
        for k in range(m):
            x = vt[p, k]
            y = vt[q, k]
            vt[p, k] = c * x - sec * y
            vt[q, k] = s * x + cec * y


cdef int _run(double complex[:, ::1] a, double complex[:, ::1] vt, bint want_v,
              int max_sweeps, double tol) noexcept nogil:
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t p, q
    cdef int sweep
    cdef double r, tau, t, c, s
    cdef double skip = tol / m
    cdef double complex apq, e
    for sweep in range(max_sweeps + 1):
        if _off_norm(a, m) <= tol:
            return sweep
        if sweep == max_sweeps:
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                r = hypot(apq.real, apq.imag)
                if r <= skip:
                    continue
                e = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau >= 0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                _rotate(a, vt, want_v, m, p, q, c, s, e)
    return -1


def jacobi(double complex[:, ::1] a, v, int max_sweeps, double tol):
    """Diagonalize ``a`` in place; same contract as the pure-Python kernel."""
    if a.shape[0] == 0:
        return 0
    cdef bint want_v = v is not None
    cdef double complex[:, ::1] vt
    if want_v:
        vt = np.ascontiguousarray(np.asarray(v).T)
    else:
        vt = a
    cdef int result
    with nogil:
        result = _run(a, vt, want_v, max_sweeps, tol)
    if want_v:
        v[...] = np.asarray(vt).T
    return result
