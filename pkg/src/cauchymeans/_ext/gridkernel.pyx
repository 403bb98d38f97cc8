# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid reduction for the functional-equation residual scans."""
from libc.math cimport fabs, INFINITY


def grid_max_residual(const double[::1] P, const double[::1] u, const double[::1] w,
                      int sign, const unsigned char[::1] mid_skip,
                      const unsigned char[::1] pt_skip):
    cdef Py_ssize_t n = u.shape[0]
    cdef Py_ssize_t i, j
    cdef Py_ssize_t bi = -1, bj = -1
    cdef long long skipped = 0
    cdef double best = -1.0
    cdef double r, s = <double>sign
    if P.shape[0] != 2 * n - 1 or w.shape[0] != n:
        raise ValueError("shape mismatch")
    if mid_skip.shape[0] != 2 * n - 1 or pt_skip.shape[0] != n:
        raise ValueError("mask shape mismatch")
    with nogil:
        for i in range(n):
            for j in range(n):
                if mid_skip[i + j] or pt_skip[i] or pt_skip[j]:
                    skipped += 1
                    continue
                r = fabs(P[i + j] * (u[i] + s * u[j]) - (w[i] + s * w[j]))
                if r != r:
                    r = INFINITY
                if r > best:
                    best = r
                    bi = i
                    bj = j
    if bi < 0:
        return 0.0, -1, -1, skipped
    return best, bi, bj, skipped
