# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Operation order mirrors ``_fallback`` exactly."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def gs_sweep(double[:, ::1] phi, const double[:, ::1] rhs):
    cdef Py_ssize_t h = phi.shape[0], w = phi.shape[1]
    cdef Py_ssize_t i, j, iu, id_, jl, jr
    cdef double s, v
    with nogil:
        for i in range(h):
            iu = i - 1 if i > 0 else 0
            id_ = i + 1 if i < h - 1 else h - 1
            for j in range(w):
                jl = j - 1 if j > 0 else 0
                jr = j + 1 if j < w - 1 else w - 1
                s = phi[iu, j] + phi[id_, j]
                s = s + phi[i, jl]
                s = s + phi[i, jr]
                s = s + rhs[i, j]
                v = 0.25 * s
                if v < 0.0:
                    v = 0.0
                if v > 1.0:
                    v = 1.0
                phi[i, j] = v
    return np.asarray(phi)


def correlate_rows(const double[:, ::1] f, const double[::1] w):
    cdef Py_ssize_t h = f.shape[0], n = f.shape[1], k = w.shape[0]
    cdef Py_ssize_t r = (k - 1) // 2
    cdef Py_ssize_t i, j, t, c
    cdef double acc
    out = np.empty((h, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    with nogil:
        for i in range(h):
            for j in range(n):
                acc = 0.0
                for t in range(k):
                    c = j + t - r
                    if c < 0:
                        c = 0
                    elif c >= n:
                        c = n - 1
                    acc = acc + w[t] * f[i, c]
                o[i, j] = acc
    return out


def correlate_cols(const double[:, ::1] f, const double[::1] w):
    cdef Py_ssize_t n = f.shape[0], wd = f.shape[1], k = w.shape[0]
    cdef Py_ssize_t r = (k - 1) // 2
    cdef Py_ssize_t i, j, t, c
    out = np.zeros((n, wd), dtype=np.float64)
    cdef double[:, ::1] o = out
    with nogil:
        # tap-outer loop keeps the summation order identical to the fallback
        for t in range(k):
            for i in range(n):
                c = i + t - r
                if c < 0:
                    c = 0
                elif c >= n:
                    c = n - 1
                for j in range(wd):
                    o[i, j] = o[i, j] + w[t] * f[c, j]
    return out


def correlate_direct(const double[:, ::1] f, const double[:, ::1] w):
    cdef Py_ssize_t h = f.shape[0], wd = f.shape[1]
    cdef Py_ssize_t ky = w.shape[0], kx = w.shape[1]
    cdef Py_ssize_t ry = (ky - 1) // 2, rx = (kx - 1) // 2
    cdef Py_ssize_t i, j, a, b, ci, cj
    cdef double acc
    out = np.empty((h, wd), dtype=np.float64)
    cdef double[:, ::1] o = out
    with nogil:
        for i in range(h):
            for j in range(wd):
                acc = 0.0
                for a in range(ky):
                    ci = i + a - ry
                    if ci < 0:
                        ci = 0
                    elif ci >= h:
                        ci = h - 1
                    for b in range(kx):
                        cj = j + b - rx
                        if cj < 0:
                            cj = 0
                        elif cj >= wd:
                            cj = wd - 1
                        acc = acc + w[a, b] * f[ci, cj]
                o[i, j] = acc
    return out
