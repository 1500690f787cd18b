# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the dense-evaluation kernels."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, cos, sin, INFINITY

cnp.import_array()


cdef inline double _maxdist(double x, double y, const double[:, ::1] s) noexcept nogil:
    cdef Py_ssize_t i
    cdef double best = 0.0, dx, dy, d
    for i in range(s.shape[0]):
        dx = x - s[i, 0]
        dy = y - s[i, 1]
        d = dx * dx + dy * dy
        if d > best:
            best = d
    return sqrt(best)


def max_distances(xy, sites):
    cdef const double[:, ::1] X = np.ascontiguousarray(xy, dtype=np.float64)
    cdef const double[:, ::1] S = np.ascontiguousarray(sites, dtype=np.float64)
    out = np.empty(X.shape[0])
    cdef double[::1] o = out
    cdef Py_ssize_t k
    with nogil:
        for k in range(X.shape[0]):
            o[k] = _maxdist(X[k, 0], X[k, 1], S)
    return out


def objective_values(xy, sites, p):
    cdef const double[:, ::1] X = np.ascontiguousarray(xy, dtype=np.float64)
    cdef const double[:, ::1] S = np.ascontiguousarray(sites, dtype=np.float64)
    cdef double px = p[0], py = p[1], dx, dy
    out = np.empty(X.shape[0])
    cdef double[::1] o = out
    cdef Py_ssize_t k
    with nogil:
        for k in range(X.shape[0]):
            dx = X[k, 0] - px
            dy = X[k, 1] - py
            o[k] = sqrt(dx * dx + dy * dy) / _maxdist(X[k, 0], X[k, 1], S)
    return out


def grid_max(double x0, double y0, double h, Py_ssize_t n, sites, p):
    cdef const double[:, ::1] S = np.ascontiguousarray(sites, dtype=np.float64)
    cdef double px = p[0], py = p[1], x, y, dx, dy, f
    cdef double best = -INFINITY
    cdef Py_ssize_t i, j, bi = 0, bj = 0
    with nogil:
        for j in range(n):
            y = y0 + h * j
            for i in range(n):
                x = x0 + h * i
                dx = x - px
                dy = y - py
                f = sqrt(dx * dx + dy * dy) / _maxdist(x, y, S)
                if f > best:
                    best = f
                    bi = i
                    bj = j
    return best, bi, bj


def rigid_scan(thetas, lo, hi, Py_ssize_t n, sites, p, double C, double tol=1e-9):
    cdef const double[::1] T = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef const double[:, ::1] L = np.ascontiguousarray(lo, dtype=np.float64)
    cdef const double[:, ::1] H = np.ascontiguousarray(hi, dtype=np.float64)
    cdef const double[:, ::1] S = np.ascontiguousarray(sites, dtype=np.float64)
    cdef Py_ssize_t nt = T.shape[0], m = S.shape[0]
    vals = np.full(nt, -np.inf)
    us = np.zeros((nt, 2))
    cdef double[::1] V = vals
    cdef double[:, ::1] U = us
    cdef double limit = (C + tol) * (C + tol)
    cdef double p0 = p[0], p1 = p[1]
    cdef double c, s, ux, uy, dx, dy, v, best, bx, by, wx, wy, den = (n - 1) if n > 1 else 1
    cdef Py_ssize_t k, i, j, q
    cdef bint ok
    with nogil:
        for k in range(nt):
            c = cos(T[k]) - 1.0
            s = sin(T[k])
            wx = H[k, 0] - L[k, 0]
            wy = H[k, 1] - L[k, 1]
            best = -1.0
            bx = 0.0
            by = 0.0
            for j in range(n):
                uy = L[k, 1] + wy * (j / den)
                for i in range(n):
                    ux = L[k, 0] + wx * (i / den)
                    ok = True
                    for q in range(m):
                        dx = ux + c * S[q, 0] - s * S[q, 1]
                        dy = uy + s * S[q, 0] + c * S[q, 1]
                        if dx * dx + dy * dy > limit:
                            ok = False
                            break
                    if not ok:
                        continue
                    dx = ux + c * p0 - s * p1
                    dy = uy + s * p0 + c * p1
                    v = dx * dx + dy * dy
                    if v > best:
                        best = v
                        bx = ux
                        by = uy
            if best >= 0.0:
                V[k] = sqrt(best)
                U[k, 0] = bx
                U[k, 1] = by
    return vals, us
