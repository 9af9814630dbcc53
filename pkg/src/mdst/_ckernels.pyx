# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numeric kernels; see ``_pykernels`` for the reference versions."""
import numpy as np
cimport numpy as cnp

cdef long long BIG = 1LL << 62


def floyd_warshall(Py_ssize_t n, edges):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] arr = np.full((n, n), BIG, dtype=np.int64)
    cdef long long[:, ::1] d = arr
    cdef Py_ssize_t i, j, k
    cdef long long w, dik, alt
    for i in range(n):
        d[i, i] = 0
    for e in edges:
        i = e[0]
        j = e[1]
        w = e[2]
        if w < d[i, j]:
            d[i, j] = w
            d[j, i] = w
    for k in range(n):
        for i in range(n):
            dik = d[i, k]
            if dik >= BIG:
                continue
            for j in range(n):
                alt = dik + d[k, j]
                if alt < d[i, j]:
                    d[i, j] = alt
    return arr.tolist()


cdef long long _boundary(long long[::1] du, long long[::1] dv, long long w,
                         long long alpha) nogil:
    cdef long long best = -BIG
    cdef long long back = w - alpha
    cdef long long x, y, v
    cdef Py_ssize_t z
    for z in range(du.shape[0]):
        x = alpha + du[z]
        y = back + dv[z]
        v = x if x < y else y
        if v > best:
            best = v
    return best


def boundary_value(du, dv, long long w, long long alpha):
    cdef long long[::1] a = np.ascontiguousarray(du, dtype=np.int64)
    cdef long long[::1] b = np.ascontiguousarray(dv, dtype=np.int64)
    return _boundary(a, b, w, alpha)


def edge_scan(du, dv, long long w):
    cdef long long[::1] a = np.ascontiguousarray(du, dtype=np.int64)
    cdef long long[::1] b = np.ascontiguousarray(dv, dtype=np.int64)
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j
    cdef long long num, alpha, val
    cdef long long best_val = _boundary(a, b, w, 0)
    cdef long long best_alpha = 0
    for i in range(n):
        for j in range(n):
            num = w + b[j] - a[i]
            if num <= 0 or num >= 2 * w:
                continue
            alpha = num // 2
            val = _boundary(a, b, w, alpha)
            if val < best_val or (val == best_val and alpha < best_alpha):
                best_val = val
                best_alpha = alpha
    val = _boundary(a, b, w, w)
    if val < best_val:
        best_val = val
        best_alpha = w
    return best_val, best_alpha
