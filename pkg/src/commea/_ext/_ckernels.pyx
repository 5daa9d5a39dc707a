# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled O(n^2) kernels. Same contracts and summation order as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, INFINITY

cnp.import_array()


def dominance_matrix(F):
    cdef double[:, ::1] f = np.ascontiguousarray(F, dtype=np.float64)
    cdef Py_ssize_t n = f.shape[0], m = f.shape[1], i, j, k
    out = np.zeros((n, n), dtype=np.uint8)
    cdef unsigned char[:, ::1] dom = out
    cdef bint le, lt
    for i in range(n):
        for j in range(n):
            le = True
            lt = False
            for k in range(m):
                if f[i, k] > f[j, k]:
                    le = False
                    break
                if f[i, k] < f[j, k]:
                    lt = True
            if le and lt:
                dom[i, j] = 1
    return out


def pairwise_distances(V):
    cdef double[:, ::1] v = np.ascontiguousarray(V, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0], d = v.shape[1], i, j, k
    out = np.zeros((n, n))
    cdef double[:, ::1] dist = out
    cdef double acc, t
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for k in range(d):
                t = v[i, k] - v[j, k]
                acc += t * t
            dist[i, j] = sqrt(acc)
    return out


def nd_ranks(dom_in):
    cdef unsigned char[:, ::1] dom = np.ascontiguousarray(dom_in, dtype=np.uint8)
    cdef Py_ssize_t n = dom.shape[0], i, j, assigned = 0
    cdef cnp.int64_t front = 1
    counts_arr = np.zeros(n, dtype=np.int64)
    ranks_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] counts = counts_arr
    cdef cnp.int64_t[::1] ranks = ranks_arr
    for i in range(n):
        for j in range(n):
            counts[j] += dom[i, j]
    while assigned < n:
        for i in range(n):
            if counts[i] == 0:
                ranks[i] = front
                assigned += 1
        for i in range(n):
            if ranks[i] == front:
                counts[i] = -1
                for j in range(n):
                    counts[j] -= dom[i, j]
        front += 1
    return ranks_arr


def local_convergence(dom_in, dist_in, double radius):
    cdef unsigned char[:, ::1] dom = np.ascontiguousarray(dom_in, dtype=np.uint8)
    cdef double[:, ::1] dist = np.ascontiguousarray(dist_in, dtype=np.float64)
    cdef Py_ssize_t n = dom.shape[0], i, j
    strength_arr = np.zeros(n, dtype=np.int64)
    out = np.zeros(n)
    cdef cnp.int64_t[::1] strength = strength_arr
    cdef double[::1] ilc = out
    for i in range(n):
        for j in range(n):
            if i != j and dist[i, j] < radius and dom[i, j]:
                strength[i] += 1
    for i in range(n):
        for j in range(n):
            if i != j and dist[j, i] < radius and dom[j, i]:
                ilc[i] += strength[j]
    return out


def inverse_distance_sums(dist_in):
    cdef double[:, ::1] dist = np.ascontiguousarray(dist_in, dtype=np.float64)
    cdef Py_ssize_t n = dist.shape[0], i, j
    kappa_arr = np.zeros(n)
    dup_arr = np.zeros(n, dtype=np.int64)
    cdef double[::1] kappa = kappa_arr
    cdef cnp.int64_t[::1] dup = dup_arr
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if dist[i, j] == 0.0:
                dup[i] += 1
            else:
                kappa[i] += 1.0 / dist[i, j]
    return kappa_arr, dup_arr


cdef inline double _inv(double d) nogil:
    return 0.0 if d == 0.0 else 1.0 / d


def crowd_truncate(dist_a_in, dist_b_in, Py_ssize_t target):
    cdef double[:, ::1] da = np.ascontiguousarray(dist_a_in, dtype=np.float64)
    cdef Py_ssize_t n = da.shape[0]
    if target >= n:
        return np.arange(n)
    cdef bint combined = dist_b_in is not None
    cdef double[:, ::1] db = np.ascontiguousarray(
        dist_b_in if combined else np.zeros((1, 1)), dtype=np.float64)
    ka_arr = np.zeros(n)
    kb_arr = np.zeros(n)
    dup_arr = np.zeros(n, dtype=np.int64)
    alive_arr = np.ones(n, dtype=np.uint8)
    cdef double[::1] ka = ka_arr
    cdef double[::1] kb = kb_arr
    cdef cnp.int64_t[::1] dup = dup_arr
    cdef unsigned char[::1] alive = alive_arr
    cdef Py_ssize_t i, j, r, remaining = n, cnt
    cdef cnp.int64_t top
    cdef double ma, mb, score, best
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            ka[i] += _inv(da[i, j])
            if da[i, j] == 0.0:
                dup[i] += 1
            if combined:
                kb[i] += _inv(db[i, j])
                if db[i, j] == 0.0:
                    dup[i] += 1
    while remaining > target:
        top = -1
        ma = 0.0
        mb = 0.0
        cnt = 0
        for i in range(n):
            if alive[i]:
                if dup[i] > top:
                    top = dup[i]
                ma += ka[i]
                mb += kb[i]
                cnt += 1
        ma = ma / cnt
        mb = mb / cnt
        r = -1
        best = -INFINITY
        for i in range(n):
            if not alive[i] or dup[i] != top:
                continue
            if combined:
                score = 0.5 * ((ka[i] / ma if ma > 0 else ka[i]) + (kb[i] / mb if mb > 0 else kb[i]))
            else:
                score = ka[i]
            if r < 0 or score > best:
                best = score
                r = i
        alive[r] = 0
        remaining -= 1
        for i in range(n):
            ka[i] -= _inv(da[i, r]) if i != r else 0.0
            if i != r and da[i, r] == 0.0:
                dup[i] -= 1
            if combined:
                kb[i] -= _inv(db[i, r]) if i != r else 0.0
                if i != r and db[i, r] == 0.0:
                    dup[i] -= 1
    return np.flatnonzero(alive_arr)
