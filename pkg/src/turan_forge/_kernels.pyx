# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bitset kernels for common-neighbourhood search.

Same call signatures and results as ``_kernels_py``.
"""

import numpy as np

from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline Py_ssize_t _and_count(uint64_t* dst, const uint64_t* a, const uint64_t* b,
                                  Py_ssize_t nw) noexcept nogil:
    cdef Py_ssize_t i, c = 0
    cdef uint64_t w
    for i in range(nw):
        w = a[i] & b[i]
        dst[i] = w
        c += __builtin_popcountll(w)
    return c


cdef inline Py_ssize_t _copy_count(uint64_t* dst, const uint64_t* a, Py_ssize_t nw) noexcept nogil:
    cdef Py_ssize_t i, c = 0
    for i in range(nw):
        dst[i] = a[i]
        c += __builtin_popcountll(a[i])
    return c


def kst_scan(const uint64_t[:, ::1] rows, int s, long long t, long long budget,
             Py_ssize_t lead_lo=0, Py_ssize_t lead_hi=-1):
    """Depth-first scan of s-subsets of rows in lexicographic order.

    Only subsets whose smallest index lies in ``[lead_lo, lead_hi)`` are
    visited.  Returns ``(examined, complete, subset, common_row)`` where
    ``subset`` is the first s-subset with at least ``t`` common bits (or None)
    and ``common_row`` is the intersection of its rows.  ``examined`` counts
    intersections computed; ``complete`` is False iff the budget ran out.
    """
    cdef Py_ssize_t n = rows.shape[0], nw = rows.shape[1]
    if lead_hi < 0 or lead_hi > n:
        lead_hi = n
    if s < 1 or s > n or lead_lo >= lead_hi:
        return 0, True, None, None
    cdef uint64_t* acc = <uint64_t*> malloc(max(1, s * nw) * sizeof(uint64_t))
    cdef Py_ssize_t* idx = <Py_ssize_t*> malloc(s * sizeof(Py_ssize_t))
    if acc == NULL or idx == NULL:
        free(acc); free(idx)
        raise MemoryError()
    cdef long long examined = 0
    cdef int depth = 0, status = 0  # 1 found, 2 budget exhausted
    cdef Py_ssize_t cnt
    idx[0] = lead_lo
    with nogil:
        while True:
            if idx[depth] > n - (s - depth) or (depth == 0 and idx[0] >= lead_hi):
                if depth == 0:
                    break
                depth -= 1
                idx[depth] += 1
                continue
            if examined >= budget:
                status = 2
                break
            examined += 1
            if depth == 0:
                cnt = _copy_count(acc, &rows[idx[0], 0], nw)
            else:
                cnt = _and_count(acc + depth * nw, acc + (depth - 1) * nw, &rows[idx[depth], 0], nw)
            if cnt < t:
                idx[depth] += 1
                continue
            if depth == s - 1:
                status = 1
                break
            depth += 1
            idx[depth] = idx[depth - 1] + 1
    try:
        if status == 1:
            subset = tuple(idx[i] for i in range(s))
            common = np.empty(nw, dtype=np.uint64)
            for i in range(nw):
                common[i] = acc[(s - 1) * nw + i]
            return examined, True, subset, common
        return examined, status != 2, None, None
    finally:
        free(acc)
        free(idx)


def max_codegree_exhaustive(const uint64_t[:, ::1] rows, int s):
    """Largest common-neighbourhood size over all s-subsets of rows."""
    cdef Py_ssize_t n = rows.shape[0], nw = rows.shape[1]
    if s < 1 or s > n:
        return 0
    cdef uint64_t* acc = <uint64_t*> malloc(max(1, s * nw) * sizeof(uint64_t))
    cdef Py_ssize_t* idx = <Py_ssize_t*> malloc(s * sizeof(Py_ssize_t))
    if acc == NULL or idx == NULL:
        free(acc); free(idx)
        raise MemoryError()
    cdef long long best = -1
    cdef int depth = 0
    cdef Py_ssize_t cnt
    idx[0] = 0
    with nogil:
        while True:
            if idx[depth] > n - (s - depth):
                if depth == 0:
                    break
                depth -= 1
                idx[depth] += 1
                continue
            if depth == 0:
                cnt = _copy_count(acc, &rows[idx[0], 0], nw)
            else:
                cnt = _and_count(acc + depth * nw, acc + (depth - 1) * nw, &rows[idx[depth], 0], nw)
            # intersections only shrink, so a branch at or below the best is dead
            if cnt <= best:
                idx[depth] += 1
                continue
            if depth == s - 1:
                best = cnt
                idx[depth] += 1
                continue
            depth += 1
            idx[depth] = idx[depth - 1] + 1
    free(acc)
    free(idx)
    return max(best, 0)


def subset_codegrees(const uint64_t[:, ::1] rows, const int64_t[:, ::1] subsets):
    """Common-neighbourhood size of each listed subset of rows."""
    cdef Py_ssize_t m = subsets.shape[0], k = subsets.shape[1], nw = rows.shape[1]
    cdef Py_ssize_t i, j, w, c
    cdef uint64_t x
    out = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] out_v = out
    with nogil:
        for i in range(m):
            c = 0
            for w in range(nw):
                x = rows[subsets[i, 0], w]
                for j in range(1, k):
                    x = x & rows[subsets[i, j], w]
                c += __builtin_popcountll(x)
            out_v[i] = c
    return out
