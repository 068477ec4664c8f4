# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: order-complex chain enumeration and F2 boundary ranks.

Both functions mirror :mod:`fiberscope._kernels._fallback` exactly (same
inputs, same outputs, same chain order).
"""
import numpy as np
cimport numpy as cnp
from libcpp.vector cimport vector
from libc.stdint cimport int32_t, int64_t
from libcpp.algorithm cimport sort

cnp.import_array()


def chains_from_below(const int32_t[:] indptr, const int32_t[:] indices, int n):
    """Enumerate all strict chains of a poset given by strictly-below lists.

    Element ids must form a linear extension and each below-list must be
    sorted ascending.  Returns one ``(count, k+1)`` int32 array per
    dimension ``k``; rows run bottom to top and are sorted colexicographically.
    """
    cdef vector[vector[int32_t]] out
    cdef vector[int32_t] stack_el      # element at each depth
    cdef vector[int32_t] stack_pos     # next index into below-list at each depth
    cdef int depth, k, t, x, j
    cdef int32_t nxt
    for t in range(n):
        stack_el.clear()
        stack_pos.clear()
        stack_el.push_back(t)
        stack_pos.push_back(indptr[t])
        # emit the 0-chain (t)
        if out.size() < 1:
            out.resize(1)
        out[0].push_back(t)
        while stack_el.size() > 0:
            depth = stack_el.size() - 1
            x = stack_el[depth]
            if stack_pos[depth] >= indptr[x + 1]:
                stack_el.pop_back()
                stack_pos.pop_back()
                continue
            nxt = indices[stack_pos[depth]]
            stack_pos[depth] += 1
            stack_el.push_back(nxt)
            stack_pos.push_back(indptr[nxt])
            k = stack_el.size() - 1
            if <int>out.size() <= k:
                out.resize(k + 1)
            # row stored bottom -> top
            for j in range(k, -1, -1):
                out[k].push_back(stack_el[j])
    result = []
    cdef int32_t[:, ::1] view
    cdef Py_ssize_t rows, i
    for k in range(<int>out.size()):
        rows = out[k].size() // (k + 1)
        arr = np.empty((rows, k + 1), dtype=np.int32)
        view = arr
        for i in range(rows):
            for j in range(k + 1):
                view[i, j] = out[k][i * (k + 1) + j]
        result.append(arr)
    return result


cdef inline int colex_cmp(const int32_t* a, const int32_t* b, int width) nogil:
    cdef int j
    for j in range(width - 1, -1, -1):
        if a[j] < b[j]:
            return -1
        if a[j] > b[j]:
            return 1
    return 0


cdef Py_ssize_t find_row(const int32_t[:, ::1] rows, const int32_t* key, int width) nogil:
    cdef Py_ssize_t lo = 0, hi = rows.shape[0] - 1, mid
    cdef int c
    while lo <= hi:
        mid = (lo + hi) >> 1
        c = colex_cmp(&rows[mid, 0], key, width)
        if c == 0:
            return mid
        if c < 0:
            lo = mid + 1
        else:
            hi = mid - 1
    return -1


cdef void sym_diff(vector[int32_t]& a, const vector[int32_t]& b, vector[int32_t]& tmp) nogil:
    # a <- a xor b, both sorted ascending
    tmp.clear()
    cdef size_t i = 0, j = 0
    cdef size_t na = a.size(), nb = b.size()
    while i < na and j < nb:
        if a[i] < b[j]:
            tmp.push_back(a[i]); i += 1
        elif a[i] > b[j]:
            tmp.push_back(b[j]); j += 1
        else:
            i += 1; j += 1
    while i < na:
        tmp.push_back(a[i]); i += 1
    while j < nb:
        tmp.push_back(b[j]); j += 1
    a.swap(tmp)


def boundary_ranks(list chains):
    """Ranks over F2 of the boundary maps of a simplicial complex.

    ``chains[k]`` is the colex-sorted ``(n_k, k+1)`` array of k-simplices.
    Returns ``ranks`` with ``ranks[k] = rank(d_k)`` and ``ranks[0] = 0``.
    Uses column reduction with clearing, top dimension first.
    """
    cdef int K = len(chains) - 1
    ranks = [0] * (K + 1)
    cdef vector[char] cleared, next_cleared
    cdef int32_t[:, ::1] hi_rows
    cdef int32_t[:, ::1] lo_rows
    cdef vector[int32_t] key, col, tmp
    cdef vector[vector[int32_t]] reduced
    cdef vector[int64_t] pivot_col
    cdef Py_ssize_t ncols, nrows, c, r
    cdef int k, j, m, width
    cdef int64_t rank, low
    for k in range(K, 0, -1):
        hi_rows = np.ascontiguousarray(chains[k], dtype=np.int32)
        lo_rows = np.ascontiguousarray(chains[k - 1], dtype=np.int32)
        ncols = hi_rows.shape[0]
        nrows = lo_rows.shape[0]
        width = k
        next_cleared.assign(nrows, 0)
        pivot_col.assign(nrows, -1)
        reduced.clear()
        reduced.resize(ncols)
        rank = 0
        key.resize(width)
        with nogil:
            for c in range(ncols):
                if k < K and cleared[c]:
                    continue
                col.clear()
                for j in range(k + 1):
                    m = 0
                    for r in range(k + 1):
                        if r != j:
                            key[m] = hi_rows[c, r]
                            m += 1
                    col.push_back(<int32_t>find_row(lo_rows, key.data(), width))
                sort(col.begin(), col.end())
                while col.size() > 0:
                    low = col.back()
                    if pivot_col[low] < 0:
                        break
                    sym_diff(col, reduced[pivot_col[low]], tmp)
                if col.size() > 0:
                    low = col.back()
                    pivot_col[low] = c
                    next_cleared[low] = 1
                    reduced[c].swap(col)
                    rank += 1
        ranks[k] = rank
        cleared.swap(next_cleared)
        reduced.clear()
    return ranks
