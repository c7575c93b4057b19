# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) kernels over rows packed into little-endian uint64 words.

Bit ``b`` of word ``w`` holds column ``64 * w + b``.
"""
import numpy as np

cimport numpy as cnp
from libc.stdint cimport uint64_t

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef Py_ssize_t _rank_inplace(uint64_t[:, ::1] a) noexcept nogil:
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t nw = a.shape[1]
    cdef Py_ssize_t r = 0, i, k, word, p
    cdef int b
    cdef uint64_t bit, tmp
    for word in range(nw):
        for b in range(64):
            bit = (<uint64_t>1) << b
            p = -1
            for i in range(r, m):
                if a[i, word] & bit:
                    p = i
                    break
            if p < 0:
                continue
            if p != r:
                for k in range(word, nw):
                    tmp = a[r, k]
                    a[r, k] = a[p, k]
                    a[p, k] = tmp
            for i in range(r + 1, m):
                if a[i, word] & bit:
                    for k in range(word, nw):
                        a[i, k] ^= a[r, k]
            r += 1
            if r == m:
                return r
    return r


def rank_words(const uint64_t[:, ::1] rows):
    """Rank over GF(2) of the packed row matrix."""
    if rows.shape[0] == 0 or rows.shape[1] == 0:
        return 0
    work = np.array(rows, dtype=np.uint64, copy=True)
    cdef uint64_t[:, ::1] a = work
    cdef Py_ssize_t r
    with nogil:
        r = _rank_inplace(a)
    return r


def min_weight_words(const uint64_t[:, ::1] basis):
    """Minimum Hamming weight over all nonzero combinations of ``basis`` rows.

    Walks the 2^k - 1 combinations in Gray-code order so each step costs one
    row XOR. Returns -1 for an empty basis.
    """
    cdef Py_ssize_t k = basis.shape[0]
    cdef Py_ssize_t nw = basis.shape[1]
    if k == 0:
        return -1
    if k > 62:
        raise OverflowError("enumeration over more than 2^62 combinations")
    cur_arr = np.zeros(nw, dtype=np.uint64)
    cdef uint64_t[::1] cur = cur_arr
    cdef uint64_t g, total = (<uint64_t>1) << k
    cdef Py_ssize_t flip, w
    cdef long best = -1, weight
    with nogil:
        g = 1
        while g < total:
            flip = __builtin_ctzll(g)
            weight = 0
            for w in range(nw):
                cur[w] ^= basis[flip, w]
                weight += __builtin_popcountll(cur[w])
            if best < 0 or weight < best:
                best = weight
            g += 1
    return best
