# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: all-subset quadratic values and the sweepout chain DP."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t


cdef void _fill(int64_t c, const int64_t[::1] a, const int64_t[:, ::1] q,
                int64_t[::1] out, int64_t[::1] pair) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t k, j, m, size, s
    cdef int64_t ak, qjk
    out[0] = c
    for k in range(n):
        size = 1 << k
        pair[0] = 0
        for j in range(k):
            s = 1 << j
            qjk = q[j, k]
            for m in range(s):
                pair[s + m] = pair[m] + qjk
        ak = a[k]
        for m in range(size):
            out[size + m] = out[m] + ak + pair[m]


def subset_values_into(int64_t const, linear, quad, int64_t[::1] out):
    cdef int64_t[::1] a = np.ascontiguousarray(linear, dtype=np.int64)
    cdef int64_t[:, ::1] q = np.ascontiguousarray(quad, dtype=np.int64).reshape(a.shape[0], a.shape[0])
    cdef Py_ssize_t n = a.shape[0]
    cdef int64_t[::1] pair = np.zeros(1 << (n - 1 if n > 0 else 0), dtype=np.int64)
    if out.shape[0] != (1 << n):
        raise ValueError("output length must be 2**n")
    with nogil:
        _fill(const, a, q, out, pair)


def chain_dp(values):
    cdef int64_t[::1] v = np.ascontiguousarray(values, dtype=np.int64)
    W_arr = np.empty_like(np.asarray(v))
    cdef int64_t[::1] W = W_arr
    cdef Py_ssize_t size = v.shape[0]
    cdef Py_ssize_t mask, m, low
    cdef int64_t best, w
    with nogil:
        W[0] = v[0]
        for mask in range(1, size):
            best = 0x7FFFFFFFFFFFFFFF
            m = mask
            while m:
                low = m & (-m)
                w = W[mask ^ low]
                if w < best:
                    best = w
                m ^= low
            W[mask] = best if best > v[mask] else v[mask]
    return W_arr
