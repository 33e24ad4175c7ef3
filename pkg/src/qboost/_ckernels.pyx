# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_kernels_py`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, uint8_t

cnp.import_array()

cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t _next(uint64_t* state) noexcept nogil:
    cdef uint64_t z
    state[0] += 0x9E3779B97F4A7C15ULL
    z = state[0]
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL
    return z ^ (z >> 31)


cdef inline double _uniform(uint64_t* state) noexcept nogil:
    return <double>(_next(state) >> 11) * INV_2_53


def fill_uniform(Py_ssize_t n, state):
    cdef uint64_t s = <uint64_t>state
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double[::1] view = out
    cdef Py_ssize_t k
    with nogil:
        for k in range(n):
            view[k] = _uniform(&s)
    return out, int(s)


def permutation(Py_ssize_t n, state):
    cdef uint64_t s = <uint64_t>state
    out = np.arange(n, dtype=np.int64)
    cdef int64_t[::1] perm = out
    cdef Py_ssize_t i, j
    cdef int64_t tmp
    with nogil:
        for i in range(n - 1, 0, -1):
            j = <Py_ssize_t>(_uniform(&s) * (i + 1))
            tmp = perm[i]
            perm[i] = perm[j]
            perm[j] = tmp
    return out, int(s)


def rejection_draws(gvals, Py_ssize_t size, state, Py_ssize_t max_rounds):
    cdef double[::1] g = np.ascontiguousarray(gvals, dtype=np.float64)
    cdef Py_ssize_t W = g.shape[0]
    cdef uint64_t s = <uint64_t>state
    idx_arr = np.zeros(size, dtype=np.int64)
    rounds_arr = np.zeros(size, dtype=np.int64)
    cdef int64_t[::1] idx = idx_arr
    cdef int64_t[::1] rounds = rounds_arr
    cdef Py_ssize_t k, r, theta
    cdef Py_ssize_t done = size
    cdef bint accepted
    with nogil:
        for k in range(size):
            accepted = False
            for r in range(1, max_rounds + 1):
                theta = <Py_ssize_t>(_uniform(&s) * W)
                if _uniform(&s) <= g[theta]:
                    idx[k] = theta
                    rounds[k] = r
                    accepted = True
                    break
            if not accepted:
                done = k
                break
    return idx_arr, rounds_arr, int(s), done


def constant_draws(acc, Py_ssize_t size, state, Py_ssize_t max_rounds):
    cdef const uint8_t[:, ::1] a = np.ascontiguousarray(acc, dtype=np.uint8)
    cdef Py_ssize_t W = a.shape[0]
    cdef Py_ssize_t N = a.shape[1]
    cdef uint64_t s = <uint64_t>state
    idx_arr = np.zeros(size, dtype=np.int64)
    rounds_arr = np.zeros(size, dtype=np.int64)
    cdef int64_t[::1] idx = idx_arr
    cdef int64_t[::1] rounds = rounds_arr
    cdef Py_ssize_t k, r, i, theta
    cdef Py_ssize_t done = size
    cdef bint accepted
    with nogil:
        for k in range(size):
            accepted = False
            for r in range(1, max_rounds + 1):
                i = <Py_ssize_t>(_uniform(&s) * N)
                theta = <Py_ssize_t>(_uniform(&s) * W)
                if a[theta, i]:
                    idx[k] = theta
                    rounds[k] = r
                    accepted = True
                    break
            if not accepted:
                done = k
                break
    return idx_arr, rounds_arr, int(s), done
