# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; signatures match asmoments._kernels_py."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def walk_powers(modulus, gen_digits, long p, long count):
    cdef cnp.int64_t[:] mod = np.ascontiguousarray(modulus, dtype=np.int64)
    cdef cnp.int64_t[:] g = np.ascontiguousarray(gen_digits, dtype=np.int64)
    cdef Py_ssize_t n = mod.shape[0] - 1
    cdef cnp.int64_t[:] cur = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[:] prod = np.zeros(2 * n, dtype=np.int64)
    out_arr = np.zeros(count, dtype=np.int64)
    cdef cnp.int64_t[:] out = out_arr
    cdef Py_ssize_t k, i, j, top
    cdef cnp.int64_t c, code, pw
    cur[0] = 1
    for k in range(count):
        code = 0
        pw = 1
        for i in range(n):
            code += cur[i] * pw
            pw *= p
        out[k] = code
        for i in range(2 * n):
            prod[i] = 0
        for i in range(n):
            if cur[i] == 0:
                continue
            for j in range(n):
                prod[i + j] += cur[i] * g[j]
        for top in range(2 * n - 1, n - 1, -1):
            c = prod[top] % p
            if c != 0:
                for i in range(n + 1):
                    prod[top - n + i] -= c * mod[i]
        for i in range(n):
            c = prod[i] % p
            if c < 0:
                c += p
            cur[i] = c
    return out_arr


def residue_histogram(A, T, w, long p):
    cdef cnp.int64_t[:, :] a = np.ascontiguousarray(A, dtype=np.int64)
    cdef cnp.int64_t[:, :] t = np.ascontiguousarray(T, dtype=np.int64)
    cdef cnp.int64_t[:] wt = np.ascontiguousarray(w, dtype=np.int64)
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t npts = t.shape[0]
    cdef Py_ssize_t kk = a.shape[1]
    out_arr = np.zeros((m, p), dtype=np.int64)
    cdef cnp.int64_t[:, :] out = out_arr
    cdef Py_ssize_t i, j, l
    cdef cnp.int64_t s
    if npts == 0 or m == 0:
        return out_arr
    for i in range(m):
        for j in range(npts):
            s = 0
            for l in range(kk):
                s += a[i, l] * t[j, l]
            s %= p
            if s < 0:
                s += p
            out[i, s] += wt[j]
    return out_arr
