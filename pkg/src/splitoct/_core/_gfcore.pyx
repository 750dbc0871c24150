# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(p) kernels: sparse bilinear products and incremental row reduction."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


def bilinear(const i64[:, :] X, const i64[:, :] Y, const i64[:, :] triples, i64 p, Py_ssize_t n_out):
    """out[:, k] = sum over (i, j, k, c) of c * X[:, i] * Y[:, j]  (mod p)."""
    cdef Py_ssize_t N = X.shape[0], m = triples.shape[0]
    cdef Py_ssize_t r, t, i, j, k
    cdef i64 c, v
    out = np.zeros((N, n_out), dtype=np.int64)
    cdef i64[:, :] o = out
    for r in range(N):
        for t in range(m):
            i = triples[t, 0]
            j = triples[t, 1]
            v = X[r, i]
            if v == 0:
                continue
            v = v * Y[r, j] % p
            if v == 0:
                continue
            k = triples[t, 2]
            c = triples[t, 3]
            o[r, k] = (o[r, k] + c * v) % p
    return out


cdef inline i64 _inv(i64 a, i64 p):
    # Fermat inverse, a != 0 mod p
    cdef i64 result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def rref_insert(i64[:, :] basis, i64[:] pivots, Py_ssize_t rank, const i64[:, :] rows, i64 p):
    """Insert rows into a fully reduced echelon basis in place; return the new rank.

    ``basis[:rank]`` holds rows with a 1 in column ``pivots[r]`` and zeros in
    every other pivot column.
    """
    cdef Py_ssize_t ncols = basis.shape[1], cap = basis.shape[0]
    cdef Py_ssize_t m = rows.shape[0]
    cdef Py_ssize_t a, r, c, lead
    cdef i64 f, inv
    cdef i64[:] work = np.empty(ncols, dtype=np.int64)
    for a in range(m):
        if rank == cap:
            break
        for c in range(ncols):
            work[c] = rows[a, c] % p
        for r in range(rank):
            f = work[pivots[r]]
            if f != 0:
                for c in range(ncols):
                    if basis[r, c] != 0:
                        work[c] = (work[c] - f * basis[r, c]) % p
                        if work[c] < 0:
                            work[c] += p
        lead = -1
        for c in range(ncols):
            if work[c] != 0:
                lead = c
                break
        if lead < 0:
            continue
        inv = _inv(work[lead], p)
        for c in range(ncols):
            work[c] = work[c] * inv % p
        for r in range(rank):
            f = basis[r, lead]
            if f != 0:
                for c in range(ncols):
                    if work[c] != 0:
                        basis[r, c] = (basis[r, c] - f * work[c]) % p
                        if basis[r, c] < 0:
                            basis[r, c] += p
        for c in range(ncols):
            basis[rank, c] = work[c]
        pivots[rank] = lead
        rank += 1
    return rank
