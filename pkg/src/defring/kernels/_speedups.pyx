# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled versions of the hot kernels (see _fallback.py for the contract)."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def rref_modp(a, long p):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] r = np.ascontiguousarray(
        np.asarray(a, dtype=np.int64) % p
    )
    cdef Py_ssize_t nrows = r.shape[0], ncols = r.shape[1]
    cdef Py_ssize_t row = 0, col, i, j, piv
    cdef long inv, factor, tmp
    pivots = []
    for col in range(ncols):
        if row == nrows:
            break
        piv = -1
        for i in range(row, nrows):
            if r[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(ncols):
                tmp = r[row, j]
                r[row, j] = r[piv, j]
                r[piv, j] = tmp
        inv = pow(int(r[row, col]), p - 2, p)
        for j in range(ncols):
            r[row, j] = (r[row, j] * inv) % p
        for i in range(nrows):
            if i == row:
                continue
            factor = r[i, col]
            if factor != 0:
                for j in range(ncols):
                    r[i, j] = (r[i, j] + (p - factor) * r[row, j]) % p
        pivots.append(col)
        row += 1
    return np.asarray(r), pivots


def rank_modp(a, long p):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] r = np.ascontiguousarray(
        np.asarray(a, dtype=np.int64) % p
    )
    cdef Py_ssize_t nrows = r.shape[0], ncols = r.shape[1]
    cdef Py_ssize_t row = 0, col, i, j, piv
    cdef long inv, factor, tmp
    for col in range(ncols):
        if row == nrows:
            break
        piv = -1
        for i in range(row, nrows):
            if r[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(col, ncols):
                tmp = r[row, j]
                r[row, j] = r[piv, j]
                r[piv, j] = tmp
        inv = pow(int(r[row, col]), p - 2, p)
        for j in range(col, ncols):
            r[row, j] = (r[row, j] * inv) % p
        for i in range(row + 1, nrows):
            factor = r[i, col]
            if factor != 0:
                for j in range(col, ncols):
                    r[i, j] = (r[i, j] + (p - factor) * r[row, j]) % p
        row += 1
    return row


def nullspace_modp(a, long p):
    r, pivots = rref_modp(a, p)
    cdef Py_ssize_t ncols = r.shape[1]
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    cdef Py_ssize_t k, i
    for k in range(len(free)):
        fc = free[k]
        basis[k, fc] = 1
        for i in range(len(pivots)):
            basis[k, pivots[i]] = (-int(r[i, fc])) % p
    return basis


def solve_modp(a, b, long p):
    a = np.asarray(a, dtype=np.int64) % p
    bvec = np.asarray(b, dtype=np.int64).reshape(-1) % p
    aug = np.hstack([a, bvec[:, None]])
    r, pivots = rref_modp(aug, p)
    ncols = a.shape[1]
    if ncols in pivots:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, ncols]
    return x


def table_matmul(a, b, add, mul):
    cdef cnp.ndarray[cnp.int64_t, ndim=3] aa = np.ascontiguousarray(a, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=3] bb = np.ascontiguousarray(b, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] addt = np.ascontiguousarray(add, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] mult = np.ascontiguousarray(mul, dtype=np.int64)
    cdef Py_ssize_t n = aa.shape[0], d = aa.shape[1], k = aa.shape[2], m = bb.shape[2]
    cdef cnp.ndarray[cnp.int64_t, ndim=3] out = np.empty((n, d, m), dtype=np.int64)
    cdef Py_ssize_t t, i, j, l
    cdef long acc
    for t in range(n):
        for i in range(d):
            for j in range(m):
                acc = mult[aa[t, i, 0], bb[t, 0, j]]
                for l in range(1, k):
                    acc = addt[acc, mult[aa[t, i, l], bb[t, l, j]]]
                out[t, i, j] = acc
    return out


def table_matmul_single(a, b, add, mul):
    cdef cnp.ndarray[cnp.int64_t, ndim=3] aa = np.ascontiguousarray(a, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] bb = np.ascontiguousarray(b, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] addt = np.ascontiguousarray(add, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] mult = np.ascontiguousarray(mul, dtype=np.int64)
    cdef Py_ssize_t n = aa.shape[0], d = aa.shape[1], k = aa.shape[2], m = bb.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=3] out = np.empty((n, d, m), dtype=np.int64)
    cdef Py_ssize_t t, i, j, l
    cdef long acc
    for t in range(n):
        for i in range(d):
            for j in range(m):
                acc = mult[aa[t, i, 0], bb[0, j]]
                for l in range(1, k):
                    acc = addt[acc, mult[aa[t, i, l], bb[l, j]]]
                out[t, i, j] = acc
    return out
