"""Numpy implementations of the hot kernels.

These are the reference implementations; the compiled extension in
``_speedups.pyx`` must produce bit-identical results.  All mod-p routines
assume a prime modulus small enough that products fit in int64, which the
callers guarantee (moduli used in anger are < 2**16).
"""

from __future__ import annotations

import numpy as np


def _as_modp(a, p: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    return a % p


def rref_modp(a, p: int):
    """Reduced row echelon form over F_p.

    Returns ``(r, pivots)`` where ``r`` is the RREF matrix (int64) and
    ``pivots`` the list of pivot column indices, one per nonzero row.
    """
    r = _as_modp(a, p)
    nrows, ncols = r.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        sub = r[row:, col]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        inv = pow(int(r[row, col]), p - 2, p)
        r[row] = (r[row] * inv) % p
        column = r[:, col].copy()
        column[row] = 0
        r -= np.outer(column, r[row])
        r %= p
        pivots.append(col)
        row += 1
    return r, pivots


def rank_modp(a, p: int) -> int:
    """Rank of a matrix over F_p."""
    return len(rref_modp(a, p)[1])


def nullspace_modp(a, p: int) -> np.ndarray:
    """Basis of the right kernel over F_p, one vector per row (canonical)."""
    r, pivots = rref_modp(a, p)
    ncols = r.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-int(r[i, fc])) % p
    return basis


def solve_modp(a, b, p: int):
    """One solution of ``a @ x = b`` over F_p, or None if inconsistent."""
    a = _as_modp(a, p)
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    aug = np.hstack([a, b[:, None]])
    r, pivots = rref_modp(aug, p)
    ncols = a.shape[1]
    if ncols in pivots:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = r[i, ncols]
    return x


def table_matmul(a, b, add, mul):
    """Batched matrix product over a finite ring given by op tables.

    ``a`` has shape (n, d, k) and ``b`` (n, k, m); entries are element codes
    indexing the ``add``/``mul`` tables.  Returns the (n, d, m) products.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    bt = b.transpose(0, 2, 1)
    prod = mul[a[:, :, None, :], bt[:, None, :, :]]
    acc = prod[..., 0]
    for i in range(1, prod.shape[-1]):
        acc = add[acc, prod[..., i]]
    return acc


def table_matmul_single(a, b, add, mul):
    """Like :func:`table_matmul` with one shared right factor of shape (k, m)."""
    a = np.asarray(a)
    b = np.asarray(b)
    bt = b.T
    prod = mul[a[:, :, None, :], bt[None, None, :, :]]
    acc = prod[..., 0]
    for i in range(1, prod.shape[-1]):
        acc = add[acc, prod[..., i]]
    return acc
