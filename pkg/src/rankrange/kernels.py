"""Gaussian elimination kernels on raw int64 arrays of residues mod p.

These work on plain numpy arrays so the enumeration code can call them on
whole stacks of matrices. The public, field-aware API lives in
:mod:`rankrange.matrix`.
"""

from __future__ import annotations

import numpy as np

from .field import inverse_mod


def rref(a, p: int):
    """Reduced row echelon form of ``a`` over F_p.

    Pivots are chosen as the first nonzero entry in column order and scaled
    to 1. Returns ``(R, pivots)`` with ``pivots`` the 0-based pivot columns.
    """
    R = np.array(a, dtype=np.int64) % p
    if R.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    m, n = R.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.flatnonzero(R[row:, col])
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            R[[row, piv]] = R[[piv, row]]
        R[row] = (R[row] * inverse_mod(int(R[row, col]), p)) % p
        f = R[:, col].copy()
        f[row] = 0
        if f.any():
            R = (R - np.outer(f, R[row])) % p
        pivots.append(col)
        row += 1
    return R, pivots


def row_basis(a, p: int):
    """Canonical (RREF, zero rows dropped) basis of the row space of ``a``."""
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, a.shape[-1] if a.ndim == 2 else 0), dtype=np.int64), []
    R, piv = rref(a, p)
    return R[: len(piv)].copy(), piv


def rank(a, p: int) -> int:
    return len(rref(a, p)[1])


def det(a, p: int) -> int:
    A = np.array(a, dtype=np.int64) % p
    n = A.shape[0]
    result = 1
    for col in range(n):
        nz = np.flatnonzero(A[col:, col])
        if nz.size == 0:
            return 0
        piv = col + int(nz[0])
        if piv != col:
            A[[col, piv]] = A[[piv, col]]
            result = -result
        pv = int(A[col, col])
        result = (result * pv) % p
        if col + 1 < n:
            f = (A[col + 1 :, col] * inverse_mod(pv, p)) % p
            A[col + 1 :] = (A[col + 1 :] - np.outer(f, A[col])) % p
    return result % p


def inverse(a, p: int):
    """Inverse of a square matrix, or None if it is singular."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    R, piv = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)) or len(piv) < n:
        return None
    return R[:, n:].copy()


def matmul(a, b, p: int):
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def nullspace(a, p: int):
    """Basis (as rows) of the right kernel {x : a x = 0}."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    R, piv = rref(a, p)
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, c in enumerate(piv):
            out[k, c] = (-R[i, f]) % p
    return out


def in_span(vec, rows, p: int) -> bool:
    """Whether ``vec`` lies in the row space of ``rows``."""
    vec = np.asarray(vec, dtype=np.int64) % p
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return not vec.any()
    return rank(np.vstack([rows, vec]), p) == rank(rows, p)


def reduce_by_rref(vec, R, pivots, p: int):
    """Reduce ``vec`` (1-d, or 2-d as rows) against an RREF basis.

    The result is zero in every pivot column of ``R``.
    """
    v = np.array(vec, dtype=np.int64) % p
    for i, c in enumerate(pivots):
        v = (v - v[..., c, None] * R[i]) % p
    return v


def batch_rank(stack, p: int):
    """Ranks of every matrix in a ``(K, m, n)`` stack over F_p.

    Fraction-free elimination: a row below the pivot is updated as
    ``pivot * row - entry * pivot_row``, which needs no inverses and keeps
    all intermediate products below p**2.
    """
    A = np.array(stack, dtype=np.int64) % p
    if A.ndim != 3:
        raise ValueError("batch_rank expects a (K, m, n) stack")
    K, m, n = A.shape
    if m > n:
        A = np.ascontiguousarray(A.transpose(0, 2, 1))
        m, n = n, m
    row = np.zeros(K, dtype=np.int64)
    rows_idx = np.arange(m)
    for col in range(n):
        live = np.flatnonzero(row < m)
        if live.size == 0:
            break
        sub = A[live]
        r = row[live]
        cand = (sub[:, :, col] != 0) & (rows_idx[None, :] >= r[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        live, sub, r, cand = live[has], sub[has], r[has], cand[has]
        piv = cand.argmax(axis=1)
        k = np.arange(live.size)
        top = sub[k, r].copy()
        sub[k, r] = sub[k, piv]
        sub[k, piv] = top
        prow = sub[k, r]  # (L, n)
        pval = prow[:, col]
        below = rows_idx[None, :] > r[:, None]
        f = np.where(below, sub[:, :, col], 0)
        upd = (pval[:, None, None] * sub - f[:, :, None] * prow[:, None, :]) % p
        sub = np.where(below[:, :, None], upd, sub)
        A[live] = sub
        row[live] = r + 1
    return row


def batch_is_row_echelon(stack):
    """Row echelon test for every matrix of a ``(K, m, n)`` stack."""
    A = np.asarray(stack)
    K, m, n = A.shape
    nz = A != 0
    lead = np.where(nz.any(axis=2), nz.argmax(axis=2), n)
    if m == 1:
        return np.ones(K, dtype=bool)
    nxt, cur = lead[:, 1:], lead[:, :-1]
    return np.all((nxt == n) | (nxt > cur), axis=1)
