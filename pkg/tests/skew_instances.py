"""Random skew and rectangular affine spaces with bounded rank."""

import numpy as np

from rankrange import AffineSpace, Mat, kernels
from rankrange.matrix import rank


def random_invertible(rng, n, p):
    while True:
        H = rng.integers(0, p, size=(n, n))
        if kernels.rank(H, p) == n:
            return H


def random_skew(rng, n, p, k=None):
    """Random alternating matrix; with ``k`` it has rank at most 2k."""
    if k is None:
        a = np.triu(rng.integers(0, p, size=(n, n)), 1)
        return (a - a.T) % p
    X = rng.integers(0, p, size=(2 * k, n))
    J = np.zeros((2 * k, 2 * k), dtype=np.int64)
    J[np.arange(0, 2 * k, 2), np.arange(1, 2 * k, 2)] = 1
    J = J - J.T
    return (X.T @ J @ X) % p


def _sub_space(rng, F, gens, r, extra=3):
    """Offset of rank exactly r from span(gens), direction a random sub-span."""
    p = F.p
    G = np.stack(gens)
    while True:
        off = np.tensordot(rng.integers(0, p, size=len(gens)), G, 1) % p
        if kernels.rank(off, p) == r:
            break
    k = int(rng.integers(1, min(len(gens), extra) + 1))
    basis = [np.tensordot(c, G, 1) % p for c in rng.integers(0, p, size=(k, len(gens)))]
    return AffineSpace(Mat(off, F), [Mat(b, F) for b in basis], "skew" if np.array_equal(off, (-off.T) % p) else "full")


def random_skew_bounded(rng, F, n, r):
    """Skew space of rank <= r (r even) containing an offset of rank r."""
    p = F.p
    h = r // 2
    gens = []
    if rng.random() < 0.5:
        # [[A, B], [-B^T, 0]] with A of size h: rank <= 2h
        for i in range(n):
            for j in range(i + 1, n):
                if i < h:
                    e = np.zeros((n, n), dtype=np.int64)
                    e[i, j], e[j, i] = 1, p - 1
                    gens.append(e)
    else:
        # all alternating matrices on the first r coordinates
        for i in range(r):
            for j in range(i + 1, r):
                e = np.zeros((n, n), dtype=np.int64)
                e[i, j], e[j, i] = 1, p - 1
                gens.append(e)
    H = random_invertible(rng, n, p)
    gens = [H.T @ g @ H % p for g in gens]
    return _sub_space(rng, F, gens, r)


def random_rect_bounded(rng, F, m, n, r):
    """m x n space of rank <= r: nonzero only in a rows or b columns, a + b = r."""
    p = F.p
    a = int(rng.integers(0, r + 1))
    gens = []
    for i in range(m):
        for j in range(n):
            if i < a or j < r - a:
                e = np.zeros((m, n), dtype=np.int64)
                e[i, j] = 1
                gens.append(e)
    P = random_invertible(rng, m, p)
    Q = random_invertible(rng, n, p)
    gens = [P @ g @ Q % p for g in gens]
    S = _sub_space(rng, F, gens, r)
    assert max(rank(A) for A in S.elements()) == r
    return S
