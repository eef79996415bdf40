import functools
import itertools

import numpy as np
import pytest

from rankrange import make_field


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=[3, 5, 7])
def small_field(request):
    return make_field(request.param)


def leibniz_det(a, p):
    """Determinant by the permutation expansion; independent of elimination."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i in range(n):
            term *= int(a[i, perm[i]])
        total += term
    return total % p


def minor_rank(a, p):
    """Size of the largest square submatrix with nonzero determinant."""
    a = np.asarray(a, dtype=np.int64)
    m, n = a.shape
    for k in range(min(m, n), 0, -1):
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                if leibniz_det(a[np.ix_(rows, cols)], p):
                    return k
    return 0


def span_elements(rows, p):
    """Every linear combination of the given rows (brute force)."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
    k = rows.shape[0]
    out = []
    for c in itertools.product(range(p), repeat=k):
        out.append(tuple((np.array(c) @ rows) % p) if k else ())
    return set(out)


@functools.lru_cache(maxsize=None)
def _rank_table(m, n, p):
    from rankrange import kernels

    every = np.array(list(itertools.product(range(p), repeat=m * n)), dtype=np.int64)
    return kernels.batch_rank(every.reshape(-1, m, n), p)


def pairwise_distance_histogram(S):
    """Histogram of rk(A - B) over all ordered pairs of elements of S.

    Ranks are read from a table of every m x n matrix over F_p, indexed by
    the base-p code of the matrix, so the q^(2 dim) pairs stay cheap.
    """
    p = S.p
    m, n = S.shape
    N = m * n
    table = _rank_table(m, n, p)
    weights = p ** np.arange(N - 1, -1, -1, dtype=np.int64)
    elems = np.array([A.vec() for A in S.elements()], dtype=np.int64)
    hist = np.zeros(min(m, n) + 1, dtype=np.int64)
    for a in elems:
        codes = ((a[None, :] - elems) % p) @ weights
        hist += np.bincount(table[codes], minlength=hist.size)
    return {k: int(v) for k, v in enumerate(hist) if v}
