"""Affine subspaces S = G + V of a matrix space.

Matrices are vectorized row-major; canonical forms, projections and the
search module all use that single convention.
"""

from __future__ import annotations

import enum
import functools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import kernels
from .errors import BudgetExceeded, FieldMismatch, ShapeError
from .field import PrimeField, make_field
from .matrix import Mat, is_skew

DEFAULT_BUDGET = 10**7
CHUNK = 1 << 15

AMBIENTS = ("full", "skew")


class AffineSpace:
    """An affine space ``offset + span(basis)`` of m x n matrices.

    ``ambient`` is ``"full"`` or ``"skew"``; in the skew ambient the offset
    and every generator must be alternating.
    """

    __slots__ = ("offset", "basis", "ambient", "_canonical", "_dim")

    def __init__(self, offset: Mat, basis=(), ambient: str = "full", _canonical=False):
        basis = tuple(basis)
        if ambient not in AMBIENTS:
            raise ValueError(f"ambient must be one of {AMBIENTS}")
        for b in basis:
            if b.field != offset.field:
                raise FieldMismatch(f"{b.field} vs {offset.field}")
            if b.shape != offset.shape:
                raise ShapeError(f"generator shape {b.shape} != offset shape {offset.shape}")
        if ambient == "skew":
            if not all(is_skew(x) for x in (offset,) + basis):
                raise ShapeError("skew ambient requires alternating offset and generators")
        self.offset = offset
        self.basis = basis
        self.ambient = ambient
        self._canonical = _canonical
        self._dim = len(basis) if _canonical else None

    @property
    def field(self) -> PrimeField:
        return self.offset.field

    @property
    def p(self) -> int:
        return self.offset.p

    @property
    def shape(self):
        return self.offset.shape

    @property
    def is_canonical(self) -> bool:
        return self._canonical

    @property
    def dim(self) -> int:
        if self._dim is None:
            M = self.direction_matrix()
            self._dim = kernels.rank(M, self.p) if len(M) else 0
        return self._dim

    @property
    def size(self) -> int:
        return self.p**self.dim

    def direction_matrix(self) -> np.ndarray:
        """Generators as rows of a (k, m*n) array."""
        m, n = self.shape
        if not self.basis:
            return np.zeros((0, m * n), dtype=np.int64)
        return np.stack([b.vec() for b in self.basis])

    def element(self, coeffs) -> Mat:
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if coeffs.shape != (len(self.basis),):
            raise ShapeError(f"expected {len(self.basis)} coefficients")
        v = self.offset.vec() + coeffs @ self.direction_matrix() if self.basis else self.offset.vec()
        return Mat(v.reshape(self.shape), self.field)

    def elements(self):
        """Iterate over all elements in lexicographic coefficient order."""
        S = canonicalize(self)
        for stack in element_blocks(S):
            for a in stack:
                yield Mat(a, S.field)

    def transform(self, P: Mat, Q: Mat) -> AffineSpace:
        """The space {P A Q : A in S}."""
        ambient = self.ambient
        off = P @ self.offset @ Q
        basis = [P @ b @ Q for b in self.basis]
        if ambient == "skew" and not (is_skew(off) and all(is_skew(b) for b in basis)):
            ambient = "full"
        return AffineSpace(off, basis, ambient)

    def transpose(self) -> AffineSpace:
        return AffineSpace(self.offset.T, [b.T for b in self.basis], self.ambient)

    def __eq__(self, other):
        if not isinstance(other, AffineSpace):
            return NotImplemented
        a, b = canonicalize(self), canonicalize(other)
        return (
            a.field == b.field
            and a.shape == b.shape
            and a.offset == b.offset
            and len(a.basis) == len(b.basis)
            and all(x == y for x, y in zip(a.basis, b.basis))
        )

    __hash__ = None

    def __repr__(self):
        m, n = self.shape
        return f"AffineSpace({m}x{n} over GF({self.p}), dim={self.dim}, ambient={self.ambient!r})"

    # -- JSON -------------------------------------------------------------

    def to_dict(self) -> dict:
        S = canonicalize(self)
        m, n = S.shape
        return {
            "p": S.p,
            "m": m,
            "n": n,
            "ambient": S.ambient,
            "offset": S.offset.tolist(),
            "basis": [b.tolist() for b in S.basis],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> AffineSpace:
        try:
            F = make_field(int(d["p"]))
            m, n = int(d["m"]), int(d["n"])
            off = Mat(d["offset"], F)
            basis = [Mat(b, F) for b in d.get("basis", [])]
            ambient = d.get("ambient", "full")
        except (KeyError, TypeError) as exc:
            raise ShapeError(f"malformed affine space document: {exc}") from None
        if off.shape != (m, n):
            raise ShapeError(f"offset shape {off.shape} does not match m={m}, n={n}")
        return cls(off, basis, ambient)

    @classmethod
    def from_json(cls, text: str) -> AffineSpace:
        return cls.from_dict(json.loads(text))


def canonicalize(S: AffineSpace) -> AffineSpace:
    """Equal point set with an RREF direction basis and pivot-reduced offset.

    Two spaces describe the same set iff their canonical forms coincide.
    """
    if S.is_canonical:
        return S
    p = S.p
    shape = S.shape
    R, piv = kernels.row_basis(S.direction_matrix(), p)
    off = kernels.reduce_by_rref(S.offset.vec(), R, piv, p)
    F = S.field
    basis = [Mat(row.reshape(shape), F) for row in R]
    return AffineSpace(Mat(off.reshape(shape), F), basis, S.ambient, _canonical=True)


def contains(S: AffineSpace, A: Mat) -> bool:
    """Whether ``A - offset`` lies in the direction of ``S``."""
    if A.shape != S.shape:
        raise ShapeError(f"matrix shape {A.shape} != space shape {S.shape}")
    if A.field != S.field:
        raise FieldMismatch(f"{A.field} vs {S.field}")
    C = canonicalize(S)
    d = (A.vec() - C.offset.vec()) % S.p
    R = C.direction_matrix()
    piv = [int(np.flatnonzero(row)[0]) for row in R]
    return not kernels.reduce_by_rref(d, R, piv, S.p).any()


# -- enumeration ----------------------------------------------------------


def coefficient_block(start: int, stop: int, dim: int, q: int) -> np.ndarray:
    """Coefficient vectors with lexicographic indices in [start, stop).

    The first coefficient is the most significant digit.
    """
    t = np.arange(start, stop, dtype=np.int64)
    if dim == 0:
        return np.zeros((t.size, 0), dtype=np.int64)
    powers = q ** np.arange(dim - 1, -1, -1, dtype=np.int64)
    return (t[:, None] // powers[None, :]) % q


def element_blocks(S: AffineSpace, start: int = 0, stop: int | None = None, chunk: int = CHUNK):
    """Yield ``(K, m, n)`` stacks of elements in lexicographic coefficient order.

    ``S`` should be canonical so each point is produced once.
    """
    p = S.p
    d = len(S.basis)
    total = p**d
    stop = total if stop is None else stop
    off = S.offset.vec()
    M = S.direction_matrix()
    m, n = S.shape
    for lo in range(start, stop, chunk):
        hi = min(lo + chunk, stop)
        c = coefficient_block(lo, hi, d, p)
        v = (off[None, :] + c @ M) % p if d else np.repeat(off[None, :], hi - lo, axis=0)
        yield v.reshape(-1, m, n)


@dataclass(frozen=True)
class RankProfile:
    """Exact histogram rank -> number of elements."""

    histogram: dict = dc_field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.histogram.values())

    @property
    def min_rank(self) -> int:
        return min(k for k, v in self.histogram.items() if v > 0)

    @property
    def max_rank(self) -> int:
        return max(k for k, v in self.histogram.items() if v > 0)

    def has_range(self, s: int, r: int) -> bool:
        """Minimum exactly ``s`` and maximum exactly ``r``."""
        return self.min_rank == s and self.max_rank == r

    def to_dict(self) -> dict:
        return {
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "min_rank": self.min_rank,
            "max_rank": self.max_rank,
            "total": self.total,
        }


def _check_budget(S: AffineSpace, budget: int) -> None:
    cost = S.p ** S.dim
    if cost > budget:
        raise BudgetExceeded(
            f"{cost} elements exceed the element budget {budget}", cost=cost, budget=budget
        )


def _histogram_range(S: AffineSpace, start: int, stop: int) -> dict:
    hist: dict = {}
    for stack in element_blocks(S, start, stop):
        ranks, counts = np.unique(kernels.batch_rank(stack, S.p), return_counts=True)
        for k, c in zip(ranks.tolist(), counts.tolist()):
            hist[k] = hist.get(k, 0) + c
    return hist


def partition_bounds(total: int, parts: int):
    """Split [0, total) into ``parts`` contiguous (coefficient-prefix) ranges."""
    parts = max(1, min(parts, total))
    edges = [total * k // parts for k in range(parts + 1)]
    return list(zip(edges[:-1], edges[1:]))


def rank_profile(
    S: AffineSpace, element_budget: int = DEFAULT_BUDGET, workers: int = 1, partitions: int | None = None
) -> RankProfile:
    """Exact rank histogram of every element of ``S``.

    The coefficient space is split into ``partitions`` contiguous ranges
    (default: ``workers``) whose histograms are summed, so the result does
    not depend on the partitioning.
    """
    S = canonicalize(S)
    _check_budget(S, element_budget)
    total = S.p ** S.dim
    ranges = partition_bounds(total, partitions or workers)
    if workers > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda ab: _histogram_range(S, *ab), ranges))
    else:
        parts = [_histogram_range(S, a, b) for a, b in ranges]
    hist: dict = {}
    for h in parts:
        for k, v in h.items():
            hist[k] = hist.get(k, 0) + v
    return RankProfile(dict(sorted(hist.items())))


# -- projections ----------------------------------------------------------


def _as_vectors(V, p=None):
    if isinstance(V, AffineSpace):
        return V.direction_matrix(), V.p
    arr = np.asarray(V, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr[None, :] if arr.size else arr.reshape(0, 0)
    if p is None:
        raise ValueError("a modulus is needed when projecting raw vectors")
    return arr % p, p


def project(V, coords, p: int | None = None) -> np.ndarray:
    """Image of a linear space under projection onto ``coords`` (1-based).

    ``V`` is an :class:`AffineSpace` (its direction is used) or an array
    whose rows span the space, in which case ``p`` must be given. Returns
    the canonical RREF basis of the image.
    """
    M, p = _as_vectors(V, p)
    h = M.shape[1] if M.ndim == 2 else 0
    idx = [int(c) for c in coords]
    if any(c < 1 or c > h for c in idx):
        raise IndexError(f"coordinates {idx} out of range 1..{h}")
    img = M[:, [c - 1 for c in idx]] if len(M) else np.zeros((0, len(idx)), dtype=np.int64)
    return kernels.row_basis(img, p)[0]


def subspace_dim(M, p: int) -> int:
    M = np.asarray(M, dtype=np.int64)
    return kernels.rank(M, p) if M.size else 0


class LemmaCheck(enum.Enum):
    """Outcome of :func:`check_projection_lemma`."""

    HOLDS = "holds"
    VIOLATED = "violated"
    HYPOTHESES_NOT_MET = "hypotheses_not_met"

    def __bool__(self):
        return self is LemmaCheck.HOLDS


def projection_lemma_coords(m: int, n_list):
    """The 1-based coordinate sets of pi_1, pi_2, pi_3 and p_1..p_k."""
    pis = [
        list(range(1, 2 * m + 1)),
        list(range(m + 1, 3 * m + 1)),
        list(range(1, m + 1)) + list(range(2 * m + 1, 3 * m + 1)),
    ]
    ps = []
    start = 3 * m
    for nj in n_list:
        ps.append(list(range(start + 1, start + nj + 1)))
        start += nj
    return pis, ps


def check_projection_lemma(V, m: int, n_list, q_list, r: int, p: int | None = None) -> LemmaCheck:
    """Check the three-projection dimension bound on a subspace of K^h.

    With h = 3m + sum(n_list), if the projections onto coordinates
    (1..2m), (m+1..3m), (1..m, 2m+1..3m) have dimension <= 2r and the block
    projections p_j have dimension <= q_j, then dim V <= sum(q_j) + 3r.
    Returns HYPOTHESES_NOT_MET when the premises fail.
    """
    M, p = _as_vectors(V, p)
    n_list, q_list = list(n_list), list(q_list)
    h = 3 * m + sum(n_list)
    if len(n_list) != len(q_list):
        raise ShapeError("n_list and q_list must have the same length")
    if M.ndim != 2 or (M.size and M.shape[1] != h):
        raise ShapeError(f"vectors must live in K^{h}")
    if M.size == 0:
        M = np.zeros((0, h), dtype=np.int64)
    pis, ps = projection_lemma_coords(m, n_list)
    ok = all(subspace_dim(project(M, c, p), p) <= 2 * r for c in pis if c)
    ok = ok and all(
        subspace_dim(project(M, c, p), p) <= q for c, q in zip(ps, q_list) if c
    )
    if not ok:
        return LemmaCheck.HYPOTHESES_NOT_MET
    return LemmaCheck.HOLDS if subspace_dim(M, p) <= sum(q_list) + 3 * r else LemmaCheck.VIOLATED


# -- skew coordinate chart -----------------------------------------------


def skew_chart_size(n: int) -> int:
    return n * (n - 1) // 2


@functools.lru_cache(maxsize=None)
def skew_chart_positions(n: int):
    """Row-major flat positions of the strict upper and matching lower entries."""
    iu = np.triu_indices(n, k=1)
    upper = iu[0] * n + iu[1]
    lower = iu[1] * n + iu[0]
    upper.setflags(write=False)
    lower.setflags(write=False)
    return upper, lower


def from_skew_chart(x, n: int, p: int) -> np.ndarray:
    """Map chart coordinates (K, n(n-1)/2) to flattened skew matrices (K, n*n)."""
    x = np.atleast_2d(np.asarray(x, dtype=np.int64))
    upper, lower = skew_chart_positions(n)
    out = np.zeros((x.shape[0], n * n), dtype=np.int64)
    out[:, upper] = x % p
    out[:, lower] = (-x) % p
    return out


def to_skew_chart(A: Mat) -> np.ndarray:
    n = A.rows
    upper, _ = skew_chart_positions(n)
    return A.vec()[upper]
