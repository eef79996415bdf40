"""Quadratic forms, isotropy, and congruence normal forms of skew matrices.

Also hosts the projection machinery behind the upper bounds for affine
spaces of bounded rank: normalize a maximal-rank element to
``[[I_r, 0], [0, 0]]`` (or its skew analogue), then project the direction
onto pairs of border columns/rows and test isotropy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .affine import AffineSpace, canonicalize, element_blocks
from .errors import CharTwoUnsupported, InvalidParams, NotSkew, ShapeError
from .field import PrimeField, inverse_mod
from .matrix import Mat, is_skew, jbar, rank


def _no_char_two(field: PrimeField):
    if field.char_is_two():
        raise CharTwoUnsupported("quadratic forms need characteristic != 2")


class QuadraticForm:
    """Q(x) = x^T B x with B symmetric (cross terms split evenly)."""

    __slots__ = ("coeffs", "field", "nondegenerate")

    def __init__(self, coeffs, field: PrimeField):
        _no_char_two(field)
        B = np.array(coeffs, dtype=np.int64) % field.p
        if B.ndim != 2 or B.shape[0] != B.shape[1]:
            raise ShapeError("coefficient matrix must be square")
        if not np.array_equal(B, B.T):
            raise ShapeError("coefficient matrix must be symmetric")
        B.setflags(write=False)
        self.coeffs = B
        self.field = field
        self.nondegenerate = kernels.rank(B, field.p) == B.shape[0]

    @classmethod
    def from_terms(cls, N: int, terms: dict, field: PrimeField) -> QuadraticForm:
        """Build from monomials ``{(i, j): c}`` meaning c * x_i * x_j (0-based)."""
        _no_char_two(field)
        p = field.p
        half = inverse_mod(2, p)
        B = np.zeros((N, N), dtype=np.int64)
        for (i, j), c in terms.items():
            if i == j:
                B[i, i] = (B[i, i] + c) % p
            else:
                h = (c * half) % p
                B[i, j] = (B[i, j] + h) % p
                B[j, i] = (B[j, i] + h) % p
        return cls(B, field)

    @property
    def N(self) -> int:
        return self.coeffs.shape[0]

    def __call__(self, x) -> int:
        x = np.asarray(x, dtype=np.int64) % self.field.p
        return int(x @ self.coeffs @ x % self.field.p)

    def polar(self, x, y) -> int:
        """B(x, y) = Q(x + y) - Q(x) - Q(y)."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return int(2 * (x @ self.coeffs @ y) % self.field.p)

    def __repr__(self):
        return f"QuadraticForm(N={self.N}, p={self.field.p})"


def hyperbolic_form(r: int, field: PrimeField) -> QuadraticForm:
    """sum_{i<=r} x_i x_{r+i} on K^{2r}."""
    return QuadraticForm.from_terms(2 * r, {(i, r + i): 1 for i in range(r)}, field)


def skew_block_form(d, field: PrimeField) -> QuadraticForm:
    """sum_l (1/d_l)(b_{2l-1,i} b_{2l,j} - b_{2l-1,j} b_{2l,i}) on K^{2r}, r = 2 len(d).

    Variables are ordered (b_{1,i}..b_{r,i}, b_{1,j}..b_{r,j}).
    """
    _no_char_two(field)
    p = field.p
    d = [int(x) % p for x in d]
    if not d or any(x == 0 for x in d):
        raise InvalidParams("d must be a non-empty list of nonzero elements")
    r = 2 * len(d)
    terms = {}
    for l, dl in enumerate(d):
        w = inverse_mod(dl, p)
        a, b = 2 * l, 2 * l + 1  # 0-based b_{2l-1}, b_{2l}
        terms[(a, r + b)] = w
        terms[(r + a, b)] = (-w) % p
    return QuadraticForm.from_terms(2 * r, terms, field)


def is_totally_isotropic(V, Q: QuadraticForm) -> bool:
    """Whether Q vanishes on the whole span of the rows of ``V``.

    In characteristic != 2 this holds iff the Gram matrix V B V^T is zero,
    i.e. Q(b_u) = 0 and B(b_u, b_w) = 0 on all basis pairs.
    """
    M = np.atleast_2d(np.asarray(V, dtype=np.int64))
    if M.size == 0:
        return True
    if M.shape[1] != Q.N:
        raise ShapeError(f"vectors of length {M.shape[1]} for a form on K^{Q.N}")
    return not ((M @ Q.coeffs @ M.T) % Q.field.p).any()


# -- skew congruence normal form ------------------------------------------


@dataclass(frozen=True)
class SkewNormalForm:
    """H^T M H = diag(d_1, d_1, ..., 1, ..., 1) (Jbar_r (+) 0)."""

    H: Mat
    d: tuple
    r: int

    def normal_matrix(self) -> Mat:
        F = self.H.field
        n = self.H.rows
        a = np.zeros((n, n), dtype=np.int64)
        for l, dl in enumerate(self.d):
            a[2 * l, 2 * l + 1] = dl
            a[2 * l + 1, 2 * l] = -dl
        return Mat(a, F)

    def gamma(self) -> Mat:
        """The leading r x r block diag(d_1, d_1, ...) Jbar_r."""
        F = self.H.field
        dd = np.repeat(np.array(self.d, dtype=np.int64), 2)
        return Mat(np.diag(dd) @ jbar(self.r, F).array, F)


def skew_normal_form(M: Mat) -> SkewNormalForm:
    """Congruence normal form of an alternating matrix by symplectic Gram-Schmidt.

    Repeatedly picks basis vectors u, w of the remaining complement with
    u^T M w = d != 0, records (u, w) as the next pair of columns of H, and
    deflates the rest so that it is M-orthogonal to both. When the form
    vanishes on the complement, the complement fills the last columns.
    """
    F = M.field
    _no_char_two(F)
    if not is_skew(M):
        raise NotSkew("matrix is not alternating")
    p = F.p
    a = M.array
    n = M.rows
    rest = [row for row in np.eye(n, dtype=np.int64)]
    cols, d = [], []
    while True:
        pair = None
        for x in range(len(rest)):
            Mx = a @ rest[x] % p
            for y in range(x + 1, len(rest)):
                if int(rest[y] @ Mx % p):
                    pair = (x, y)
                    break
            if pair:
                break
        if pair is None:
            break
        u, w = rest[pair[0]], rest[pair[1]]
        dl = int(u @ a @ w % p)
        dinv = inverse_mod(dl, p)
        new_rest = []
        for k, z in enumerate(rest):
            if k in pair:
                continue
            alpha = int(w @ a @ z % p) * dinv
            beta = -int(u @ a @ z % p) * dinv
            new_rest.append((z + alpha * u + beta * w) % p)
        rest = new_rest
        cols += [u, w]
        d.append(dl)
    H = Mat(np.stack(cols + rest, axis=1), F)
    return SkewNormalForm(H, tuple(d), 2 * len(d))


# -- projection machinery for bounded-rank spaces -------------------------


def normalize_rank_offset(S: AffineSpace, G: Mat | None = None):
    """Move a maximal-rank element to [[I_r, 0], [0, 0]] by equivalence.

    Returns ``(S2, P, Q, r)`` with S2 = P S Q (same rank profile), offset of
    S2 equal to [[I_r, 0], [0, 0]]. ``G`` must be an element of S of
    maximal rank; if omitted the first one in enumeration order is used.
    """
    p = S.p
    m, n = S.shape
    if G is None:
        G = maximal_rank_element(S)
    r = rank(G)
    E = kernels.rref(np.hstack([G.array, np.eye(m, dtype=np.int64)]), p)[0][:, n:]
    R, piv = kernels.rref(G.array, p)
    perm = piv + [c for c in range(n) if c not in piv]
    Q1 = np.eye(n, dtype=np.int64)[:, perm]
    RQ = R @ Q1 % p
    Q2 = np.eye(n, dtype=np.int64)
    Q2[:r, r:] = (-RQ[:r, r:]) % p
    P = Mat(E, S.field)
    Q = Mat(Q1 @ Q2 % p, S.field)
    S2 = AffineSpace(P @ G @ Q, [P @ b @ Q for b in canonicalize(S).basis])
    return S2, P, Q, r


def maximal_rank_element(S: AffineSpace) -> Mat:
    S = canonicalize(S)
    best, best_rank = None, -1
    for stack in element_blocks(S):
        ranks = kernels.batch_rank(stack, S.p)
        k = int(ranks.argmax())
        if ranks[k] > best_rank:
            best, best_rank = stack[k], int(ranks[k])
        if best_rank == min(S.shape):
            break
    return Mat(best, S.field)


def range_projection(v, r: int, i: int, j: int) -> np.ndarray:
    """(B^(j); C_(i)^T) for v = [[A, B, X], [C, *, *]] with A of size r x r.

    B is the r x (m-r) block right of A, C the (m-r) x r block below A;
    ``i``, ``j`` are 1-based indices into those blocks.
    """
    v = np.asarray(v)
    return np.concatenate([v[:r, r + j - 1], v[r + i - 1, :r]])


def skew_projection(v, r: int, i: int, j: int) -> np.ndarray:
    """(B^(i); B^(j)) for v = [[A, B], [-B^T, 0]] with A of size r x r."""
    v = np.asarray(v)
    return np.concatenate([v[:r, r + i - 1], v[:r, r + j - 1]])


def border_vanishes(S: AffineSpace, r: int) -> bool:
    """Direction entries (i, j) with i > r and j > r are all zero."""
    return all(not b.array[r:, r:].any() for b in S.basis)


def range_isotropy_failures(S: AffineSpace, r: int | None = None, normalize: bool = True):
    """Pairs (i, j) whose projection of the direction is not totally isotropic
    for ``hyperbolic_form(r)``. Empty means every projection is isotropic.

    With ``normalize`` a maximal-rank element is first moved to
    [[I_r, 0], [0, 0]]; otherwise the blocks are read off S as given.
    Spaces with m > n are transposed first.
    """
    if S.shape[0] > S.shape[1]:
        S = S.transpose()
    if normalize:
        S, _, _, r = normalize_rank_offset(S)
    elif r is None:
        raise ValueError("r is required when normalize=False")
    S = canonicalize(S)
    m = S.shape[0]
    Q = hyperbolic_form(r, S.field)
    bad = []
    for i in range(1, m - r + 1):
        for j in range(1, m - r + 1):
            img = [range_projection(b.array, r, i, j) for b in S.basis]
            if img and not is_totally_isotropic(np.stack(img), Q):
                bad.append((i, j))
    return bad


def normalize_skew_offset(S: AffineSpace):
    """Congruence H^T S H taking the offset to its skew normal form.

    Returns ``(S2, nf)``; S's offset should have the maximal rank on S.
    """
    nf = skew_normal_form(S.offset)
    H = nf.H
    S2 = AffineSpace(H.T @ S.offset @ H, [H.T @ b @ H for b in canonicalize(S).basis], "skew")
    return S2, nf


def skew_isotropy_failures(S: AffineSpace):
    """Pairs (i, j) whose projection is not isotropic for ``skew_block_form(d)``."""
    S2, nf = normalize_skew_offset(S)
    r, n = nf.r, S.shape[0]
    if r == 0:
        return []
    Q = skew_block_form(nf.d, S.field)
    bad = []
    for i in range(1, n - r + 1):
        for j in range(1, n - r + 1):
            img = [skew_projection(b.array, r, i, j) for b in S2.basis]
            if img and not is_totally_isotropic(np.stack(img), Q):
                bad.append((i, j))
    return bad
