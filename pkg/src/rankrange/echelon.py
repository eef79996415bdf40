"""Pivot structure of affine spaces whose elements are all in row echelon form."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .affine import DEFAULT_BUDGET, AffineSpace, _check_budget, canonicalize, element_blocks, partition_bounds
from .errors import EmptyInput, FieldTooSmall
from .field import inverse_mod
from .matrix import Mat


@dataclass(frozen=True)
class PivotProfile:
    """``P`` = rows that are nonzero somewhere on S, ``j[i]`` = least such column,
    ``Z[i]`` = all columns where row i is nonzero for some element (1-based)."""

    P: tuple
    j: dict
    Z: dict

    def to_dict(self) -> dict:
        return {
            "P": list(self.P),
            "j": {str(i): c for i, c in self.j.items()},
            "Z": {str(i): sorted(z) for i, z in self.Z.items()},
        }


def support(S: AffineSpace) -> np.ndarray:
    """Boolean m x n mask of entries that are nonzero on some element.

    Entry (i, j) is an affine function on S; it vanishes identically iff it
    is zero on the offset and on every generator.
    """
    mask = S.offset.array != 0
    for b in S.basis:
        mask = mask | (b.array != 0)
    return mask


def pivot_profile(S: AffineSpace) -> PivotProfile:
    mask = support(S)
    m, _ = mask.shape
    Z = {i + 1: frozenset(int(c) + 1 for c in np.flatnonzero(mask[i])) for i in range(m)}
    P = tuple(i for i in range(1, m + 1) if Z[i])
    j = {i: min(Z[i]) for i in P}
    return PivotProfile(P, j, Z)


def find_full_pivot_matrix(S: AffineSpace) -> Mat:
    """An element A of S with A[i, j_i] != 0 for every pivot row i.

    Built row by row: given A good on rows 1..k and some A' with a nonzero
    (k+1, j_{k+1}) entry, the combination lam*A + (1-lam)*A' stays in S and
    is good on rows 1..k+1 unless lam hits one of at most k+1 forbidden
    values. lam is scanned in increasing residue order. Works on the
    canonical form of S, so the result does not depend on how S was
    presented. Assumes every element of S is in row echelon form.
    """
    if S is None:
        raise EmptyInput("no affine space given")
    S = canonicalize(S)
    p = S.p
    prof = pivot_profile(S)
    A = S.offset.array.copy()
    done = []  # (row, col) positions already nonzero in A, 0-based
    for i in prof.P:
        c = prof.j[i] - 1
        pos = (i - 1, c)
        if A[pos] != 0:
            done.append(pos)
            continue
        Ap = S.offset.array
        if Ap[pos] == 0:
            gen = next(b.array for b in S.basis if b.array[pos] != 0)
            Ap = (Ap + gen) % p
        forbidden = {1}
        for q in done:
            diff = (int(A[q]) - int(Ap[q])) % p
            if diff:
                forbidden.add((-int(Ap[q]) * inverse_mod(diff, p)) % p)
        lam = next((x for x in range(p) if x not in forbidden), None)
        if lam is None:
            raise FieldTooSmall(f"no admissible combination coefficient over GF({p}) at row {i}")
        A = (lam * A + (1 - lam) * Ap) % p
        done.append(pos)
    return Mat(A, S.field)


def _echelon_range(S: AffineSpace, start: int, stop: int) -> bool:
    return all(kernels.batch_is_row_echelon(stack).all() for stack in element_blocks(S, start, stop))


def all_echelon(S: AffineSpace, element_budget: int = DEFAULT_BUDGET, workers: int = 1) -> bool:
    """Exhaustively test that every element of S is in row echelon form.

    With ``workers > 1`` the coefficient space is split into contiguous
    ranges checked on a thread pool; the answer is the conjunction.
    """
    S = canonicalize(S)
    _check_budget(S, element_budget)
    ranges = partition_bounds(S.p**S.dim, workers)
    if workers > 1 and len(ranges) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return all(ex.map(lambda ab: _echelon_range(S, *ab), ranges))
    return _echelon_range(S, 0, S.p**S.dim)
