"""Affine matrix spaces read as rank-metric codes.

For S = G + V the difference of two codewords ranges over V, so the
distance distribution of S is the rank histogram of its direction V.
"""

from __future__ import annotations

from dataclasses import dataclass

from .affine import DEFAULT_BUDGET, AffineSpace, canonicalize, rank_profile
from .errors import DegenerateCode
from .matrix import zero


def direction_space(S: AffineSpace) -> AffineSpace:
    """The linear space V, as an affine space through 0."""
    S = canonicalize(S)
    m, n = S.shape
    return AffineSpace(zero(m, n, S.field), S.basis, S.ambient, _canonical=True)


@dataclass(frozen=True)
class CodeParams:
    cardinality: int
    distance_enumerator: dict
    min_distance: int | None

    @property
    def degenerate(self) -> bool:
        return self.min_distance is None

    def to_dict(self) -> dict:
        return {
            "cardinality": self.cardinality,
            "min_distance": self.min_distance,
            "distance_enumerator": {str(k): v for k, v in sorted(self.distance_enumerator.items())},
            "degenerate": self.degenerate,
        }


def weight_enumerator(S: AffineSpace, element_budget: int = DEFAULT_BUDGET) -> CodeParams:
    """Rank distribution of the direction of S, packaged as code parameters.

    A zero-dimensional space gives ``{0: 1}`` and ``min_distance=None``.
    """
    V = direction_space(S)
    hist = rank_profile(V, element_budget).histogram
    nonzero = [k for k, v in hist.items() if k > 0 and v > 0]
    return CodeParams(V.p ** V.dim, hist, min(nonzero) if nonzero else None)


def min_distance(S: AffineSpace, element_budget: int = DEFAULT_BUDGET) -> int:
    if canonicalize(S).dim == 0:
        raise DegenerateCode("a single codeword has no minimum distance")
    return weight_enumerator(S, element_budget).min_distance


def singleton_check(S: AffineSpace, element_budget: int = DEFAULT_BUDGET) -> bool:
    """|S| <= q^(max(m,n) (min(m,n) - d_min + 1)), compared on exponents."""
    d = min_distance(S, element_budget)
    m, n = S.shape
    return canonicalize(S).dim <= max(m, n) * (min(m, n) - d + 1)
