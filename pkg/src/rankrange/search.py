"""Exhaustive and randomized search for affine spaces with a prescribed rank range.

Candidates are direction spaces (canonical RREF bases) paired with
canonical coset representatives, so every affine set is visited once.
A candidate is dropped at the first element whose rank leaves [s, r] (or
that is not in row echelon form when required); exact attainment of s and
r is checked only for candidates that survive the whole scan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import kernels
from .affine import (
    DEFAULT_BUDGET,
    AffineSpace,
    canonicalize,
    coefficient_block,
    from_skew_chart,
    skew_chart_size,
)
from .constructions import bound, field_hypotheses
from .errors import BudgetExceeded, InvalidParams
from .field import PrimeField
from .matrix import Mat

ELEMENT_BLOCK = 32
GROUP_CANDIDATES = 1024


def gaussian_binomial(N: int, d: int, q: int) -> int:
    """Number of d-dimensional subspaces of F_q^N."""
    if not (isinstance(N, int) and isinstance(d, int) and 0 <= d <= N) or q < 2:
        raise InvalidParams(f"need 0 <= d <= N and q >= 2, got N={N}, d={d}, q={q}")
    num = den = 1
    for i in range(d):
        num *= q ** (N - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _free_positions(pivots, N):
    pset = set(pivots)
    return [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, N) if c not in pset]


def enumerate_subspaces(N: int, d: int, field: PrimeField, budget: int | None = None):
    """Yield every d-dimensional subspace of F_q^N once, as its RREF basis.

    Order: pivot-column sets lexicographically, then free entries in
    lexicographic order (first free position most significant).
    """
    q = field.p
    count = gaussian_binomial(N, d, q)
    if budget is not None and count > budget:
        raise BudgetExceeded(f"{count} subspaces exceed the budget {budget}", cost=count, budget=budget)
    for pivots in itertools.combinations(range(N), d):
        free = _free_positions(pivots, N)
        base = np.zeros((d, N), dtype=np.int64)
        for i, c in enumerate(pivots):
            base[i, c] = 1
        for values in itertools.product(range(q), repeat=len(free)):
            B = base.copy()
            for (i, c), v in zip(free, values):
                B[i, c] = v
            yield B


@dataclass(frozen=True)
class SearchSpec:
    m: int
    n: int
    s: int
    r: int
    field: PrimeField
    dim: int | None = None
    ambient: str = "full"
    echelon_required: bool = False
    mode: str = "exhaustive"
    samples: int = 0
    seed: int | None = None

    def __post_init__(self):
        if not (0 <= self.s <= self.r <= min(self.m, self.n)):
            raise InvalidParams("need 0 <= s <= r <= min(m, n)")
        if self.ambient not in ("full", "skew"):
            raise InvalidParams("ambient must be 'full' or 'skew'")
        if self.ambient == "skew" and (self.m != self.n or self.s % 2 or self.r % 2):
            raise InvalidParams("skew ambient needs m == n and even s, r")
        if self.mode not in ("exhaustive", "random"):
            raise InvalidParams("mode must be 'exhaustive' or 'random'")
        if self.mode == "random" and (self.seed is None or self.samples <= 0):
            raise InvalidParams("random mode needs samples > 0 and an explicit seed")
        if self.dim is not None and not 0 <= self.dim <= self.ambient_dim:
            raise InvalidParams(f"dimension must lie in 0..{self.ambient_dim}")

    @property
    def ambient_dim(self) -> int:
        return skew_chart_size(self.n) if self.ambient == "skew" else self.m * self.n

    def with_dim(self, d: int) -> SearchSpec:
        return SearchSpec(
            self.m, self.n, self.s, self.r, self.field, d, self.ambient,
            self.echelon_required, self.mode, self.samples, self.seed,
        )


@dataclass
class SearchResult:
    found: bool
    witness: AffineSpace | None = None
    candidates: int = 0
    elements_scanned: int = 0
    dim: int | None = None
    seed: int | None = None
    mode: str = "exhaustive"
    probes: list = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "found": self.found,
            "dim": self.dim,
            "mode": self.mode,
            "cost": {"candidates": self.candidates, "elements_scanned": self.elements_scanned},
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if self.probes:
            out["probes"] = self.probes
        return out


def exhaustive_cost(spec: SearchSpec, d: int) -> int:
    N = spec.ambient_dim
    q = spec.field.p
    return gaussian_binomial(N, d, q) * q ** (N - d) * q**d


class _Scanner:
    """Evaluates batches of candidates (offsets sharing one direction)."""

    def __init__(self, spec: SearchSpec):
        self.spec = spec
        self.p = spec.field.p
        self.elements = 0
        self.candidates = 0

    def to_matrices(self, vecs):
        sp = self.spec
        if sp.ambient == "skew":
            vecs = from_skew_chart(vecs, sp.n, self.p)
        return vecs.reshape(-1, sp.m, sp.n)

    def first_hit(self, directions, owner, offsets):
        """Index of the first candidate whose affine set qualifies, else None.

        Candidate c is ``offsets[c] + span(directions[owner[c]])``; candidates
        from several directions are evaluated together to amortize overhead.
        """
        sp, p = self.spec, self.p
        d = directions.shape[1]
        total = p**d
        C, N = offsets.shape
        alive = np.arange(C)
        lo_seen = np.full(C, np.iinfo(np.int64).max)
        hi_seen = np.full(C, -1)
        self.candidates += C
        lo, step = 0, 1
        while lo < total:
            if alive.size == 0:
                return None
            # most candidates fail early, so blocks start small and double
            hi = min(lo + step, total)
            step = min(2 * step, ELEMENT_BLOCK)
            k = hi - lo
            coeffs = coefficient_block(lo, hi, d, p)
            if d:
                span = np.einsum("kd,cdn->ckn", coeffs, directions[owner[alive]])
            else:
                span = np.zeros((alive.size, k, N), dtype=np.int64)
            vecs = (offsets[alive][:, None, :] + span) % p
            mats = self.to_matrices(vecs.reshape(alive.size * k, N))
            ranks = kernels.batch_rank(mats, p).reshape(alive.size, k)
            ok = (ranks >= sp.s) & (ranks <= sp.r)
            if sp.echelon_required:
                ok &= kernels.batch_is_row_echelon(mats).reshape(alive.size, k)
            # a pruning scan stops at the first bad element of each candidate
            first_bad = np.where(ok.all(axis=1), k, (~ok).argmax(axis=1))
            self.elements += int(np.minimum(first_bad + 1, k).sum())
            keep = ok.all(axis=1)
            lo_seen[alive] = np.minimum(lo_seen[alive], ranks.min(axis=1))
            hi_seen[alive] = np.maximum(hi_seen[alive], ranks.max(axis=1))
            alive = alive[keep]
            lo = hi
        for c in alive:
            if lo_seen[c] == sp.s and hi_seen[c] == sp.r:
                return int(c)
        return None

    def witness(self, direction, offset) -> AffineSpace:
        F = self.spec.field
        mats = self.to_matrices(np.vstack([offset[None, :], direction]) % self.p)
        S = AffineSpace(Mat(mats[0], F), [Mat(b, F) for b in mats[1:]], self.spec.ambient)
        return canonicalize(S)


def _coset_offsets(direction, N, p):
    """All canonical coset representatives: zero on the pivot coordinates."""
    d = direction.shape[0]
    pivots = [int(np.flatnonzero(row)[0]) for row in direction]
    free = [c for c in range(N) if c not in pivots]
    vals = coefficient_block(0, p ** (N - d), N - d, p)
    out = np.zeros((vals.shape[0], N), dtype=np.int64)
    out[:, free] = vals
    return out


def exists_affine_of_dim(spec: SearchSpec, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Look for an affine space of dimension ``spec.dim`` with ranks exactly in [s, r].

    Exhaustive mode scans every direction and canonical coset, so a
    negative answer is a proof; random mode samples ``spec.samples``
    candidates from a seeded PCG64 generator and a negative answer is only
    evidence.
    """
    if spec.dim is None:
        raise InvalidParams("a target dimension is required")
    d, N, p = spec.dim, spec.ambient_dim, spec.field.p
    scan = _Scanner(spec)
    if spec.mode == "exhaustive":
        cost = exhaustive_cost(spec, d)
        if cost > budget:
            raise BudgetExceeded(
                f"exhaustive search needs about {cost} element evaluations (budget {budget})",
                cost=cost, budget=budget,
            )
        group = max(1, GROUP_CANDIDATES // p ** (N - d))
        dirs = enumerate_subspaces(N, d, spec.field)
        while True:
            batch = list(itertools.islice(dirs, group))
            if not batch:
                return SearchResult(False, None, scan.candidates, scan.elements, d)
            offs = [_coset_offsets(D, N, p) for D in batch]
            owner = np.repeat(np.arange(len(batch)), [o.shape[0] for o in offs])
            offsets = np.vstack(offs)
            hit = scan.first_hit(np.stack(batch).reshape(len(batch), d, N), owner, offsets)
            if hit is not None:
                return SearchResult(True, scan.witness(batch[owner[hit]], offsets[hit]),
                                    scan.candidates, scan.elements, d)

    cost = spec.samples * p**d
    if cost > budget:
        raise BudgetExceeded(
            f"random search needs up to {cost} element evaluations (budget {budget})",
            cost=cost, budget=budget,
        )
    rng = np.random.default_rng(spec.seed)
    remaining = spec.samples
    while remaining:
        # samples are drawn in sequence and evaluated in groups; the first
        # qualifying sample is the same as in a one-at-a-time scan
        size = min(remaining, max(1, GROUP_CANDIDATES))
        remaining -= size
        dirs = np.zeros((size, d, N), dtype=np.int64)
        offsets = np.zeros((size, N), dtype=np.int64)
        for k in range(size):
            dirs[k], offsets[k] = _random_candidate(rng, d, N, p)
        hit = scan.first_hit(dirs, np.arange(size), offsets)
        if hit is not None:
            return SearchResult(True, scan.witness(dirs[hit], offsets[hit]), scan.candidates,
                                scan.elements, d, spec.seed, "random")
    return SearchResult(False, None, scan.candidates, scan.elements, d, spec.seed, "random")


def _random_candidate(rng, d, N, p):
    while True:
        direction, _ = kernels.row_basis(rng.integers(0, p, size=(d, N)), p)
        if direction.shape[0] == d:
            break
    direction = direction.reshape(d, N)
    offset = rng.integers(0, p, size=N)
    if d:
        offset[[int(np.flatnonzero(row)[0]) for row in direction]] = 0
    return direction, offset


def qualifies(spec: SearchSpec, S: AffineSpace, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether a given space passes the search's acceptance filter for ``spec``.

    Same criteria as a search hit: matching shape, field and ambient,
    dimension ``spec.dim`` when set, ranks exactly in [s, r], and all
    elements in row echelon form when required.
    """
    from .affine import rank_profile
    from .echelon import all_echelon

    S = canonicalize(S)
    if S.field != spec.field or S.shape != (spec.m, spec.n):
        return False
    if spec.ambient == "skew" and S.ambient != "skew":
        return False
    if spec.dim is not None and S.dim != spec.dim:
        return False
    if not rank_profile(S, budget).has_range(spec.s, spec.r):
        return False
    return not spec.echelon_required or all_echelon(S, budget)


def catalog_bound(spec: SearchSpec):
    """Proven upper bound for these search parameters, or None if none applies."""
    if spec.echelon_required:
        if spec.s == spec.r:
            return bound("echelon-constant", m=spec.m, n=spec.n, r=spec.r)
        if spec.field.has_cardinality_at_least(spec.r + 1):
            return bound("echelon-range-upper", m=spec.m, n=spec.n, s=spec.s, r=spec.r)
        return None
    if not field_hypotheses(spec.r, spec.field):
        return None
    if spec.ambient == "skew":
        return bound("ant-range", n=spec.n, s=spec.s, r=spec.r)
    return bound("range-mxn", m=spec.m, n=spec.n, s=spec.s, r=spec.r)


def max_affine_dim(spec: SearchSpec, budget: int = DEFAULT_BUDGET):
    """Largest d for which an affine space with ranks exactly in [s, r] exists.

    Probes downward. When a proven bound applies the probe starts at
    bound + 1, so tightness costs one negative and one positive search; if
    a witness turns up at the starting point anyway the probe restarts from
    the ambient dimension. Returns ``(dim, result)`` with ``dim`` None when
    no dimension qualifies. Exhaustive mode makes the answer exact.
    """
    N = spec.ambient_dim
    b = catalog_bound(spec)
    start = N if b is None else min(N, b + 1)
    results = {}
    probes = []

    def probe(d):
        if d not in results:
            results[d] = exists_affine_of_dim(spec.with_dim(d), budget)
            probes.append({"dim": d, "found": results[d].found})
        return results[d]

    d = start
    if start < N and probe(start).found:
        d = N
    while d >= 0:
        res = probe(d)
        if res.found:
            res.probes = probes
            return d, res
        d -= 1
    return None, SearchResult(False, probes=probes)
