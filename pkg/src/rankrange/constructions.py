"""Extremal affine families and the catalog of dimension bounds.

Every bound is a plain integer formula; field hypotheses are not checked
by :func:`bound` (see :func:`field_hypotheses` for the range family).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

import numpy as np

from .affine import DEFAULT_BUDGET, AffineSpace, RankProfile, canonicalize, rank_profile
from .errors import InvalidParams
from .field import PrimeField, make_field
from .matrix import Mat, diag, identity, unit


@dataclass(frozen=True)
class BoundQuery:
    family: str
    m: int | None = None
    n: int | None = None
    s: int | None = None
    r: int | None = None


def _need(q: BoundQuery, *names):
    vals = []
    for name in names:
        v = getattr(q, name)
        if v is None:
            raise InvalidParams(f"family {q.family!r} needs parameter {name}")
        if not isinstance(v, int) or v < 0:
            raise InvalidParams(f"{name} must be a non-negative integer, got {v!r}")
        vals.append(v)
    return vals


def _require(cond, msg):
    if not cond:
        raise InvalidParams(msg)


def _range_mxn(q):
    m, n, s, r = _need(q, "m", "n", "s", "r")
    _require(s <= r <= min(m, n), "need s <= r <= min(m, n)")
    return r * max(m, n) - comb(s + 1, 2)


def _flanders(q):
    m, n, r = _need(q, "m", "n", "r")
    _require(r <= min(m, n), "need r <= min(m, n)")
    return r * max(m, n)


def _rank_below(q):
    m, n, s = _need(q, "m", "n", "s")
    _require(s <= min(m, n), "need s <= min(m, n)")
    return m * n - comb(s + 1, 2)


def _ant_below(q):
    n, s = _need(q, "n", "s")
    _require(s % 2 == 0 and s <= n, "need s even and s <= n")
    return n * (n - 1) // 2 - s * s // 4


def _ant_range(q):
    n, s, r = _need(q, "n", "s", "r")
    _require(s % 2 == 0 and r % 2 == 0, "need s and r even")
    _require(s <= r <= n, "need s <= r <= n")
    return (n - 1) * r // 2 - s * s // 4


def _echelon_constant(q):
    m, n, r = _need(q, "m", "n", "r")
    _require(r <= min(m, n), "need r <= min(m, n)")
    return r * n - r * (r + 1) // 2


def _echelon_lower(q):
    m, n, s, r = _need(q, "m", "n", "s", "r")
    _require(s < r <= min(m, n), "need s < r <= min(m, n)")
    return s * n - s * (s + 1) // 2 + n - s


def _echelon_upper(q):
    m, n, s, r = _need(q, "m", "n", "s", "r")
    _require(s < r <= min(m, n), "need s < r <= min(m, n)")
    return r * n - r * (r + 1) // 2 + 1


def _sym_real(q):
    n, r = _need(q, "n", "r")
    _require(r <= n, "need r <= n")
    h = r // 2
    return h * (n - h)


def _mxn_real_constant(q):
    m, n, r = _need(q, "m", "n", "r")
    _require(r <= m <= n, "need r <= m <= n")
    return r * n - r * (r + 1) // 2


def _ant_real(q):
    # r is the (even) rank; the classical statement indexes by half-rank
    n, r = _need(q, "n", "r")
    _require(r % 2 == 0, "need r even")
    h = r // 2
    if n >= r + 2:
        return (n - h - 1) * h
    if n == r:
        return h * (h - 1)
    if n == r + 1:
        return h * (h + 1)
    raise InvalidParams("need n >= r")


def _westwick_lower(q):
    m, n, r = _need(q, "m", "n", "r")
    _require(2 <= r <= m <= n, "need 2 <= r <= m <= n")
    return n - r + 1


def _westwick_upper(q):
    m, n, r = _need(q, "m", "n", "r")
    _require(2 <= r <= m <= n, "need 2 <= r <= m <= n")
    return m + n - 2 * r + 1


def _ilic_landsberg(q):
    n, r = _need(q, "n", "r")
    _require(r >= 2 and r % 2 == 0 and r <= n, "need r even, 2 <= r <= n")
    return n - r + 1


def _sym_odd(q):
    n, r = _need(q, "n", "r")
    _require(r % 2 == 1 and r <= n, "need r odd and r <= n")
    return 1


def _weak_any_field(q):
    m, n, s, r = _need(q, "m", "n", "s", "r")
    _require(s <= r <= min(m, n), "need s <= r <= min(m, n)")
    return m * n - comb(s + 1, 2)


def _weak_char_not_2(q):
    m, n, s, r = _need(q, "m", "n", "s", "r")
    _require(s <= r <= min(m, n), "need s <= r <= min(m, n)")
    return m * n - (min(m, n) - r) * r


FAMILIES = {
    "range-mxn": _range_mxn,
    "flanders": _flanders,
    "rank-below": _rank_below,
    "ant-below": _ant_below,
    "ant-range": _ant_range,
    "echelon-constant": _echelon_constant,
    "echelon-range-lower": _echelon_lower,
    "echelon-range-upper": _echelon_upper,
    "echelon-range": lambda q: (_echelon_lower(q), _echelon_upper(q)),
    "sym-real": _sym_real,
    "mxn-real-constant": _mxn_real_constant,
    "ant-real": _ant_real,
    "westwick-lower": _westwick_lower,
    "westwick-upper": _westwick_upper,
    "westwick": lambda q: (_westwick_lower(q), _westwick_upper(q)),
    "ilic-landsberg": _ilic_landsberg,
    "sym-odd": _sym_odd,
    "weak-any-field": _weak_any_field,
    "weak-char-not-2": _weak_char_not_2,
}


def bound(query, **params):
    """Value of a catalogued dimension formula.

    ``query`` is a :class:`BoundQuery` or a family name with keyword
    parameters::

        >>> bound("range-mxn", m=3, n=3, s=2, r=2)
        3

    Two-sided families (``westwick``, ``echelon-range``) return a
    ``(lower, upper)`` pair.
    """
    if isinstance(query, str):
        query = BoundQuery(query, **params)
    try:
        fn = FAMILIES[query.family]
    except KeyError:
        raise InvalidParams(f"unknown family {query.family!r}") from None
    return fn(query)


def field_hypotheses(r: int, field: PrimeField) -> bool:
    """|K| >= r + 2 and characteristic != 2."""
    return field.has_cardinality_at_least(r + 2) and not field.char_is_two()


# -- constructions --------------------------------------------------------


def _check_ints(**kw):
    for k, v in kw.items():
        if not isinstance(v, int) or v < 0:
            raise InvalidParams(f"{k} must be a non-negative integer, got {v!r}")


def _space(shape, field, fixed_ones, free_groups) -> AffineSpace:
    """Offset with ones at ``fixed_ones``; one generator per group of positions."""
    m, n = shape
    off = np.zeros((m, n), dtype=np.int64)
    for i, j in fixed_ones:
        off[i - 1, j - 1] = 1
    basis = []
    for group in free_groups:
        b = np.zeros((m, n), dtype=np.int64)
        for i, j in group:
            b[i - 1, j - 1] = 1
        basis.append(Mat(b, field))
    return canonicalize(AffineSpace(Mat(off, field), basis))


def construct_range(m: int, n: int, s: int, r: int, field: PrimeField) -> AffineSpace:
    """The family with ranks exactly in [s, r] of dimension r*max(m,n) - C(s+1, 2).

    For m <= n: rows 1..s are unit upper triangular in the leading s x s
    corner and free to the right of it, rows s+1..r are free, rows below r
    vanish. For m > n the n x m family is built and transposed.
    """
    _check_ints(m=m, n=n, s=s, r=r)
    if m < 1 or n < 1:
        raise InvalidParams("need m, n >= 1")
    if not s <= r <= min(m, n):
        raise InvalidParams("need s <= r <= min(m, n)")
    if m > n:
        return canonicalize(construct_range(n, m, s, r, field).transpose())
    free = []
    for i in range(1, r + 1):
        for j in range(1, n + 1):
            if i <= s and j <= i:
                continue
            free.append([(i, j)])
    return _space((m, n), field, [(i, i) for i in range(1, s + 1)], free)


def construct_echelon_constant(m: int, n: int, r: int, field: PrimeField) -> AffineSpace:
    """Unit upper triangular in rows 1..r, zero below: constant rank r, all echelon."""
    _check_ints(m=m, n=n, r=r)
    if m < 1 or n < 1 or r > min(m, n):
        raise InvalidParams("need r <= min(m, n) and m, n >= 1")
    free = [[(i, j)] for i in range(1, r + 1) for j in range(i + 1, n + 1)]
    return _space((m, n), field, [(i, i) for i in range(1, r + 1)], free)


def construct_echelon_range(m: int, n: int, s: int, r: int, field: PrimeField) -> AffineSpace:
    """All-echelon family with min rank s and max rank r, dimension sn - s(s+1)/2 + n - s.

    Rows 1..s carry the unit upper triangular pattern. Row s+1 is a free
    vector v on columns s+1..n and row s+k is v shifted k-1 places to the
    right (entries pushed past column n are dropped); rows below r vanish.
    """
    _check_ints(m=m, n=n, s=s, r=r)
    if m < 1 or n < 1 or not s < r <= min(m, n):
        raise InvalidParams("need s < r <= min(m, n)")
    free = [[(i, j)] for i in range(1, s + 1) for j in range(i + 1, n + 1)]
    for c in range(s + 1, n + 1):
        free.append([(s + k, c + k - 1) for k in range(1, r - s + 1) if c + k - 1 <= n])
    return _space((m, n), field, [(i, i) for i in range(1, s + 1)], free)


def construct_counterexample_f3() -> AffineSpace:
    """{[[a, b, c], [0, a+1, d], [0, 0, a+2]]} over Z/3: every element has rank 2."""
    F = make_field(3)
    basis = [identity(3, F), unit(1, 2, 3, 3, F), unit(1, 3, 3, 3, F), unit(2, 3, 3, 3, F)]
    return canonicalize(AffineSpace(diag([0, 1, 2], F), basis))


CONSTRUCTIONS = ("range-mxn", "echelon-constant", "echelon-range", "counterexample-f3")


def construct(family: str, m=None, n=None, s=None, r=None, field: PrimeField | None = None) -> AffineSpace:
    """Dispatch to one of the named constructions."""
    if family == "counterexample-f3":
        return construct_counterexample_f3()
    if field is None:
        raise InvalidParams("a field is required")
    try:
        if family == "range-mxn":
            return construct_range(m, n, s, r, field)
        if family == "echelon-constant":
            return construct_echelon_constant(m, n, r, field)
        if family == "echelon-range":
            return construct_echelon_range(m, n, s, r, field)
    except TypeError:
        raise InvalidParams(f"missing parameters for {family!r}") from None
    raise InvalidParams(f"no construction for family {family!r}; choose from {CONSTRUCTIONS}")


# -- verification ---------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    family: str
    params: dict
    p: int
    dimension: int
    profile: RankProfile | None = None
    checks: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "p": self.p,
            "dimension": self.dimension,
            "elements_scanned": self.profile.total if self.profile else 0,
            "profile": self.profile.to_dict() if self.profile else None,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
            "notes": self.notes,
            "passed": self.passed,
        }


def verify_family(
    family: str,
    params: dict | None = None,
    field: PrimeField | None = None,
    element_budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> VerificationReport:
    """Build a family, profile it exhaustively and compare with its formulas."""
    from .echelon import all_echelon

    params = {k: v for k, v in (params or {}).items() if v is not None}
    if family == "counterexample-f3":
        S = construct_counterexample_f3()
        field = S.field
        params = {"m": 3, "n": 3, "s": 2, "r": 2}
    else:
        S = construct(family, field=field, **params)
    rep = VerificationReport(family, params, field.p, S.dim)
    prof = rank_profile(S, element_budget, workers=workers)
    rep.profile = prof
    rep.add("all elements scanned", prof.total == field.p**S.dim, f"{prof.total} elements")
    m, n = params["m"], params["n"]
    r = params["r"]
    s = params.get("s", r)

    if family == "range-mxn":
        b = bound("range-mxn", m=m, n=n, s=s, r=r)
        rep.add("dimension equals r*max(m,n) - C(s+1,2)", S.dim == b, f"{S.dim} vs {b}")
        rep.add("min rank is s", prof.min_rank == s, f"min {prof.min_rank}")
        rep.add("max rank is r", prof.max_rank == r, f"max {prof.max_rank}")
        if not field_hypotheses(r, field):
            rep.notes.append("field below |K| >= r+2 or of characteristic 2: upper bound not guaranteed")
    elif family == "echelon-constant":
        b = bound("echelon-constant", m=m, n=n, r=r)
        rep.add("dimension equals rn - r(r+1)/2", S.dim == b, f"{S.dim} vs {b}")
        rep.add("every element has rank r", prof.has_range(r, r), str(prof.histogram))
        rep.add("every element is in row echelon form", all_echelon(S, element_budget))
    elif family == "echelon-range":
        lo, hi = bound("echelon-range", m=m, n=n, s=s, r=r)
        rep.add("dimension equals sn - s(s+1)/2 + n - s", S.dim == lo, f"{S.dim} vs {lo}")
        rep.add("dimension within upper bound", S.dim <= hi, f"{S.dim} <= {hi}")
        rep.add("min rank is s", prof.min_rank == s, f"min {prof.min_rank}")
        rep.add("max rank is r", prof.max_rank == r, f"max {prof.max_rank}")
        rep.add("every element is in row echelon form", all_echelon(S, element_budget))
    elif family == "counterexample-f3":
        b = bound("range-mxn", m=3, n=3, s=2, r=2)
        rep.add("dimension is 4", S.dim == 4, str(S.dim))
        rep.add("every element has rank 2", prof.histogram == {2: 81}, str(prof.histogram))
        violated = S.dim > b and not field_hypotheses(2, field)
        rep.add(
            "dimension exceeds r*max(m,n) - C(s+1,2) over a field with |K| < r+2",
            violated,
            f"{S.dim} > {b}",
        )
        rep.notes.append("expected: the range formula needs |K| >= r+2")
    return rep
