"""Dense matrices over a prime field.

Indices at the public surface (``submatrix``, ``unit``, ``entry``) are
1-based, following the usual row/column labelling in the literature.
Storage is a read-only ``int64`` numpy array of residues.
"""

from __future__ import annotations

import io

import numpy as np

from . import kernels
from .errors import FieldMismatch, SchurNotApplicable, ShapeError
from .field import Elem, PrimeField, make_field


class Mat:
    """Immutable m x n matrix over a :class:`PrimeField`."""

    __slots__ = ("_a", "_field")

    def __init__(self, entries, field: PrimeField):
        a = np.array(entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ShapeError(f"matrix needs shape (m, n) with m, n >= 1, got {a.shape}")
        a %= field.p
        a.setflags(write=False)
        object.__setattr__(self, "_a", a)
        object.__setattr__(self, "_field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @property
    def field(self) -> PrimeField:
        return self._field

    @property
    def p(self) -> int:
        return self._field.p

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the residues."""
        return self._a

    @property
    def shape(self):
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    def entry(self, i: int, j: int) -> Elem:
        """Entry in row ``i``, column ``j`` (1-based)."""
        return Elem(int(self._a[i - 1, j - 1]), self._field)

    def tolist(self):
        return self._a.tolist()

    def __repr__(self):
        return f"Mat({self._a.tolist()}, p={self.p})"

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (
            self._field == other._field
            and self.shape == other.shape
            and bool(np.array_equal(self._a, other._a))
        )

    def __hash__(self):
        return hash((self.p, self.shape, self._a.tobytes()))

    def _check(self, other: Mat, same_shape=True):
        if self._field != other._field:
            raise FieldMismatch(f"{self._field} vs {other._field}")
        if same_shape and self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Mat) -> Mat:
        self._check(other)
        return Mat(self._a + other._a, self._field)

    def __sub__(self, other: Mat) -> Mat:
        self._check(other)
        return Mat(self._a - other._a, self._field)

    def __neg__(self) -> Mat:
        return Mat(-self._a, self._field)

    def __mul__(self, c) -> Mat:
        if isinstance(c, Elem):
            if c.field != self._field:
                raise FieldMismatch(f"{self._field} vs {c.field}")
            c = c.value
        if not isinstance(c, (int, np.integer)):
            return NotImplemented
        return Mat(self._a * (int(c) % self.p), self._field)

    __rmul__ = __mul__

    def __matmul__(self, other: Mat) -> Mat:
        self._check(other, same_shape=False)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        return Mat(kernels.matmul(self._a, other._a, self.p), self._field)

    @property
    def T(self) -> Mat:
        return Mat(self._a.T, self._field)

    def transpose(self) -> Mat:
        return self.T

    def vec(self) -> np.ndarray:
        """Row-major vectorization."""
        return self._a.reshape(-1).copy()

    def inverse(self) -> Mat:
        if self.rows != self.cols:
            raise ShapeError("only square matrices can be inverted")
        inv = kernels.inverse(self._a, self.p)
        if inv is None:
            raise ZeroDivisionError("matrix is singular")
        return Mat(inv, self._field)


# -- named constructors ---------------------------------------------------


def identity(n: int, field: PrimeField) -> Mat:
    return Mat(np.eye(n, dtype=np.int64), field)


def zero(m: int, n: int, field: PrimeField) -> Mat:
    return Mat(np.zeros((m, n), dtype=np.int64), field)


def unit(i: int, j: int, m: int, n: int, field: PrimeField) -> Mat:
    """The matrix unit E_{i,j} of shape m x n (1-based position)."""
    if not (1 <= i <= m and 1 <= j <= n):
        raise IndexError(f"position ({i}, {j}) outside {m}x{n}")
    a = np.zeros((m, n), dtype=np.int64)
    a[i - 1, j - 1] = 1
    return Mat(a, field)


def diag(values, field: PrimeField) -> Mat:
    vals = [int(v) for v in values]
    return Mat(np.diag(np.array(vals, dtype=np.int64)), field)


def j2(field: PrimeField) -> Mat:
    """J = [[0, 1], [-1, 0]]."""
    return Mat([[0, 1], [-1, 0]], field)


def jbar(size: int, field: PrimeField) -> Mat:
    """Block diagonal matrix of ``size/2`` copies of J."""
    if size <= 0 or size % 2:
        raise ShapeError("jbar needs a positive even size")
    a = np.zeros((size, size), dtype=np.int64)
    for k in range(0, size, 2):
        a[k, k + 1] = 1
        a[k + 1, k] = -1
    return Mat(a, field)


def block(rows, field: PrimeField | None = None) -> Mat:
    """Assemble a block matrix from a nested list of :class:`Mat`."""
    field = field or rows[0][0].field
    for r in rows:
        for b in r:
            if b.field != field:
                raise FieldMismatch(f"{b.field} vs {field}")
    try:
        a = np.block([[b.array for b in r] for r in rows])
    except ValueError as exc:
        raise ShapeError(str(exc)) from None
    return Mat(a, field)


# -- invariants -----------------------------------------------------------


def rank(A: Mat) -> int:
    return kernels.rank(A.array, A.p)


def det(A: Mat) -> Elem:
    if A.rows != A.cols:
        raise ShapeError(f"determinant of non-square {A.shape} matrix")
    return Elem(kernels.det(A.array, A.p), A.field)


def _check_indices(idx, bound, what):
    idx = [int(i) for i in idx]
    if not idx:
        raise IndexError(f"empty {what} index list")
    for a, b in zip(idx, idx[1:]):
        if b <= a:
            raise IndexError(f"{what} indices must be strictly increasing: {idx}")
    if idx[0] < 1 or idx[-1] > bound:
        raise IndexError(f"{what} indices {idx} out of range 1..{bound}")
    return [i - 1 for i in idx]


def submatrix(A: Mat, rows, cols) -> Mat:
    """The submatrix on the given rows and columns (1-based, increasing)."""
    r = _check_indices(rows, A.rows, "row")
    c = _check_indices(cols, A.cols, "column")
    return Mat(A.array[np.ix_(r, c)], A.field)


def schur_det(A: Mat, B: Mat, C: Mat, D: Mat) -> Elem:
    """det [[A, B], [C, D]] through a Schur complement.

    Uses det(A) det(D - C A^-1 B) when A is invertible, otherwise
    det(D) det(A - B D^-1 C). Raises SchurNotApplicable when neither
    diagonal block is invertible.
    """
    n, m = A.rows, D.rows
    if A.cols != n or D.cols != m or B.shape != (n, m) or C.shape != (m, n):
        raise ShapeError(
            f"incompatible blocks A{A.shape} B{B.shape} C{C.shape} D{D.shape}"
        )
    for X in (B, C, D):
        A._check(X, same_shape=False)
    p = A.p
    Ainv = kernels.inverse(A.array, p)
    if Ainv is not None:
        comp = (D.array - kernels.matmul(kernels.matmul(C.array, Ainv, p), B.array, p)) % p
        return det(A) * kernels.det(comp, p)
    Dinv = kernels.inverse(D.array, p)
    if Dinv is not None:
        comp = (A.array - kernels.matmul(kernels.matmul(B.array, Dinv, p), C.array, p)) % p
        return det(D) * kernels.det(comp, p)
    raise SchurNotApplicable("both diagonal blocks are singular")


def is_row_echelon(A: Mat) -> bool:
    """Zero rows at the bottom, leading columns strictly increasing.

    Pivot values are not required to be 1.
    """
    return bool(kernels.batch_is_row_echelon(A.array[None])[0])


def is_skew(A: Mat) -> bool:
    """Square, A^T = -A and zero diagonal (alternating in every characteristic)."""
    a = A.array
    if a.shape[0] != a.shape[1]:
        return False
    return bool(np.array_equal((a + a.T) % A.p, np.zeros_like(a)) and not a.diagonal().any())


# -- text format ----------------------------------------------------------


def format_text(A: Mat) -> str:
    """``"m n p"`` header then one line of space-separated residues per row."""
    lines = [f"{A.rows} {A.cols} {A.p}"]
    lines += [" ".join(str(int(x)) for x in row) for row in A.array]
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> Mat:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ShapeError("empty matrix text")
    try:
        m, n, p = (int(t) for t in lines[0].split())
    except ValueError:
        raise ShapeError("header must be 'm n p'") from None
    if len(lines) - 1 != m:
        raise ShapeError(f"expected {m} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        vals = [int(t) for t in ln.split()]
        if len(vals) != n:
            raise ShapeError(f"expected {n} entries per row, found {len(vals)}")
        if any(v < 0 or v >= p for v in vals):
            raise ShapeError(f"entries must be residues in 0..{p - 1}")
        rows.append(vals)
    return Mat(rows, make_field(p))


def read_text(path) -> Mat:
    with io.open(path) as fh:
        return parse_text(fh.read())


def write_text(A: Mat, path) -> None:
    with io.open(path, "w") as fh:
        fh.write(format_text(A))
