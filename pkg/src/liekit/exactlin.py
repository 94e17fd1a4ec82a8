"""Exact rational linear algebra.

Dense matrices over python Fractions, reduced row echelon form, kernels,
linear solving, and a canonical subspace type. A subspace is always stored
as the reduced row echelon basis of its span, so two subspaces are equal
exactly when their stored bases are equal, with no further normalisation
step.

All values are immutable after construction and every operation is a pure
function returning a fresh value, so everything here can be shared freely
between threads.

Wire conventions: a rational serialises as str(Fraction), which is "p/q" in
lowest terms with q > 0, or "p" when the denominator is 1. A matrix
serialises as a JSON array of arrays of such strings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction
Vector = tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^-?\d+(?:/[1-9]\d*)?$")

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ShapeError(ValueError):
    """Operand shapes or ambient dimensions do not match."""


class SingularMatrixError(ValueError):
    """An inverse was requested for a matrix without one."""


def as_scalar(x: int | Fraction) -> Fraction:
    """Coerce an int to Fraction; reject floats and anything else inexact."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def parse_scalar(text: str) -> Fraction:
    """Parse "p" or "p/q" with q > 0. Lowest terms are not required on input."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"malformed rational literal: {text!r}")
    return Fraction(text)


def format_scalar(x: Fraction) -> str:
    return str(x)


def scalar_arith(a: int | Fraction, b: int | Fraction, op: str) -> Fraction:
    """Field arithmetic dispatcher. Division by zero raises ZeroDivisionError."""
    a, b = as_scalar(a), as_scalar(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown scalar operation {op!r}")


# ---------------------------------------------------------------------------
# vectors


def vector(entries: Iterable[int | Fraction]) -> Vector:
    return tuple(as_scalar(x) for x in entries)


def zero_vector(n: int) -> Vector:
    return (_ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    if not 0 <= i < n:
        raise ShapeError(f"unit index {i} out of range for dimension {n}")
    return tuple(_ONE if j == i else _ZERO for j in range(n))


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    if len(u) != len(v):
        raise ShapeError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    if len(u) != len(v):
        raise ShapeError(f"vector lengths differ: {len(u)} vs {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c: int | Fraction, v: Sequence[Fraction]) -> Vector:
    c = as_scalar(c)
    return tuple(c * a for a in v)


def vec_dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ShapeError(f"vector lengths differ: {len(u)} vs {len(v)}")
    acc = _ZERO
    for a, b in zip(u, v):
        if a and b:
            acc += a * b
    return acc


def vec_is_zero(v: Sequence[Fraction]) -> bool:
    return not any(v)


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class Matrix:
    """Dense rational matrix, stored row major as nested tuples."""

    rows: int
    cols: int
    data: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("negative matrix dimensions")
        if len(self.data) != self.rows:
            raise ShapeError("row count does not match data")
        for row in self.data:
            if len(row) != self.cols:
                raise ShapeError("ragged matrix data")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int | Fraction]], cols: int | None = None) -> Matrix:
        data = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        if data:
            ncols = len(data[0])
        elif cols is not None:
            ncols = cols
        else:
            ncols = 0
        return Matrix(len(data), ncols, data)

    @staticmethod
    def identity(n: int) -> Matrix:
        return Matrix(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @staticmethod
    def zeros(rows: int, cols: int) -> Matrix:
        return Matrix(rows, cols, tuple(zero_vector(cols) for _ in range(rows)))

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> Matrix:
        return Matrix(self.cols, self.rows, tuple(zip(*self.data)) if self.data else ())

    def __add__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("matrix shapes differ in addition")
        return Matrix(self.rows, self.cols, tuple(vec_add(a, b) for a, b in zip(self.data, other.data)))

    def __sub__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("matrix shapes differ in subtraction")
        return Matrix(self.rows, self.cols, tuple(vec_sub(a, b) for a, b in zip(self.data, other.data)))

    def __neg__(self) -> Matrix:
        return self.scale(-1)

    def scale(self, c: int | Fraction) -> Matrix:
        c = as_scalar(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * x for x in row) for row in self.data))

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out: list[Vector] = []
        odata = other.data
        for arow in self.data:
            acc = [_ZERO] * other.cols
            for k, a in enumerate(arow):
                if not a:
                    continue
                brow = odata[k]
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
            out.append(tuple(acc))
        return Matrix(self.rows, other.cols, tuple(out))

    def mul_vec(self, v: Sequence[Fraction]) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise ShapeError("vector length does not match column count")
        out = []
        for row in self.data:
            acc = _ZERO
            for a, b in zip(row, v):
                if a and b:
                    acc += a * b
            out.append(acc)
        return tuple(out)

    def vec_mul(self, v: Sequence[Fraction]) -> Vector:
        """Row vector times matrix."""
        if len(v) != self.rows:
            raise ShapeError("vector length does not match row count")
        acc = [_ZERO] * self.cols
        for c, row in zip(v, self.data):
            if not c:
                continue
            for j, b in enumerate(row):
                if b:
                    acc[j] += c * b
        return tuple(acc)

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ShapeError("trace of a non-square matrix")
        return sum((self.data[i][i] for i in range(self.rows)), _ZERO)

    def pow(self, k: int) -> Matrix:
        """Non-negative integer power by repeated squaring."""
        if not self.is_square():
            raise ShapeError("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base_needed = k > 1
            if base_needed:
                base = base @ base
            k >>= 1
        return result

    def stack(self, other: Matrix) -> Matrix:
        """Vertical concatenation."""
        if self.cols != other.cols:
            raise ShapeError("column counts differ in stack")
        return Matrix(self.rows + other.rows, self.cols, self.data + other.data)

    def to_json(self) -> list[list[str]]:
        return [[format_scalar(x) for x in row] for row in self.data]

    @staticmethod
    def from_json(obj: object, cols: int | None = None) -> Matrix:
        if not isinstance(obj, list) or not all(isinstance(r, list) for r in obj):
            raise ValueError("matrix JSON must be an array of arrays")
        return Matrix.from_rows([[parse_scalar(x) for x in row] for row in obj], cols=cols)


# ---------------------------------------------------------------------------
# echelon form, kernel, solving


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        head = rows[r][c]
        if head != 1:
            inv = _ONE / head
            rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


@dataclass(frozen=True)
class RrefResult:
    reduced: Matrix
    rank: int
    pivot_cols: tuple[int, ...]


def rref(m: Matrix) -> RrefResult:
    """Reduced row echelon form: unit pivots, pivot columns cleared, zero rows dropped."""
    rows = [list(r) for r in m.data]
    kept, pivots = _rref_rows(rows, m.cols)
    reduced = Matrix.from_rows(kept, cols=m.cols)
    return RrefResult(reduced, len(pivots), tuple(pivots))


def kernel(m: Matrix) -> "Subspace":
    """Right null space {x : m @ x = 0} as a subspace of dimension-cols space."""
    res = rref(m)
    pivot_set = set(res.pivot_cols)
    vecs: list[list[Fraction]] = []
    rdata = res.reduced.data
    for j in range(m.cols):
        if j in pivot_set:
            continue
        v = [_ZERO] * m.cols
        v[j] = _ONE
        for r, p in enumerate(res.pivot_cols):
            if rdata[r][j]:
                v[p] = -rdata[r][j]
        vecs.append(v)
    return Subspace.from_vectors(m.cols, vecs)


def solve(m: Matrix, rhs: Sequence[Fraction]) -> Vector | None:
    """One solution x of m @ x = rhs, or None when the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(rhs) != m.rows:
        raise ShapeError("right hand side length does not match row count")
    rows = [list(r) + [as_scalar(b)] for r, b in zip(m.data, rhs)]
    if not rows:
        return zero_vector(m.cols)
    kept, pivots = _rref_rows(rows, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [_ZERO] * m.cols
    for row, p in zip(kept, pivots):
        x[p] = row[m.cols]
    return tuple(x)


def invert(m: Matrix) -> Matrix:
    """Exact inverse. Raises SingularMatrixError when no inverse exists."""
    if not m.is_square():
        raise ShapeError("inverse of a non-square matrix")
    n = m.rows
    rows = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(m.data)]
    kept, pivots = _rref_rows(rows, 2 * n)
    if len(pivots) < n or any(p >= n for p in pivots):
        raise SingularMatrixError("matrix is singular")
    return Matrix.from_rows([row[n:] for row in kept], cols=n)


def det(m: Matrix) -> Fraction:
    """Exact determinant by Gaussian elimination with partial pivoting."""
    if not m.is_square():
        raise ShapeError("determinant of a non-square matrix")
    rows = [list(r) for r in m.data]
    n = m.rows
    sign = 1
    acc = _ONE
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            return _ZERO
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            sign = -sign
        head = rows[c][c]
        acc *= head
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] / head
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[c])]
    return acc if sign > 0 else -acc


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of Q^n stored as its reduced row echelon basis.

    The representation is canonical: pivots are 1, pivot columns are
    otherwise zero, pivot positions strictly increase, and no zero rows are
    kept. Dataclass equality is therefore subspace equality.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    @staticmethod
    def from_vectors(ambient_dim: int, vectors: Iterable[Sequence[int | Fraction]]) -> Subspace:
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise ShapeError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append([as_scalar(x) for x in v])
        kept, _ = _rref_rows(rows, ambient_dim)
        return Subspace(ambient_dim, tuple(tuple(r) for r in kept))

    @staticmethod
    def zero(ambient_dim: int) -> Subspace:
        return Subspace(ambient_dim, ())

    @staticmethod
    def full(ambient_dim: int) -> Subspace:
        return Subspace(ambient_dim, tuple(unit_vector(ambient_dim, i) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def _check_ambient(self, other: Subspace) -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def __add__(self, other: Subspace) -> Subspace:
        self._check_ambient(other)
        return Subspace.from_vectors(self.ambient_dim, list(self.basis) + list(other.basis))

    def __and__(self, other: Subspace) -> Subspace:
        """Intersection via the kernel of the stacked-basis relation matrix."""
        self._check_ambient(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        if self.is_full():
            return other
        if other.is_full():
            return self
        stacked = list(self.basis) + [vec_scale(-1, v) for v in other.basis]
        relations = kernel(Matrix.from_rows(stacked, cols=self.ambient_dim).transpose())
        r = len(self.basis)
        vecs = []
        for rel in relations.basis:
            acc = [_ZERO] * self.ambient_dim
            for coeff, bvec in zip(rel[:r], self.basis):
                if coeff:
                    for j, b in enumerate(bvec):
                        if b:
                            acc[j] += coeff * b
            vecs.append(acc)
        return Subspace.from_vectors(self.ambient_dim, vecs)

    def reduce(self, v: Sequence[Fraction]) -> Vector:
        """Residue of v after clearing the pivot coordinates with this basis."""
        if len(v) != self.ambient_dim:
            raise ShapeError("vector length does not match ambient dimension")
        res = [as_scalar(x) for x in v]
        for row in self.basis:
            p = next(i for i, x in enumerate(row) if x)
            c = res[p]
            if c:
                for j, b in enumerate(row):
                    if b:
                        res[j] -= c * b
        return tuple(res)

    def contains_vector(self, v: Sequence[Fraction]) -> bool:
        return vec_is_zero(self.reduce(v))

    def __contains__(self, v: Sequence[Fraction]) -> bool:
        return self.contains_vector(v)

    def coords_of(self, v: Sequence[Fraction]) -> Vector | None:
        """Coefficients of v against the stored basis, or None if v lies outside."""
        if len(v) != self.ambient_dim:
            raise ShapeError("vector length does not match ambient dimension")
        res = [as_scalar(x) for x in v]
        coords = []
        for row in self.basis:
            p = next(i for i, x in enumerate(row) if x)
            c = res[p]
            coords.append(c)
            if c:
                for j, b in enumerate(row):
                    if b:
                        res[j] -= c * b
        if not vec_is_zero(res):
            return None
        return tuple(coords)

    def contains_subspace(self, other: Subspace) -> bool:
        self._check_ambient(other)
        return all(self.contains_vector(v) for v in other.basis)

    def __le__(self, other: Subspace) -> bool:
        return other.contains_subspace(self)

    def __lt__(self, other: Subspace) -> bool:
        return self <= other and self != other

    def basis_matrix(self) -> Matrix:
        return Matrix.from_rows(self.basis, cols=self.ambient_dim)


def subspace_lattice(a: Subspace, b: Subspace, op: str) -> Subspace | bool:
    """Lattice dispatcher: sum, intersect, contains_subspace, equals."""
    if op == "sum":
        return a + b
    if op == "intersect":
        return a & b
    if op == "contains_subspace":
        return a.contains_subspace(b)
    if op == "equals":
        return a == b
    raise ValueError(f"unknown lattice operation {op!r}")
