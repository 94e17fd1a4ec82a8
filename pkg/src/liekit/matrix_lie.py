"""Matrix realisations of Lie algebras.

Square rational matrices form a Lie algebra under the commutator AB - BA.
This module builds the standard families inside it: the full algebra gl(n),
the trace-zero algebra sl(n), and the skew-adjoint algebras cut out by a
bilinear form J (so, sp, and the alternate block models of so). A
MatrixLieAlgebra is a tuple of named basis matrices; construction checks
linear independence and conversion to structure constants checks closure,
so an algebra that survives to_abstract carries an exact certificate that
its basis really spans a Lie subalgebra.

Basis orders are fixed and documented on each constructor so that the
serialised output of every family is reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from liekit.errors import NotClosedError
from liekit.exactlin import (
    Matrix,
    ShapeError,
    SingularMatrixError,
    Vector,
    as_scalar,
    invert,
    kernel,
    rref,
)
from liekit.lie_core import LieAlgebra, constants_from_sparse, verified

_ZERO = Fraction(0)
_ONE = Fraction(1)


def matrix_bracket(a: Matrix, b: Matrix) -> Matrix:
    """Commutator AB - BA of two square matrices of the same size."""
    if not (a.is_square() and b.is_square() and a.rows == b.rows):
        raise ShapeError("commutator needs two square matrices of equal size")
    return a @ b - b @ a


def is_adjoint_pair(j: Matrix, j2: Matrix, a: Matrix, b: Matrix) -> bool:
    """Whether b is adjoint to a across the forms: transpose(a) @ j2 = j @ b."""
    if not (j.is_square() and j2.is_square() and j.rows == j2.rows):
        raise ShapeError("forms must be square and of equal size")
    if not (a.is_square() and b.is_square() and a.rows == j.rows and b.rows == j.rows):
        raise ShapeError("matrices must match the form size")
    return a.transpose() @ j2 == j @ b


def is_skew_adjoint(j: Matrix, a: Matrix) -> bool:
    """Whether a is skew-adjoint for the form j: transpose(a) @ j = -(j @ a)."""
    return is_adjoint_pair(j, j, a, -a)


def flatten(m: Matrix) -> Vector:
    """Row-major flattening of a matrix into a vector."""
    out: list[Fraction] = []
    for row in m.data:
        out.extend(row)
    return tuple(out)


def unflatten(v: Sequence[Fraction], rows: int, cols: int) -> Matrix:
    if len(v) != rows * cols:
        raise ShapeError("vector length does not match the requested shape")
    return Matrix.from_rows([list(v[i * cols : (i + 1) * cols]) for i in range(rows)], cols=cols)


@dataclass(frozen=True)
class MatrixLieAlgebra:
    """A linearly independent family of n by n matrices, presumed to span a
    Lie subalgebra. Independence is checked on construction; closure under
    the commutator is checked (and certified) by to_abstract.

    ``form`` records the bilinear form cutting the family out when there is
    one; every basis matrix is then verified skew-adjoint for it.
    """

    size: int
    name: str
    element_names: tuple[str, ...]
    basis: tuple[Matrix, ...]
    form: Matrix | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.size < 0:
            raise ValueError("negative matrix size")
        if len(self.element_names) != len(self.basis):
            raise ValueError("one name per basis matrix is required")
        for m in self.basis:
            if m.rows != self.size or m.cols != self.size:
                raise ShapeError("basis matrix of the wrong size")
        if self.form is not None:
            if self.form.rows != self.size or self.form.cols != self.size:
                raise ShapeError("form size does not match matrix size")
            for name, m in zip(self.element_names, self.basis):
                if not is_skew_adjoint(self.form, m):
                    raise ValueError(f"basis matrix {name} is not skew-adjoint for the form")
        self._coordinatise()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _coordinatise(self) -> None:
        """Precompute the pivot-column transform used by coords_of.

        With B the matrix whose rows are the flattened basis elements and p
        its RREF pivot columns, any v in the span satisfies
        x = v[p] @ inverse(B[:, p]); the candidate x is then verified against
        all coordinates, which is what certifies membership.
        """
        flat = [flatten(m) for m in self.basis]
        if not flat:
            self._cache["pivots"] = ()
            self._cache["pinv"] = Matrix.zeros(0, 0)
            self._cache["flat"] = ()
            return
        res = rref(Matrix.from_rows([list(f) for f in flat], cols=self.size * self.size))
        if res.rank != len(self.basis):
            raise ValueError("basis matrices are linearly dependent")
        pivots = res.pivot_cols
        p = Matrix.from_rows([[f[c] for c in pivots] for f in flat], cols=len(pivots))
        self._cache["pivots"] = pivots
        self._cache["pinv"] = invert(p)
        self._cache["flat"] = tuple(flat)

    def coords_of(self, m: Matrix) -> Vector | None:
        """Coefficients of m against the basis, or None when m is outside
        the span. Exact; zero-skipping throughout."""
        if m.rows != self.size or m.cols != self.size:
            raise ShapeError("matrix size does not match the algebra")
        v = flatten(m)
        pivots = self._cache["pivots"]
        pinv: Matrix = self._cache["pinv"]
        d = len(self.basis)
        x = [_ZERO] * d
        for j, c in enumerate(pivots):
            u = v[c]
            if u:
                row = pinv.data[j]
                for i in range(d):
                    if row[i]:
                        x[i] += u * row[i]
        # Verify the candidate on every coordinate.
        acc = [_ZERO] * (self.size * self.size)
        flat = self._cache["flat"]
        for i in range(d):
            xi = x[i]
            if xi:
                fi = flat[i]
                for c, val in enumerate(fi):
                    if val:
                        acc[c] += xi * val
        if tuple(acc) != v:
            return None
        return tuple(x)

    def element(self, coords: Sequence[Fraction]) -> Matrix:
        """Linear combination of the basis with the given coefficients."""
        if len(coords) != len(self.basis):
            raise ShapeError("coefficient count does not match the basis")
        acc = Matrix.zeros(self.size, self.size)
        for c, m in zip(coords, self.basis):
            if c:
                acc = acc + m.scale(as_scalar(c))
        return acc


def to_abstract(m: MatrixLieAlgebra) -> LieAlgebra:
    """Structure constants of the matrix algebra over its own basis.

    Every basis-pair commutator is expressed exactly in the basis; a pair
    whose commutator leaves the span raises NotClosedError naming it. The
    result passes the full axiom check and is cached on the input.
    """
    cached = m._cache.get("abstract")
    if cached is not None:
        return cached
    d = m.dim
    table: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for i in range(d):
        for j in range(i + 1, d):
            c = matrix_bracket(m.basis[i], m.basis[j])
            coords = m.coords_of(c)
            if coords is None:
                raise NotClosedError(
                    f"commutator of {m.element_names[i]} and {m.element_names[j]} "
                    f"leaves the span of {m.name}"
                )
            terms = [(k, x) for k, x in enumerate(coords) if x]
            if terms:
                table[(i, j)] = terms
    algebra = verified(
        LieAlgebra(d, m.element_names, constants_from_sparse(d, table))
    )
    m._cache["abstract"] = algebra
    return algebra


def certify_closure(m: MatrixLieAlgebra) -> bool:
    """Run the closure certificate without keeping the constants."""
    to_abstract(m)
    return True


def matrix_algebra_to_json(m: MatrixLieAlgebra) -> dict:
    """Abstract JSON augmented with the concrete matrices."""
    obj = to_abstract(m).to_json()
    obj["matrix_basis"] = [mat.to_json() for mat in m.basis]
    return obj


# ---------------------------------------------------------------------------
# skew-adjoint algebras and the classical families


def skew_adjoint_algebra(j: Matrix, name: str | None = None) -> MatrixLieAlgebra:
    """All matrices a with transpose(a) @ j = -(j @ a), as a MatrixLieAlgebra.

    The defining condition is linear, so the algebra is the kernel of an
    n^2 by n^2 system; the basis is that kernel's canonical echelon basis,
    with elements named b0, b1, ... in order.
    """
    if not j.is_square():
        raise ShapeError("the form must be square")
    n = j.rows
    rows: list[list[Fraction]] = []
    for i in range(n):
        for jj in range(n):
            row = [_ZERO] * (n * n)
            for r in range(n):
                if j.data[r][jj]:
                    row[r * n + i] += j.data[r][jj]
                if j.data[i][r]:
                    row[r * n + jj] += j.data[i][r]
            rows.append(row)
    space = kernel(Matrix.from_rows(rows, cols=n * n))
    basis = tuple(unflatten(v, n, n) for v in space.basis)
    names = tuple(f"b{i}" for i in range(len(basis)))
    return MatrixLieAlgebra(n, name or f"skew_adjoint({n})", names, basis, form=j)


def _unit_matrix(n: int, i: int, j: int) -> Matrix:
    rows = [[_ZERO] * n for _ in range(n)]
    rows[i][j] = _ONE
    return Matrix.from_rows(rows, cols=n)


def gl(n: int) -> MatrixLieAlgebra:
    """Full matrix algebra; basis all unit matrices in row-major order."""
    if n < 1:
        raise ValueError("gl needs size at least 1")
    basis = []
    names = []
    for i in range(n):
        for j in range(n):
            basis.append(_unit_matrix(n, i, j))
            names.append(f"E{i + 1},{j + 1}")
    return MatrixLieAlgebra(n, f"gl({n})", tuple(names), tuple(basis))


def sl(n: int) -> MatrixLieAlgebra:
    """Trace-zero matrices. Basis order: strictly upper unit matrices
    row-major, then the diagonal differences H_k = E_kk - E_(k+1)(k+1),
    then strictly lower unit matrices row-major. For n = 2 this is the
    familiar (E, H, F) triple."""
    if n < 2:
        raise ValueError("sl needs size at least 2")
    basis = []
    names = []
    for i in range(n):
        for j in range(i + 1, n):
            basis.append(_unit_matrix(n, i, j))
            names.append(f"E{i + 1},{j + 1}")
    for k in range(n - 1):
        basis.append(_unit_matrix(n, k, k) - _unit_matrix(n, k + 1, k + 1))
        names.append(f"H{k + 1}")
    for i in range(n):
        for j in range(i):
            basis.append(_unit_matrix(n, i, j))
            names.append(f"E{i + 1},{j + 1}")
    return MatrixLieAlgebra(n, f"sl({n})", tuple(names), tuple(basis))


def so(n: int) -> MatrixLieAlgebra:
    """Skew-symmetric matrices (the identity form). Basis A_ij = E_ij - E_ji
    for i < j, row-major."""
    if n < 1:
        raise ValueError("so needs size at least 1")
    basis = []
    names = []
    for i in range(n):
        for j in range(i + 1, n):
            basis.append(_unit_matrix(n, i, j) - _unit_matrix(n, j, i))
            names.append(f"A{i + 1},{j + 1}")
    return MatrixLieAlgebra(n, f"so({n})", tuple(names), tuple(basis), form=Matrix.identity(n))


def _sp_form(m: int) -> Matrix:
    rows = [[_ZERO] * (2 * m) for _ in range(2 * m)]
    for i in range(m):
        rows[i][m + i] = -_ONE
        rows[m + i][i] = _ONE
    return Matrix.from_rows(rows, cols=2 * m)


def sp(size: int) -> MatrixLieAlgebra:
    """Symplectic algebra on matrices of the given even size 2m, for the
    block form with -identity above the diagonal and identity below.
    Basis order: X_ij (block diag(E_ij, -E_ji), all i, j row-major),
    then Y_ij (upper-right symmetric units, i <= j), then Z_ij (lower-left
    symmetric units, i <= j)."""
    if size < 2 or size % 2:
        raise ValueError("sp needs an even size of at least 2")
    m = size // 2
    basis = []
    names = []
    for i in range(m):
        for j in range(m):
            x = _unit_matrix(size, i, j) - _unit_matrix(size, m + j, m + i)
            basis.append(x)
            names.append(f"X{i + 1},{j + 1}")
    for i in range(m):
        for j in range(i, m):
            y = _unit_matrix(size, i, m + j)
            if i != j:
                y = y + _unit_matrix(size, j, m + i)
            basis.append(y)
            names.append(f"Y{i + 1},{j + 1}")
    for i in range(m):
        for j in range(i, m):
            z = _unit_matrix(size, m + i, j)
            if i != j:
                z = z + _unit_matrix(size, m + j, i)
            basis.append(z)
            names.append(f"Z{i + 1},{j + 1}")
    return MatrixLieAlgebra(size, f"sp({size})", tuple(names), tuple(basis), form=_sp_form(m))


def jd_form(m: int) -> Matrix:
    """The split symmetric block form with identities off the diagonal."""
    rows = [[_ZERO] * (2 * m) for _ in range(2 * m)]
    for i in range(m):
        rows[i][m + i] = _ONE
        rows[m + i][i] = _ONE
    return Matrix.from_rows(rows, cols=2 * m)


def so_JD(m: int) -> MatrixLieAlgebra:
    """Skew-adjoint algebra of the split form jd_form(m) on 2m by 2m
    matrices; the alternate model of so(2m) containing a diagonal Cartan
    subalgebra."""
    if m < 1:
        raise ValueError("so_JD needs a half-size of at least 1")
    out = skew_adjoint_algebra(jd_form(m), name=f"so_JD({m})")
    return out


def so_prime(p: int, q: int) -> MatrixLieAlgebra:
    """Skew-adjoint algebra of the signature form diag(1 x p, -1 x q)."""
    if p < 0 or q < 0 or p + q < 1:
        raise ValueError("so_prime needs nonnegative p, q with p + q >= 1")
    n = p + q
    rows = [[_ZERO] * n for _ in range(n)]
    for i in range(p):
        rows[i][i] = _ONE
    for i in range(p, n):
        rows[i][i] = -_ONE
    return skew_adjoint_algebra(Matrix.from_rows(rows, cols=n), name=f"so_prime({p},{q})")


def upper_triangular(n: int) -> MatrixLieAlgebra:
    """Upper-triangular matrices; basis unit matrices with i <= j, row-major."""
    if n < 1:
        raise ValueError("size must be at least 1")
    basis = []
    names = []
    for i in range(n):
        for j in range(i, n):
            basis.append(_unit_matrix(n, i, j))
            names.append(f"E{i + 1},{j + 1}")
    return MatrixLieAlgebra(n, f"t({n})", tuple(names), tuple(basis))


def strictly_upper_triangular(n: int) -> MatrixLieAlgebra:
    """Strictly upper-triangular matrices; basis unit matrices i < j, row-major."""
    if n < 1:
        raise ValueError("size must be at least 1")
    basis = []
    names = []
    for i in range(n):
        for j in range(i + 1, n):
            basis.append(_unit_matrix(n, i, j))
            names.append(f"E{i + 1},{j + 1}")
    return MatrixLieAlgebra(n, f"n({n})", tuple(names), tuple(basis))


_FAMILIES = ("gl", "sl", "so", "so_prime", "so_JD", "sp")


def classical(family: str, n: int, q: int | None = None) -> MatrixLieAlgebra:
    """Dispatch on the family label.

    Size parameter conventions: gl/sl/so take the matrix size; sp takes the
    full (even) matrix size; so_JD takes the half-size m of its 2m by 2m
    matrices; so_prime takes p with optional q (default 0).
    """
    if family == "gl":
        return gl(n)
    if family == "sl":
        return sl(n)
    if family == "so":
        return so(n)
    if family == "sp":
        return sp(n)
    if family == "so_JD":
        return so_JD(n)
    if family == "so_prime":
        return so_prime(n, q if q is not None else 0)
    raise ValueError(f"unknown family {family!r}; expected one of {_FAMILIES}")


# ---------------------------------------------------------------------------
# transport between models


@dataclass(frozen=True)
class CongruenceTransport:
    """Equivalence between the skew-adjoint algebras of j and of
    j2 = transpose(p) @ j @ p, realised by a -> inverse(p) @ a @ p."""

    p: Matrix
    p_inv: Matrix
    j: Matrix
    j2: Matrix
    source: MatrixLieAlgebra
    target: MatrixLieAlgebra

    def apply(self, a: Matrix) -> Matrix:
        return self.p_inv @ a @ self.p


def congruence_transport(p: Matrix, j: Matrix) -> CongruenceTransport:
    """Transport the skew-adjoint algebra of j along the basis change p.

    Verifies, on the full source basis, that each transported element is
    skew-adjoint for j2 and that brackets are preserved, and that the
    transported basis spans the whole target algebra.
    """
    if not (p.is_square() and j.is_square() and p.rows == j.rows):
        raise ShapeError("p and j must be square of equal size")
    try:
        p_inv = invert(p)
    except SingularMatrixError:
        raise SingularMatrixError("transport needs an invertible basis change") from None
    j2 = p.transpose() @ j @ p
    source = skew_adjoint_algebra(j)
    target = skew_adjoint_algebra(j2)
    images = [p_inv @ a @ p for a in source.basis]
    for name, img in zip(source.element_names, images):
        if not is_skew_adjoint(j2, img):
            raise ValueError(f"transport of {name} is not skew-adjoint for the new form")
        if target.coords_of(img) is None:
            raise ValueError(f"transport of {name} misses the target algebra")
    if source.dim != target.dim:
        raise ValueError("source and target dimensions differ; transport is not onto")
    for i in range(source.dim):
        for jdx in range(i + 1, source.dim):
            lhs = p_inv @ matrix_bracket(source.basis[i], source.basis[jdx]) @ p
            rhs = matrix_bracket(images[i], images[jdx])
            if lhs != rhs:
                raise ValueError("transport failed to preserve a basis bracket")
    return CongruenceTransport(p, p_inv, j, j2, source, target)
