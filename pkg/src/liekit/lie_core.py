"""Lie algebras over the rationals, given by structure constants.

An algebra of dimension n stores, for each basis pair (i, j) with i < j, the
expansion of the bracket of basis vectors i and j. Brackets with i >= j are
never stored: the diagonal is structurally zero and the lower triangle is
recovered by antisymmetry, so the alternating axiom cannot be violated by
the representation itself. What remains to verify is the Leibniz identity
    [x, [y, z]] = [[x, y], z] + [y, [x, z]]
on basis triples, equivalent to the cyclic Jacobi sum and to the flipped
normal form; check_axioms evaluates all three independently and reports
whether the verdicts agree triple by triple.

Subspaces of an algebra are tagged by the strongest closure property they
satisfy (plain subspace, subalgebra, ideal), and the structural operations
(bracket of ideals, series, radical, quotients) consume and produce these
tagged values.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Literal, Mapping, Sequence

from liekit.errors import ConstructionDefectError, NotClosedError, ParseError
from liekit.exactlin import (
    Matrix,
    ShapeError,
    Subspace,
    Vector,
    as_scalar,
    format_scalar,
    kernel,
    parse_scalar,
    unit_vector,
)

_ZERO = Fraction(0)

BracketTable = Mapping[tuple[int, int], tuple[tuple[int, Fraction], ...]]


@dataclass(frozen=True)
class LieAlgebra:
    """Finite-dimensional algebra with an antisymmetric bilinear bracket.

    ``constants[(i, j)]`` for i < j lists the nonzero coefficients of
    [b_i, b_j] as (index, coefficient) pairs with strictly increasing index.
    The ``verified`` flag records that check_axioms has passed; constructors
    that certify their output set it, plain construction leaves it False.
    """

    dim: int
    basis_names: tuple[str, ...]
    constants: BracketTable
    verified: bool = False
    _ad_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError("negative dimension")
        if len(self.basis_names) != self.dim:
            raise ValueError("basis name count does not match dimension")
        for (i, j), terms in self.constants.items():
            if not (0 <= i < j < self.dim):
                raise ValueError(f"bracket key ({i}, {j}) violates 0 <= i < j < dim")
            last = -1
            for k, c in terms:
                if not (0 <= k < self.dim):
                    raise ValueError(f"bracket target {k} out of range in ({i}, {j})")
                if k <= last:
                    raise ValueError(f"bracket targets not strictly increasing in ({i}, {j})")
                if not isinstance(c, Fraction) or c == 0:
                    raise ValueError(f"zero or inexact coefficient in ({i}, {j})")
                last = k

    # -- bracket machinery ------------------------------------------------

    def pair_bracket(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        """Sparse expansion of [b_i, b_j] for arbitrary i, j."""
        if i == j:
            return ()
        if i < j:
            return self.constants.get((i, j), ())
        terms = self.constants.get((j, i), ())
        return tuple((k, -c) for k, c in terms)

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise ShapeError("vector length does not match algebra dimension")
        acc = [_ZERO] * self.dim
        nx = [(i, as_scalar(c)) for i, c in enumerate(x) if c]
        ny = [(j, as_scalar(c)) for j, c in enumerate(y) if c]
        for i, xi in nx:
            for j, yj in ny:
                if i == j:
                    continue
                coeff = xi * yj
                if i < j:
                    terms = self.constants.get((i, j))
                else:
                    terms = self.constants.get((j, i))
                    coeff = -coeff
                if terms:
                    for k, c in terms:
                        acc[k] += coeff * c
        return tuple(acc)

    def ad_basis(self, i: int) -> Matrix:
        """Matrix of ad(b_i) acting on the algebra, cached."""
        cached = self._ad_cache.get(i)
        if cached is None:
            cols = [self.pair_bracket(i, j) for j in range(self.dim)]
            rows = []
            for k in range(self.dim):
                row = [_ZERO] * self.dim
                rows.append(row)
            for j, terms in enumerate(cols):
                for k, c in terms:
                    rows[k][j] = c
            cached = Matrix.from_rows(rows, cols=self.dim)
            self._ad_cache[i] = cached
        return cached

    def ad(self, x: Sequence[Fraction]) -> Matrix:
        if len(x) != self.dim:
            raise ShapeError("vector length does not match algebra dimension")
        acc = Matrix.zeros(self.dim, self.dim)
        for i, c in enumerate(x):
            if c:
                acc = acc + self.ad_basis(i).scale(c)
        return acc

    def unit(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def is_abelian(self) -> bool:
        return not any(self.constants.values()) or not self.constants

    # -- tagged subspaces -------------------------------------------------

    def top(self) -> "LieSubspace":
        return LieSubspace(self, Subspace.full(self.dim), "ideal")

    def bottom(self) -> "LieSubspace":
        return LieSubspace(self, Subspace.zero(self.dim), "ideal")

    # -- serialisation ----------------------------------------------------

    def to_json(self) -> dict:
        bracket = {}
        for (i, j), terms in self.constants.items():
            if terms:
                bracket[f"{i},{j}"] = [[k, format_scalar(c)] for k, c in terms]
        return {"dim": self.dim, "basis": list(self.basis_names), "bracket": bracket}

    @staticmethod
    def from_json(obj: object) -> "LieAlgebra":
        if not isinstance(obj, dict):
            raise ParseError("algebra JSON must be an object")
        try:
            dim = obj["dim"]
            basis = obj["basis"]
            bracket = obj["bracket"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"algebra JSON missing field: {exc}") from exc
        if not isinstance(dim, int) or dim < 0:
            raise ParseError("dim must be a non-negative integer")
        if not isinstance(basis, list) or len(basis) != dim or not all(isinstance(s, str) for s in basis):
            raise ParseError("basis must be a list of dim strings")
        if not isinstance(bracket, dict):
            raise ParseError("bracket must be an object")
        constants: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
        for key, terms in bracket.items():
            parts = key.split(",")
            if len(parts) != 2:
                raise ParseError(f"bad bracket key {key!r}")
            try:
                i, j = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ParseError(f"bad bracket key {key!r}") from exc
            if not (0 <= i < j < dim):
                raise ParseError(f"bracket key {key!r} violates 0 <= i < j < dim")
            if not isinstance(terms, list):
                raise ParseError(f"bracket entry {key!r} must be a list")
            parsed = []
            last = -1
            for item in terms:
                if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], int)):
                    raise ParseError(f"bad term {item!r} under key {key!r}")
                k, lit = item
                if not (0 <= k < dim):
                    raise ParseError(f"target index {k} out of range under key {key!r}")
                if k <= last:
                    raise ParseError(f"targets not strictly increasing under key {key!r}")
                try:
                    c = parse_scalar(lit)
                except ValueError as exc:
                    raise ParseError(str(exc)) from exc
                if c == 0:
                    raise ParseError(f"explicit zero coefficient under key {key!r}")
                parsed.append((k, c))
                last = k
            if parsed:
                constants[(i, j)] = tuple(parsed)
        return LieAlgebra(dim, tuple(basis), constants)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"


def constants_from_sparse(
    dim: int, entries: Mapping[tuple[int, int], Iterable[tuple[int, int | Fraction]]]
) -> dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]:
    """Normalise a loosely-typed table into canonical storage form."""
    table: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
    for (i, j), terms in entries.items():
        cleaned = sorted((k, as_scalar(c)) for k, c in terms if c)
        if cleaned:
            table[(i, j)] = tuple(cleaned)
    return table


# ---------------------------------------------------------------------------
# axiom checking


@dataclass(frozen=True)
class CheckOptions:
    """Policy for check_axioms. Full checking is the default up to the
    threshold; above it a seeded sample of triples is inspected unless
    force_full is set.

    Only strictly increasing basis triples are enumerated: with the skew
    storage of this module the three identity defects are alternating in
    their arguments, so a triple with a repeated index holds identically
    and any violation on a permutation shows up on the sorted triple."""

    force_full: bool = False
    full_threshold: int = 64
    sample_size: int = 200
    seed: int = 0


@dataclass(frozen=True)
class TripleFailure:
    triple: tuple[int, int, int]
    leibniz_holds: bool
    jacobi_holds: bool
    normal_form_holds: bool


@dataclass(frozen=True)
class AxiomReport:
    dim: int
    mode: str
    triples_checked: int
    failures: tuple[TripleFailure, ...]
    verdicts_agree: bool

    @property
    def passed(self) -> bool:
        return not self.failures


SparseVec = dict[int, Fraction]


def _sparse_unit(i: int) -> SparseVec:
    return {i: Fraction(1)}


def _sparse_bracket(L: LieAlgebra, x: SparseVec, y: SparseVec) -> SparseVec:
    acc: SparseVec = {}
    for i, xi in x.items():
        for j, yj in y.items():
            terms = L.pair_bracket(i, j)
            if terms:
                c = xi * yj
                for k, ck in terms:
                    v = acc.get(k, _ZERO) + c * ck
                    if v:
                        acc[k] = v
                    elif k in acc:
                        del acc[k]
    return acc


def _sparse_is_zero(x: SparseVec) -> bool:
    return not x


def _sparse_sum(*vecs: SparseVec) -> SparseVec:
    acc: SparseVec = {}
    for v in vecs:
        for k, c in v.items():
            s = acc.get(k, _ZERO) + c
            if s:
                acc[k] = s
            elif k in acc:
                del acc[k]
    return acc


def _sparse_neg(x: SparseVec) -> SparseVec:
    return {k: -c for k, c in x.items()}


def _triple_verdicts(L: LieAlgebra, i: int, j: int, k: int) -> tuple[bool, bool, bool]:
    x, y, z = _sparse_unit(i), _sparse_unit(j), _sparse_unit(k)
    yz = _sparse_bracket(L, y, z)
    xy = _sparse_bracket(L, x, y)
    xz = _sparse_bracket(L, x, z)
    x_yz = _sparse_bracket(L, x, yz)
    xy_z = _sparse_bracket(L, xy, z)
    y_xz = _sparse_bracket(L, y, xz)
    # Leibniz derivation form.
    leibniz = _sparse_is_zero(_sparse_sum(x_yz, _sparse_neg(xy_z), _sparse_neg(y_xz)))
    # Cyclic Jacobi sum, evaluated from scratch.
    zx = _sparse_bracket(L, z, x)
    y_zx = _sparse_bracket(L, y, zx)
    z_xy = _sparse_bracket(L, z, xy)
    jacobi = _sparse_is_zero(_sparse_sum(x_yz, y_zx, z_xy))
    # Subtraction normal form for the bracket of brackets.
    normal = _sparse_is_zero(
        _sparse_sum(xy_z, _sparse_neg(x_yz), y_xz)
    )
    return leibniz, jacobi, normal


def check_axioms(L: LieAlgebra, options: CheckOptions | None = None) -> AxiomReport:
    """Verify the bracket axioms on strictly increasing basis triples.

    Antisymmetry and the vanishing of [x, x] hold structurally, so the work
    is the Leibniz identity; the cyclic Jacobi form and the subtraction
    normal form are evaluated independently on the same triples and the
    report records whether all three verdicts coincide. Triples with a
    repeated index are skipped because all three defects are alternating,
    making those cases identities of the skew storage rather than checks.
    """
    opts = options or CheckOptions()
    n = L.dim
    full = opts.force_full or n <= opts.full_threshold or n < 3
    if full:
        triples: Iterable[tuple[int, int, int]] = (
            (i, j, k)
            for i in range(n)
            for j in range(i + 1, n)
            for k in range(j + 1, n)
        )
        count = n * (n - 1) * (n - 2) // 6
        mode = "full"
    else:
        rng = random.Random(opts.seed)
        drawn = [tuple(sorted(rng.sample(range(n), 3))) for _ in range(opts.sample_size)]
        triples = drawn
        count = opts.sample_size
        mode = "sampled"
    failures = []
    agree = True
    for i, j, k in triples:
        lz, jc, nf = _triple_verdicts(L, i, j, k)
        if not (lz == jc == nf):
            agree = False
        if not (lz and jc and nf):
            failures.append(TripleFailure((i, j, k), lz, jc, nf))
    return AxiomReport(n, mode, count, tuple(failures), agree)


def verified(L: LieAlgebra, options: CheckOptions | None = None) -> LieAlgebra:
    """Return a copy carrying verified=True, or raise if the axioms fail."""
    if L.verified:
        return L
    report = check_axioms(L, options)
    if not report.passed:
        bad = report.failures[0].triple
        raise ConstructionDefectError(
            f"axiom check failed on {report.triples_checked} triples, first offender {bad}"
        )
    return replace(L, verified=True)


# ---------------------------------------------------------------------------
# tagged subspaces


SubspaceKind = Literal["subspace", "subalgebra", "ideal"]


@dataclass(frozen=True)
class LieSubspace:
    """A subspace of a fixed parent algebra tagged with its closure strength."""

    parent: LieAlgebra
    space: Subspace
    kind: SubspaceKind

    def __post_init__(self) -> None:
        if self.space.ambient_dim != self.parent.dim:
            raise ShapeError("subspace ambient dimension does not match parent algebra")

    @property
    def dim(self) -> int:
        return self.space.dim

    def is_zero(self) -> bool:
        return self.space.is_zero()

    def is_top(self) -> bool:
        return self.space.is_full()


def _find_ideal_violation(L: LieAlgebra, s: Subspace) -> tuple[int, Vector] | None:
    for i in range(L.dim):
        for v in s.basis:
            w = L.bracket(L.unit(i), v)
            if not s.contains_vector(w):
                return i, v
    return None


def classify_subspace(L: LieAlgebra, s: Subspace) -> LieSubspace:
    """Tag s with the strongest closure property it satisfies."""
    if s.ambient_dim != L.dim:
        raise ShapeError("subspace ambient dimension does not match algebra")
    if _find_ideal_violation(L, s) is None:
        return LieSubspace(L, s, "ideal")
    closed = True
    for a in range(len(s.basis)):
        for b in range(a + 1, len(s.basis)):
            if not s.contains_vector(L.bracket(s.basis[a], s.basis[b])):
                closed = False
                break
        if not closed:
            break
    return LieSubspace(L, s, "subalgebra" if closed else "subspace")


def _require_same_parent(a: LieSubspace, b: LieSubspace) -> LieAlgebra:
    if a.parent is not b.parent and a.parent != b.parent:
        raise ValueError("subspaces live in different parent algebras")
    return a.parent


def ideal_bracket(I: LieSubspace, N: LieSubspace) -> LieSubspace:
    """Bracket of an ideal with an ideal: the linear span of the pairwise
    brackets of their basis vectors, returned as an ideal."""
    L = _require_same_parent(I, N)
    for tagged, label in ((I, "left"), (N, "right")):
        if tagged.kind != "ideal":
            witness = _find_ideal_violation(L, tagged.space)
            if witness is None:
                # The tag was merely stale; the space is in fact an ideal.
                continue
            i, v = witness
            raise ValueError(
                f"{label} operand of ideal_bracket is not an ideal: "
                f"[b_{i}, {tuple(map(str, v))}] leaves the subspace"
            )
    vectors = [
        L.bracket(x, y)
        for x in I.space.basis
        for y in N.space.basis
    ]
    span = Subspace.from_vectors(L.dim, vectors)
    result = LieSubspace(L, span, "ideal")
    if _find_ideal_violation(L, span) is not None:
        raise ConstructionDefectError("bracket of ideals failed to be an ideal")
    return result


def ideal_closure(L: LieAlgebra, vectors: Iterable[Sequence[Fraction]]) -> Subspace:
    """Smallest ideal containing the given vectors, by iterated ad-saturation."""
    span = Subspace.from_vectors(L.dim, list(vectors))
    while True:
        extra = []
        for i in range(L.dim):
            for v in span.basis:
                w = L.bracket(L.unit(i), v)
                if not span.contains_vector(w):
                    extra.append(w)
        if not extra:
            return span
        span = span + Subspace.from_vectors(L.dim, extra)


# ---------------------------------------------------------------------------
# series


@dataclass(frozen=True)
class SeriesReport:
    """Terms of a descending series until it stabilises.

    ``terms[k]`` is the k-th term; the list stops at the first repetition,
    so ``stabilised_at`` is ``len(terms) - 1`` whenever the series settled
    within the step budget and None otherwise.
    """

    terms: tuple[Subspace, ...]
    stabilised_at: int | None
    reaches_bottom: bool

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(t.dim for t in self.terms)


@dataclass(frozen=True)
class SeriesVerdict:
    holds: bool
    witness: int | None

    def __bool__(self) -> bool:
        return self.holds


def _run_series(L: LieAlgebra, start: LieSubspace, step, max_k: int) -> SeriesReport:
    terms = [start.space]
    current = start
    stabilised: int | None = None
    for _ in range(max_k):
        nxt = step(current)
        if nxt.space == current.space:
            stabilised = len(terms) - 1
            break
        terms.append(nxt.space)
        current = nxt
        if current.is_zero():
            stabilised = len(terms) - 1
            break
    else:
        stabilised = None
    if stabilised is None and terms[-1].is_zero():
        stabilised = len(terms) - 1
    return SeriesReport(tuple(terms), stabilised, terms[-1].is_zero())


def derived_series(L: LieAlgebra, I: LieSubspace | None = None, max_k: int | None = None) -> SeriesReport:
    """Derived series of an ideal: each term is the bracket of the previous
    term with itself."""
    start = I if I is not None else L.top()
    if start.kind != "ideal":
        raise ValueError("derived series requires an ideal")
    budget = max_k if max_k is not None else L.dim + 1
    return _run_series(L, start, lambda cur: ideal_bracket(cur, cur), budget)


def lower_central_series(L: LieAlgebra, max_k: int | None = None) -> SeriesReport:
    """Lower central series: each term is the bracket of the whole algebra
    with the previous term."""
    top = L.top()
    budget = max_k if max_k is not None else L.dim + 1
    return _run_series(L, top, lambda cur: ideal_bracket(top, cur), budget)


def is_solvable(L: LieAlgebra) -> SeriesVerdict:
    report = derived_series(L)
    return SeriesVerdict(report.reaches_bottom, report.stabilised_at if report.reaches_bottom else None)


def is_nilpotent(L: LieAlgebra) -> SeriesVerdict:
    report = lower_central_series(L)
    return SeriesVerdict(report.reaches_bottom, report.stabilised_at if report.reaches_bottom else None)


# ---------------------------------------------------------------------------
# centre, Killing form, radical


def center(L: LieAlgebra) -> LieSubspace:
    """Kernel of the joint adjoint action, tagged as an ideal."""
    if L.dim == 0:
        return L.bottom()
    stacked = L.ad_basis(0)
    for i in range(1, L.dim):
        stacked = stacked.stack(L.ad_basis(i))
    return LieSubspace(L, kernel(stacked), "ideal")


def _sparse_ad(L: LieAlgebra, i: int) -> dict[tuple[int, int], Fraction]:
    entries: dict[tuple[int, int], Fraction] = {}
    for j in range(L.dim):
        for k, c in L.pair_bracket(i, j):
            entries[(k, j)] = c
    return entries


def killing_form(L: LieAlgebra) -> Matrix:
    """Symmetric matrix of trace(ad b_i . ad b_j) over the basis."""
    n = L.dim
    ads = [_sparse_ad(L, i) for i in range(n)]
    rows = [[_ZERO] * n for _ in range(n)]
    for i in range(n):
        adi = ads[i]
        for j in range(i, n):
            adj = ads[j]
            if len(adj) < len(adi):
                small, other = adj, adi
            else:
                small, other = adi, adj
            acc = _ZERO
            for (a, b), c in small.items():
                d = other.get((b, a))
                if d is not None:
                    acc += c * d
            rows[i][j] = acc
            rows[j][i] = acc
    return Matrix.from_rows(rows, cols=n)


def radical(L: LieAlgebra) -> LieSubspace:
    """Largest solvable ideal, computed as the Killing-orthogonal complement
    of the derived ideal. The result is rechecked to be a solvable ideal; a
    failure there means the input was not a Lie algebra (or a bug) and is
    raised as a defect rather than returned."""
    K = killing_form(L)
    derived = ideal_bracket(L.top(), L.top())
    rows = [K.mul_vec(d) for d in derived.space.basis]
    if rows:
        space = kernel(Matrix.from_rows(rows, cols=L.dim))
    else:
        space = Subspace.full(L.dim)
    tagged = classify_subspace(L, space)
    if tagged.kind != "ideal":
        raise ConstructionDefectError("radical candidate is not an ideal")
    if not is_solvable(restrict(L, tagged)).holds:
        raise ConstructionDefectError("radical candidate is not solvable")
    return LieSubspace(L, space, "ideal")


def is_semisimple(L: LieAlgebra) -> bool:
    return radical(L).is_zero()


def is_simple(L: LieAlgebra) -> bool:
    """Non-abelian, and every basis vector generates the whole algebra as an
    ideal."""
    if L.is_abelian():
        return False
    full = Subspace.full(L.dim)
    for i in range(L.dim):
        if ideal_closure(L, [L.unit(i)]) != full:
            return False
    return True


# ---------------------------------------------------------------------------
# constructions


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    """Direct sum with componentwise bracket; basis names keep their side as
    a prefix."""
    names = tuple(f"a.{n}" for n in a.basis_names) + tuple(f"b.{n}" for n in b.basis_names)
    table: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
    for (i, j), terms in a.constants.items():
        table[(i, j)] = terms
    off = a.dim
    for (i, j), terms in b.constants.items():
        table[(i + off, j + off)] = tuple((k + off, c) for k, c in terms)
    return LieAlgebra(a.dim + b.dim, names, table, verified=a.verified and b.verified)


def quotient(L: LieAlgebra, I: LieSubspace) -> tuple[LieAlgebra, Matrix]:
    """Quotient by an ideal. Returns the quotient algebra and the projection
    matrix sending parent coordinates to quotient coordinates.

    The quotient basis is the image of the standard basis vectors at the
    non-pivot columns of the ideal's echelon basis, so quotient by the zero
    ideal reproduces the algebra on the nose.
    """
    if I.parent != L:
        raise ValueError("ideal belongs to a different algebra")
    if I.kind != "ideal":
        raise ValueError("quotient requires an ideal")
    pivots = []
    for row in I.space.basis:
        pivots.append(next(i for i, x in enumerate(row) if x))
    pivot_set = set(pivots)
    free = [j for j in range(L.dim) if j not in pivot_set]
    qdim = len(free)

    def project(v: Sequence[Fraction]) -> Vector:
        residue = I.space.reduce(v)
        return tuple(residue[j] for j in free)

    proj_rows = [[_ZERO] * L.dim for _ in range(qdim)]
    for j in range(L.dim):
        col = project(L.unit(j))
        for r in range(qdim):
            proj_rows[r][j] = col[r]
    proj = Matrix.from_rows(proj_rows, cols=L.dim)

    table: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for a in range(qdim):
        for b in range(a + 1, qdim):
            w = project(L.bracket(L.unit(free[a]), L.unit(free[b])))
            terms = [(k, c) for k, c in enumerate(w) if c]
            if terms:
                table[(a, b)] = terms
    names = tuple(L.basis_names[j] for j in free)
    Q = LieAlgebra(qdim, names, constants_from_sparse(qdim, table))
    # The projection must be a bracket morphism on every basis pair.
    for i in range(L.dim):
        vi = proj.mul_vec(L.unit(i))
        for j in range(i + 1, L.dim):
            lhs = proj.mul_vec(L.bracket(L.unit(i), L.unit(j)))
            rhs = Q.bracket(vi, proj.mul_vec(L.unit(j)))
            if lhs != rhs:
                raise ConstructionDefectError(f"quotient projection not a morphism at pair ({i}, {j})")
    Q = verified(Q)
    return Q, proj


def restrict(L: LieAlgebra, S: LieSubspace) -> LieAlgebra:
    """Structure constants of a subalgebra or ideal on its echelon basis."""
    if S.parent != L:
        raise ValueError("subspace belongs to a different algebra")
    if S.kind == "subspace":
        raise NotClosedError("restrict requires a subalgebra or ideal")
    basis = S.space.basis
    names = []
    for idx, row in enumerate(basis):
        nz = [i for i, x in enumerate(row) if x]
        if len(nz) == 1 and row[nz[0]] == 1:
            names.append(L.basis_names[nz[0]])
        else:
            names.append(f"s{idx}")
    table: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            w = L.bracket(basis[a], basis[b])
            coords = S.space.coords_of(w)
            if coords is None:
                raise NotClosedError(
                    f"bracket of restricted basis vectors {a} and {b} leaves the subspace"
                )
            terms = [(k, c) for k, c in enumerate(coords) if c]
            if terms:
                table[(a, b)] = terms
    return LieAlgebra(
        len(basis), tuple(names), constants_from_sparse(len(basis), table), verified=L.verified
    )


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class Representation:
    """Action of an algebra on a module, one matrix per basis vector.

    Construction validates the module law: acting by a bracket equals the
    commutator of the actions, on every basis pair.
    """

    algebra: LieAlgebra
    module_dim: int
    action: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        if len(self.action) != self.algebra.dim:
            raise ShapeError("one action matrix per algebra basis vector is required")
        for m in self.action:
            if m.rows != self.module_dim or m.cols != self.module_dim:
                raise ShapeError("action matrix shape does not match module dimension")
        for i in range(self.algebra.dim):
            for j in range(i + 1, self.algebra.dim):
                lhs = self.action_of(self.algebra.bracket(self.algebra.unit(i), self.algebra.unit(j)))
                rhs = self.action[i] @ self.action[j] - self.action[j] @ self.action[i]
                if lhs != rhs:
                    raise ValueError(f"module law fails on basis pair ({i}, {j})")

    def action_of(self, x: Sequence[Fraction]) -> Matrix:
        if len(x) != self.algebra.dim:
            raise ShapeError("vector length does not match algebra dimension")
        acc = Matrix.zeros(self.module_dim, self.module_dim)
        for i, c in enumerate(x):
            if c:
                acc = acc + self.action[i].scale(c)
        return acc

    @staticmethod
    def adjoint(L: LieAlgebra) -> "Representation":
        return Representation(L, L.dim, tuple(L.ad_basis(i) for i in range(L.dim)))


# ---------------------------------------------------------------------------
# small stock algebras


def abelian(n: int, prefix: str = "x") -> LieAlgebra:
    return LieAlgebra(n, tuple(f"{prefix}{i}" for i in range(n)), {}, verified=True)


def sl2() -> LieAlgebra:
    """Standard basis (e, h, f) with [e, f] = h, [h, e] = 2e, [h, f] = -2f."""
    table = constants_from_sparse(
        3,
        {
            (0, 1): [(0, -2)],  # [e, h] = -2e
            (0, 2): [(1, 1)],  # [e, f] = h
            (1, 2): [(2, -2)],  # [h, f] = -2f
        },
    )
    return verified(LieAlgebra(3, ("e", "h", "f"), table))


def heisenberg() -> LieAlgebra:
    """Three-dimensional algebra with [x, y] = z and z central."""
    table = constants_from_sparse(3, {(0, 1): [(2, 1)]})
    return verified(LieAlgebra(3, ("x", "y", "z"), table))
