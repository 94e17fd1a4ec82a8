"""Cartan matrices, root systems, Chevalley bases, Dynkin diagrams, and
recognition of split semisimple Lie algebras.

Conventions, fixed throughout:

- Cartan entries are A[i][j] = 2(a_i, a_j)/(a_j, a_j) for simple roots a_i,
  with Bourbaki node numbering per family. Under this convention the G2
  matrix is [[2,-1],[-3,2]].
- The pairing of a root b = sum c_j a_j against the i-th simple coroot is
  <b, a_i~> = sum_j c_j A[j][i], so the executable relations read
  [h_i, e_j] = A[j][i] e_j and ad(e_i)^(1-A[j][i])(e_j) = 0.
- Positive roots are totally ordered by (height, coordinates); structure
  constant signs are fixed as +(p+1) on the minimal decomposition of each
  non-simple positive root and propagated from there, which makes the
  constructed constants, and hence the JSON output, deterministic.
- Dynkin edges carry multiplicity A[i][j]*A[j][i]; the arrow on a multiple
  edge points at the short root, which is the endpoint j with the larger
  |A[i][j]|.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from liekit.errors import (
    ConstructionDefectError,
    NonSplitError,
    NotCartanError,
    NotFiniteTypeError,
    NotSemisimpleError,
    ParseError,
)
from liekit.exactlin import Matrix, Subspace, Vector, det, kernel
from liekit.lie_core import (
    CheckOptions,
    LieAlgebra,
    LieSubspace,
    classify_subspace,
    constants_from_sparse,
    ideal_closure,
    is_semisimple,
    is_simple,
    restrict,
    verified,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)

Root = tuple[int, ...]


# ---------------------------------------------------------------------------
# Cartan matrices


@dataclass(frozen=True)
class CartanMatrix:
    """Square integer matrix with the generalised-Cartan shape rules
    checked separately by validate_cartan, so that invalid candidates can
    be represented and reported on."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        l = len(self.entries)
        if l == 0:
            raise ValueError("a Cartan matrix has at least one row")
        for row in self.entries:
            if len(row) != l:
                raise ValueError("Cartan matrix must be square")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise ValueError("Cartan entries are plain integers")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def to_json(self) -> dict:
        return {"rank": self.rank, "entries": [list(row) for row in self.entries]}

    @staticmethod
    def from_json(obj: object) -> "CartanMatrix":
        if not isinstance(obj, dict):
            raise ParseError("Cartan JSON must be an object")
        if set(obj) != {"rank", "entries"}:
            raise ParseError("Cartan JSON needs exactly the keys 'rank' and 'entries'")
        rank = obj["rank"]
        entries = obj["entries"]
        if not isinstance(rank, int) or rank < 1:
            raise ParseError("'rank' must be a positive integer")
        if not isinstance(entries, list) or len(entries) != rank:
            raise ParseError("'entries' must be a list of rank rows")
        rows = []
        for row in entries:
            if not isinstance(row, list) or len(row) != rank:
                raise ParseError("each Cartan row must be a list of rank integers")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise ParseError("Cartan entries must be integers")
            rows.append(tuple(row))
        return CartanMatrix(tuple(rows))


_FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


def _chain_entries(l: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(l)] for i in range(l)]
    for i in range(l - 1):
        a[i][i + 1] = -1
        a[i + 1][i] = -1
    return a


def named_cartan(name: str, rank: int | None = None) -> CartanMatrix:
    """Standard Cartan matrix of a catalogue family, Bourbaki numbering.

    The family may carry its rank in the name ("E8", "G2"); an explicit
    rank argument must then agree. D at ranks 2 and 3 is accepted and
    coincides with A1+A1 and A3; the canonical D labels start at rank 4.
    """
    text = name.strip().upper()
    family = text[:1]
    if family not in _FAMILIES:
        raise ValueError(f"unknown family {name!r}")
    if len(text) > 1:
        try:
            embedded = int(text[1:])
        except ValueError:
            raise ValueError(f"malformed family name {name!r}") from None
        if rank is not None and rank != embedded:
            raise ValueError(f"rank {rank} contradicts name {name!r}")
        rank = embedded
    if rank is None:
        if family == "F":
            rank = 4
        elif family == "G":
            rank = 2
        else:
            raise ValueError(f"family {family} needs a rank")

    l = rank
    if family == "A":
        if l < 1:
            raise ValueError("type A needs rank at least 1")
        a = _chain_entries(l)
    elif family in ("B", "C"):
        if l < 2:
            raise ValueError(f"type {family} needs rank at least 2")
        a = _chain_entries(l)
        a[l - 2][l - 1] = -2
        a[l - 1][l - 2] = -1
        if family == "C":
            a = [list(col) for col in zip(*a)]
    elif family == "D":
        if l < 2:
            raise ValueError("type D needs rank at least 2")
        a = [[2 if i == j else 0 for j in range(l)] for i in range(l)]
        for i in range(l - 3):
            a[i][i + 1] = -1
            a[i + 1][i] = -1
        if l >= 3:
            for j in (l - 2, l - 1):
                a[l - 3][j] = -1
                a[j][l - 3] = -1
    elif family == "E":
        if l not in (6, 7, 8):
            raise ValueError("type E exists at ranks 6, 7 and 8")
        a = [[2 if i == j else 0 for j in range(l)] for i in range(l)]
        chain = [0, 2, 3, 4, 5, 6, 7][: l - 1]
        for u, v in zip(chain, chain[1:]):
            a[u][v] = -1
            a[v][u] = -1
        a[1][3] = -1
        a[3][1] = -1
    elif family == "F":
        if l != 4:
            raise ValueError("type F exists at rank 4")
        a = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    else:
        if l != 2:
            raise ValueError("type G exists at rank 2")
        a = [[2, -1], [-3, 2]]
    return CartanMatrix(tuple(tuple(row) for row in a))


@dataclass(frozen=True)
class CartanValidation:
    """Shape, symmetrisability, and definiteness report for a candidate
    Cartan matrix. Finite type means the symmetrised matrix is positive
    definite, checked through leading principal minors."""

    matrix: CartanMatrix
    problems: tuple[str, ...]
    components: tuple[tuple[int, ...], ...]
    symmetriser: tuple[Fraction, ...] | None
    minors: tuple[Fraction, ...] | None

    @property
    def is_generalized(self) -> bool:
        return not self.problems

    @property
    def is_symmetrisable(self) -> bool:
        return self.symmetriser is not None

    @property
    def is_finite_type(self) -> bool:
        return (
            self.is_generalized
            and self.minors is not None
            and all(m > 0 for m in self.minors)
        )


def _components(a: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    l = len(a)
    seen: set[int] = set()
    comps = []
    for start in range(l):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        comp = []
        while queue:
            i = queue.pop()
            comp.append(i)
            for j in range(l):
                if j not in seen and (a[i][j] != 0 or a[j][i] != 0) and i != j:
                    seen.add(j)
                    queue.append(j)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def _minimal_integers(values: list[Fraction], comp: Iterable[int]) -> None:
    """Rescale the entries of one component to the smallest positive
    integers with the same ratios, in place."""
    idx = list(comp)
    from math import gcd, lcm

    denom = 1
    for i in idx:
        denom = lcm(denom, values[i].denominator)
    nums = [int(values[i] * denom) for i in idx]
    g = 0
    for x in nums:
        g = gcd(g, x)
    for i, x in zip(idx, nums):
        values[i] = Fraction(x, g)


def validate_cartan(cm: CartanMatrix) -> CartanValidation:
    a = cm.entries
    l = cm.rank
    problems = []
    for i in range(l):
        if a[i][i] != 2:
            problems.append(f"diagonal entry ({i},{i}) is {a[i][i]}, not 2")
    for i in range(l):
        for j in range(l):
            if i == j:
                continue
            if a[i][j] > 0:
                problems.append(f"off-diagonal entry ({i},{j}) is positive")
            if (a[i][j] == 0) != (a[j][i] == 0):
                problems.append(f"entries ({i},{j}) and ({j},{i}) disagree about vanishing")
    comps = _components(a)
    if problems:
        return CartanValidation(cm, tuple(problems), comps, None, None)

    d: list[Fraction | None] = [None] * l
    consistent = True
    for comp in comps:
        root = comp[0]
        d[root] = _ONE
        queue = [root]
        while queue:
            i = queue.pop()
            for j in comp:
                if d[j] is None and a[i][j] != 0:
                    d[j] = d[i] * Fraction(a[j][i], a[i][j])
                    queue.append(j)
    for i in range(l):
        for j in range(l):
            if a[i][j] * d[j] != a[j][i] * d[i]:
                consistent = False
    if not consistent:
        return CartanValidation(cm, (), comps, None, None)
    dmin = [v for v in d]
    for comp in comps:
        _minimal_integers(dmin, comp)
    gram = [[Fraction(a[i][j]) * dmin[j] for j in range(l)] for i in range(l)]
    minors = []
    for k in range(1, l + 1):
        sub = Matrix.from_rows([row[:k] for row in gram[:k]])
        minors.append(det(sub))
    return CartanValidation(cm, (), comps, tuple(dmin), tuple(minors))


# ---------------------------------------------------------------------------
# root systems


def pairing(cm: CartanMatrix, beta: Sequence[int], i: int) -> int:
    """Integer pairing of a root (coordinates in the simple-root basis)
    against the i-th simple coroot."""
    a = cm.entries
    return sum(c * a[j][i] for j, c in enumerate(beta) if c)


@dataclass(frozen=True)
class RootSystem:
    """All roots of a finite-type Cartan matrix, as integer coordinate
    vectors over the simple roots. Simple roots are the unit vectors."""

    rank: int
    positives: tuple[Root, ...]

    @cached_property
    def _positive_set(self) -> frozenset[Root]:
        return frozenset(self.positives)

    @property
    def roots(self) -> tuple[Root, ...]:
        return self.positives + tuple(_neg(r) for r in self.positives)

    @property
    def count(self) -> int:
        return 2 * len(self.positives)

    def is_positive(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._positive_set

    def is_root(self, v: Sequence[int]) -> bool:
        t = tuple(v)
        return t in self._positive_set or _neg(t) in self._positive_set


def _neg(v: Root) -> Root:
    return tuple(-x for x in v)


def _add(u: Root, v: Root) -> Root:
    return tuple(a + b for a, b in zip(u, v))


def _sub(u: Root, v: Root) -> Root:
    return tuple(a - b for a, b in zip(u, v))


def _height(v: Root) -> int:
    return sum(v)


def _root_key(v: Root) -> tuple[int, Root]:
    return (_height(v), v)


def roots_from_cartan(cm: CartanMatrix) -> RootSystem:
    """Generate all roots by height induction.

    A positive root grows by a simple root exactly when the root string
    below it is long enough: beta + a_i is a root iff p - <beta, a_i~> > 0
    where p counts how far beta - k*a_i stays a root. Root strings are
    verified to be unbroken afterwards, and the result is closed under
    negation by construction.
    """
    validation = validate_cartan(cm)
    if not validation.is_finite_type:
        reasons = "; ".join(validation.problems) or "symmetrised form is not positive definite"
        raise NotFiniteTypeError(f"not a finite-type Cartan matrix: {reasons}")
    l = cm.rank
    simples = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
    positives: set[Root] = set(simples)
    layer = list(simples)
    height = 1
    while layer:
        if height > 512:
            raise ConstructionDefectError("root generation exceeded the height budget")
        nxt = []
        for beta in layer:
            for i in range(l):
                candidate = _add(beta, simples[i])
                if candidate in positives:
                    continue
                p = 0
                walk = _sub(beta, simples[i])
                while all(x >= 0 for x in walk) and walk in positives:
                    p += 1
                    walk = _sub(walk, simples[i])
                if p - pairing(cm, beta, i) > 0:
                    positives.add(candidate)
                    nxt.append(candidate)
        layer = nxt
        height += 1

    ordered = tuple(sorted(positives, key=_root_key))
    system = RootSystem(l, ordered)
    _verify_strings(cm, system)
    return system


def _verify_strings(cm: CartanMatrix, system: RootSystem) -> None:
    """Independent post-check: along every simple direction the root string
    through each root is an unbroken interval whose ends balance the
    pairing, p - q = <beta, a_i~>."""
    l = cm.rank
    simples = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
    for beta in system.roots:
        for i in range(l):
            if beta == simples[i] or beta == _neg(simples[i]):
                continue
            p = 0
            walk = _sub(beta, simples[i])
            while system.is_root(walk):
                p += 1
                walk = _sub(walk, simples[i])
            q = 0
            walk = _add(beta, simples[i])
            while system.is_root(walk):
                q += 1
                walk = _add(walk, simples[i])
            if p - q != pairing(cm, beta, i):
                raise ConstructionDefectError(
                    f"root string through {beta} along simple root {i} is broken"
                )


# ---------------------------------------------------------------------------
# Chevalley construction


@dataclass(frozen=True)
class ChevalleyAlgebra:
    """Verified split semisimple algebra on the basis h_1..h_l followed by
    one vector per root, positives first, each ordered by (height, lex)."""

    algebra: LieAlgebra
    cartan: CartanMatrix
    system: RootSystem
    cartan_indices: tuple[int, ...]
    root_list: tuple[Root, ...]
    root_index: dict[Root, int] = field(repr=False)

    def index_of(self, root: Sequence[int]) -> int:
        return self.root_index[tuple(root)]

    def to_json(self) -> dict:
        obj = self.algebra.to_json()
        obj["cartan_indices"] = list(self.cartan_indices)
        obj["roots"] = [list(r) for r in self.root_list]
        return obj


class _SignTable:
    """Structure constants N over the root vectors, signs fixed on the
    minimal decomposition of each non-simple positive root and propagated
    through the standard three-root proportionality and negation rules."""

    def __init__(self, cm: CartanMatrix, system: RootSystem, d: Sequence[Fraction]):
        self.system = system
        a = cm.entries
        l = cm.rank
        self.gram = [[d[k] * a[j][k] for k in range(l)] for j in range(l)]
        self._norm_cache: dict[Root, Fraction] = {}
        self.table: dict[tuple[Root, Root], Fraction] = {}
        self._build()

    def norm(self, v: Root) -> Fraction:
        got = self._norm_cache.get(v)
        if got is None:
            got = sum(
                (v[j] * v[k]) * self.gram[j][k]
                for j in range(len(v))
                if v[j]
                for k in range(len(v))
                if v[k]
            )
            self._norm_cache[v] = got
        return got

    def _string_down(self, alpha: Root, beta: Root) -> int:
        p = 0
        walk = _sub(beta, alpha)
        while self.system.is_root(walk):
            p += 1
            walk = _sub(walk, alpha)
        return p

    def value(self, x: Root, y: Root) -> Fraction:
        """N for an arbitrary ordered pair of roots with x + y != 0;
        zero when x + y is not a root."""
        s = _add(x, y)
        if not self.system.is_root(s):
            return _ZERO
        xpos = self.system.is_positive(x)
        ypos = self.system.is_positive(y)
        if xpos and ypos:
            if _root_key(x) < _root_key(y):
                return self.table[(x, y)]
            return -self.table[(y, x)]
        if not xpos and not ypos:
            return -self.value(_neg(x), _neg(y))
        if not xpos:
            return -self.value(y, x)
        mu = _neg(y)
        if self.system.is_positive(s):
            return -(self.norm(s) / self.norm(x)) * self.value(mu, s)
        tau = _neg(s)
        return (self.norm(tau) / self.norm(mu)) * self.value(tau, x)

    def _build(self) -> None:
        order = {r: i for i, r in enumerate(self.system.positives)}
        for gamma in self.system.positives:
            if _height(gamma) < 2:
                continue
            decomps = []
            for alpha in self.system.positives:
                if order[alpha] >= order[gamma]:
                    break
                beta = _sub(gamma, alpha)
                if self.system.is_positive(beta) and _root_key(alpha) < _root_key(beta):
                    decomps.append((alpha, beta))
            if not decomps:
                raise ConstructionDefectError(
                    f"positive root {gamma} has no decomposition into positives"
                )
            xi, eta = decomps[0]
            lead = Fraction(self._string_down(xi, eta) + 1)
            self._record(xi, eta, lead)
            for alpha, beta in decomps[1:]:
                neg_alpha = _neg(alpha)
                t1 = self.value(eta, neg_alpha)
                if t1:
                    t1 *= self.value(_sub(eta, alpha), xi)
                t2 = self.value(neg_alpha, xi)
                if t2:
                    t2 *= self.value(_sub(xi, alpha), eta)
                val = self.norm(gamma) / (self.norm(beta) * lead) * (t1 + t2)
                self._record(alpha, beta, val)

    def _record(self, alpha: Root, beta: Root, val: Fraction) -> None:
        expected = self._string_down(alpha, beta) + 1
        if val.denominator != 1 or abs(val) != expected or expected > 3:
            raise ConstructionDefectError(
                f"structure constant for {alpha} + {beta} came out as {val}, "
                f"expected magnitude {expected}"
            )
        self.table[(alpha, beta)] = val


def chevalley_algebra(cm: CartanMatrix, options: CheckOptions | None = None) -> ChevalleyAlgebra:
    """Split semisimple Lie algebra with integer structure constants from a
    finite-type Cartan matrix.

    The basis is h_1..h_l followed by root vectors; brackets follow the
    root system: [h_i, e_b] = <b, a_i~> e_b, [e_b, e_-b] is the coroot
    combination of the h_i, and [e_b, e_c] = N e_(b+c) with |N| = p + 1.
    The result is axiom-checked before it is returned, exhaustively up to
    dimension 60 and by seeded sampling above (override via options).
    """
    validation = validate_cartan(cm)
    if not validation.is_finite_type:
        reasons = "; ".join(validation.problems) or "symmetrised form is not positive definite"
        raise NotFiniteTypeError(f"not a finite-type Cartan matrix: {reasons}")
    system = roots_from_cartan(cm)
    l = cm.rank
    d = validation.symmetriser
    assert d is not None
    signs = _SignTable(cm, system, d)

    positives = system.positives
    npos = len(positives)
    dim = l + 2 * npos
    roots_in_order: list[Root] = list(positives) + [_neg(r) for r in positives]
    index_of: dict[Root, int] = {r: l + i for i, r in enumerate(roots_in_order)}

    names = [f"h{i + 1}" for i in range(l)]
    names += ["e[" + ",".join(str(c) for c in r) + "]" for r in roots_in_order]

    table: dict[tuple[int, int], list[tuple[int, Fraction]]] = {}

    def put(i: int, j: int, terms: list[tuple[int, Fraction]]) -> None:
        cleaned = [(k, c) for k, c in terms if c]
        if cleaned:
            table[(i, j)] = cleaned

    for i in range(l):
        for pos_idx, rho in enumerate(roots_in_order):
            val = Fraction(pairing(cm, rho, i))
            put(i, l + pos_idx, [(l + pos_idx, val)])

    for ia in range(len(roots_in_order)):
        rho = roots_in_order[ia]
        for ib in range(ia + 1, len(roots_in_order)):
            sigma = roots_in_order[ib]
            total = _add(rho, sigma)
            if all(x == 0 for x in total):
                nb = signs.norm(rho)
                coefs = []
                for t in range(l):
                    k = Fraction(2 * rho[t]) * d[t] / nb
                    if k.denominator != 1:
                        raise ConstructionDefectError(
                            f"coroot of {rho} has a non-integer coefficient {k}"
                        )
                    coefs.append((t, k))
                put(l + ia, l + ib, coefs)
            elif system.is_root(total):
                n = signs.value(rho, sigma)
                put(l + ia, l + ib, [(index_of[total], n)])

    algebra = LieAlgebra(
        dim, tuple(names), constants_from_sparse(dim, table), verified=False
    )
    opts = options if options is not None else CheckOptions(full_threshold=60)
    algebra = verified(algebra, opts)
    return ChevalleyAlgebra(
        algebra,
        cm,
        system,
        tuple(range(l)),
        tuple(roots_in_order),
        dict(index_of),
    )


# ---------------------------------------------------------------------------
# Serre relation verification


@dataclass(frozen=True)
class SerreReport:
    """Outcome of checking the seven defining relation families on the
    distinguished generators of a Chevalley algebra."""

    checked: tuple[str, ...]
    violations: tuple[tuple[str, int, int], ...]

    @property
    def passed(self) -> bool:
        return not self.violations


SERRE_FAMILIES = (
    "cartan_commute",
    "ef_diagonal",
    "ef_off_diagonal",
    "cartan_e_eigen",
    "cartan_f_eigen",
    "serre_e",
    "serre_f",
)


def verify_serre(chev: ChevalleyAlgebra) -> SerreReport:
    """Check the defining relations on E_i = e(a_i), F_i = e(-a_i), H_i."""
    L = chev.algebra
    a = chev.cartan.entries
    l = chev.cartan.rank
    simples = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
    E = [L.unit(chev.index_of(s)) for s in simples]
    F = [L.unit(chev.index_of(_neg(s))) for s in simples]
    H = [L.unit(i) for i in range(l)]
    zero = tuple(_ZERO for _ in range(L.dim))

    def scaled(v: Vector, c: int) -> Vector:
        return tuple(Fraction(c) * x for x in v)

    violations: list[tuple[str, int, int]] = []
    for i in range(l):
        for j in range(l):
            if i < j and L.bracket(H[i], H[j]) != zero:
                violations.append(("cartan_commute", i, j))
            if i == j:
                if L.bracket(E[i], F[i]) != H[i]:
                    violations.append(("ef_diagonal", i, i))
            else:
                if L.bracket(E[i], F[j]) != zero:
                    violations.append(("ef_off_diagonal", i, j))
            if L.bracket(H[i], E[j]) != scaled(E[j], a[j][i]):
                violations.append(("cartan_e_eigen", i, j))
            if L.bracket(H[i], F[j]) != scaled(F[j], -a[j][i]):
                violations.append(("cartan_f_eigen", i, j))
            if i != j:
                w = E[j]
                for _ in range(1 - a[j][i]):
                    w = L.bracket(E[i], w)
                if w != zero:
                    violations.append(("serre_e", i, j))
                w = F[j]
                for _ in range(1 - a[j][i]):
                    w = L.bracket(F[i], w)
                if w != zero:
                    violations.append(("serre_f", i, j))
    return SerreReport(SERRE_FAMILIES, tuple(violations))


# ---------------------------------------------------------------------------
# Dynkin diagrams


@dataclass(frozen=True)
class DynkinEdge:
    i: int
    j: int
    multiplicity: int
    arrow_to: int | None


@dataclass(frozen=True)
class DynkinDiagram:
    nodes: int
    edges: tuple[DynkinEdge, ...]

    def neighbours(self, node: int) -> list[int]:
        out = []
        for e in self.edges:
            if e.i == node:
                out.append(e.j)
            elif e.j == node:
                out.append(e.i)
        return sorted(out)

    def edge_between(self, u: int, v: int) -> DynkinEdge | None:
        for e in self.edges:
            if {e.i, e.j} == {u, v}:
                return e
        return None


def dynkin(cm: CartanMatrix) -> DynkinDiagram:
    """Diagram on the simple roots: an edge wherever the Cartan entries do
    not vanish, labelled by their product, with the arrow aimed at the
    short root on multiple edges."""
    validation = validate_cartan(cm)
    if not validation.is_generalized:
        raise NotFiniteTypeError(
            "not a generalized Cartan matrix: " + "; ".join(validation.problems)
        )
    a = cm.entries
    edges = []
    for i in range(cm.rank):
        for j in range(i + 1, cm.rank):
            if a[i][j] == 0:
                continue
            mult = a[i][j] * a[j][i]
            if abs(a[i][j]) > abs(a[j][i]):
                arrow: int | None = j
            elif abs(a[j][i]) > abs(a[i][j]):
                arrow = i
            else:
                arrow = None
            edges.append(DynkinEdge(i, j, mult, arrow))
    return DynkinDiagram(cm.rank, tuple(edges))


@dataclass(frozen=True)
class Recognition:
    """Catalogue verdict for one connected diagram component; family None
    means the component is not of finite type."""

    family: str | None
    rank: int
    nodes: tuple[int, ...]

    @property
    def verdict(self) -> str:
        if self.family is None:
            return "not finite type"
        return f"{self.family}{self.rank}"


def _diagram_components(d: DynkinDiagram) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    comps = []
    for start in range(d.nodes):
        if start in seen:
            continue
        queue = [start]
        seen.add(start)
        comp = []
        while queue:
            u = queue.pop()
            comp.append(u)
            for v in d.neighbours(u):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        comps.append(tuple(sorted(comp)))
    return comps


def _path_order(nodes: Sequence[int], d: DynkinDiagram) -> list[int] | None:
    """Nodes of a component in path order, or None if it is not a path."""
    if len(nodes) == 1:
        return [nodes[0]]
    degs = {u: len([v for v in d.neighbours(u) if v in nodes]) for u in nodes}
    ends = sorted(u for u in nodes if degs[u] == 1)
    if len(ends) != 2 or any(degs[u] > 2 for u in nodes):
        return None
    order = [ends[0]]
    prev = None
    while len(order) < len(nodes):
        cur = order[-1]
        nexts = [v for v in d.neighbours(cur) if v in nodes and v != prev]
        if len(nexts) != 1:
            return None
        prev = cur
        order.append(nexts[0])
    return order


def _arm_from(d: DynkinDiagram, nodes: Sequence[int], center: int, first: int) -> list[int]:
    arm = [first]
    prev = center
    while True:
        cur = arm[-1]
        nexts = [v for v in d.neighbours(cur) if v in nodes and v != prev]
        if not nexts:
            return arm
        if len(nexts) > 1:
            return arm
        prev = cur
        arm.append(nexts[0])


def _recognize_component(d: DynkinDiagram, nodes: tuple[int, ...]) -> Recognition:
    n = len(nodes)
    if n == 1:
        return Recognition("A", 1, nodes)
    edges = [e for e in d.edges if e.i in nodes and e.j in nodes]
    if any(e.multiplicity > 3 for e in edges):
        return Recognition(None, n, nodes)
    triples = [e for e in edges if e.multiplicity == 3]
    doubles = [e for e in edges if e.multiplicity == 2]
    if triples:
        if n == 2 and len(edges) == 1 and not doubles:
            return Recognition("G", 2, nodes)
        return Recognition(None, n, nodes)

    degs = {u: len([v for v in d.neighbours(u) if v in nodes]) for u in nodes}
    if not doubles:
        branch = [u for u in nodes if degs[u] >= 3]
        if not branch:
            return Recognition("A", n, nodes)
        if len(branch) != 1 or degs[branch[0]] != 3:
            return Recognition(None, n, nodes)
        center = branch[0]
        arms = sorted(
            len(_arm_from(d, nodes, center, v)) for v in d.neighbours(center) if v in nodes
        )
        if arms[0] == 1 and arms[1] == 1:
            return Recognition("D", n, nodes)
        if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
            return Recognition("E", n, nodes)
        return Recognition(None, n, nodes)

    if len(doubles) > 1:
        return Recognition(None, n, nodes)
    order = _path_order(nodes, d)
    if order is None:
        return Recognition(None, n, nodes)
    double = doubles[0]
    k = next(
        idx
        for idx in range(len(order) - 1)
        if {order[idx], order[idx + 1]} == {double.i, double.j}
    )
    if n == 2:
        family = "B" if double.arrow_to == max(nodes) else "C"
        return Recognition(family, 2, nodes)
    if k == 0 or k == n - 2:
        terminal = order[0] if k == 0 else order[-1]
        family = "B" if double.arrow_to == terminal else "C"
        return Recognition(family, n, nodes)
    if n == 4 and k == 1:
        return Recognition("F", 4, nodes)
    return Recognition(None, n, nodes)


def recognize(d: DynkinDiagram) -> list[Recognition]:
    """Match each connected component against the finite catalogue."""
    return [_recognize_component(d, comp) for comp in _diagram_components(d)]


# ---------------------------------------------------------------------------
# rendering


_ASCII_CORE = {1: "---", 2: "===", 3: "≡≡≡"}
_ASCII_RIGHT = {2: "=>=", 3: "≡>≡"}
_ASCII_LEFT = {2: "=<=", 3: "≡<≡"}


def _edge_glyph(mult: int, direction: str) -> str:
    if mult == 1:
        return "---"
    if mult in (2, 3):
        if direction == "right":
            return _ASCII_RIGHT[mult]
        if direction == "left":
            return _ASCII_LEFT[mult]
        return _ASCII_CORE[mult]
    return f"={mult}="


def _render_path_ascii(order: list[int], d: DynkinDiagram) -> str:
    def arrows(seq: list[int]) -> list[str]:
        dirs = []
        for u, v in zip(seq, seq[1:]):
            e = d.edge_between(u, v)
            assert e is not None
            if e.arrow_to is None:
                dirs.append("none")
            elif e.arrow_to == v:
                dirs.append("right")
            else:
                dirs.append("left")
        return dirs

    dirs = arrows(order)
    if "left" in dirs and "right" not in dirs:
        order = list(reversed(order))
        dirs = arrows(order)
    parts = ["o"]
    for (u, v), direction in zip(zip(order, order[1:]), dirs):
        e = d.edge_between(u, v)
        assert e is not None
        parts.append(_edge_glyph(e.multiplicity, direction))
        parts.append("o")
    return "".join(parts)


def _render_component_ascii(nodes: tuple[int, ...], d: DynkinDiagram) -> str:
    if len(nodes) == 1:
        return "o"
    order = _path_order(nodes, d)
    if order is not None:
        return _render_path_ascii(order, d)
    degs = {u: len([v for v in d.neighbours(u) if v in nodes]) for u in nodes}
    branch = [u for u in nodes if degs[u] >= 3]
    if len(branch) == 1 and degs[branch[0]] == 3:
        center = branch[0]
        arms = [_arm_from(d, nodes, center, v) for v in sorted(d.neighbours(center)) if v in nodes]
        arms.sort(key=len, reverse=True)
        longest, second, third = arms[0], arms[1], arms[2]
        horizontal = list(reversed(longest)) + [center] + second
        top = _render_path_ascii(horizontal, d)
        offset = 4 * len(longest)
        lines = [top]
        for node in third:
            lines.append(" " * offset + "|")
            lines.append(" " * offset + "o")
        return "\n".join(lines)
    rows = []
    for e in sorted((e for e in d.edges if e.i in nodes), key=lambda e: (e.i, e.j)):
        arrow = "" if e.arrow_to is None else f" -> {e.arrow_to}"
        rows.append(f"{e.i} ({e.multiplicity}) {e.j}{arrow}")
    return "\n".join(rows)


def render_dynkin(d: DynkinDiagram, format: str = "ascii") -> str:
    """Deterministic text form of a diagram.

    ASCII uses o for nodes and ---, ===, and triple-bar edges, with > or <
    inserted on multiple edges aimed at the short root; each chain is
    oriented so its arrow points rightward. DOT output is a digraph whose
    multiple edges keep their direction and carry the multiplicity label.
    """
    if format == "ascii":
        comps = _diagram_components(d)
        return "\n\n".join(_render_component_ascii(c, d) for c in comps)
    if format == "dot":
        lines = [
            "digraph dynkin {",
            "  rankdir=LR;",
            '  node [shape=circle, label="", width=0.25];',
        ]
        for i in range(d.nodes):
            lines.append(f"  n{i};")
        for e in sorted(d.edges, key=lambda e: (e.i, e.j)):
            if e.multiplicity == 1:
                lines.append(f"  n{e.i} -> n{e.j} [dir=none];")
            elif e.arrow_to is None:
                lines.append(f'  n{e.i} -> n{e.j} [dir=none, label="{e.multiplicity}"];')
            else:
                tail = e.i if e.arrow_to == e.j else e.j
                head = e.j if e.arrow_to == e.j else e.i
                lines.append(f'  n{tail} -> n{head} [label="{e.multiplicity}"];')
        lines.append("}")
        return "\n".join(lines)
    raise ValueError(f"unknown format {format!r}")


# ---------------------------------------------------------------------------
# recognition of split semisimple algebras


def _residual_matrix(space: Subspace, n: int) -> Matrix:
    """Linear map sending a vector to its residue after clearing the pivot
    coordinates against the echelon basis; the subspace is exactly the
    kernel."""
    rows = [[_ONE if k == c else _ZERO for k in range(n)] for c in range(n)]
    for bvec in space.basis:
        p = next(i for i, x in enumerate(bvec) if x)
        for c in range(n):
            if bvec[c]:
                rows[c][p] -= bvec[c]
    return Matrix.from_rows(rows)


def _is_self_normalising(L: LieAlgebra, H: LieSubspace) -> bool:
    n = L.dim
    resid = _residual_matrix(H.space, n)
    stacked: Matrix | None = None
    for h in H.space.basis:
        block = resid @ L.ad(h)
        stacked = block if stacked is None else stacked.stack(block)
    assert stacked is not None
    return kernel(stacked) == H.space


def split_decompose(
    L: LieAlgebra, H: LieSubspace
) -> list[tuple[LieSubspace, tuple[str, int]]]:
    """Decompose a semisimple algebra into simple ideals along the root
    spaces of a splitting Cartan subalgebra and name each ideal's type.

    H must be abelian, self-normalising, and act diagonalisably with
    rational eigenvalues; each of these is checked. The returned ideals
    are verified simple, pairwise bracketing to zero, and spanning.
    """
    from liekit.weights import root_spaces

    if H.parent != L:
        raise ValueError("subspace belongs to a different algebra")
    if not is_semisimple(L):
        raise NotSemisimpleError("the algebra has a nonzero radical")
    basis = H.space.basis
    if not basis:
        raise NotCartanError("the candidate Cartan subalgebra is zero")
    zero = tuple(_ZERO for _ in range(L.dim))
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if L.bracket(basis[a], basis[b]) != zero:
                raise NotCartanError(
                    f"candidate Cartan subalgebra is not abelian: basis vectors "
                    f"{a} and {b} do not commute"
                )
    if not _is_self_normalising(L, H):
        raise NotCartanError("candidate Cartan subalgebra is not self-normalising")

    results = root_spaces(L, H)
    ads = [L.ad(h) for h in basis]
    for res in results:
        for w in res.space.basis:
            for j, (m, lam) in enumerate(zip(ads, res.chi.values)):
                got = m.mul_vec(w)
                want = tuple(lam * x for x in w)
                if got != want:
                    raise NonSplitError(
                        f"ad of Cartan basis vector {j} is not diagonalisable over "
                        "the rationals on its weight space"
                    )

    zero_space = next((r.space for r in results if r.chi.is_zero()), None)
    if zero_space != H.space:
        raise NotCartanError(
            "the zero weight space differs from the candidate subalgebra; "
            "it is not a Cartan subalgebra"
        )

    root_results = [r for r in results if not r.chi.is_zero()]
    root_set = {r.chi.values for r in root_results}
    positives = sorted(
        v for v in root_set if next(x for x in v if x) > 0
    )
    pos_set = set(positives)
    simples = [
        alpha
        for alpha in positives
        if not any(
            beta != alpha and tuple(a - b for a, b in zip(alpha, beta)) in pos_set
            for beta in positives
        )
    ]

    def string_entry(bi: tuple[Fraction, ...], bj: tuple[Fraction, ...]) -> int:
        if bi == bj:
            return 2
        p = 0
        walk = tuple(a - b for a, b in zip(bi, bj))
        while walk in root_set:
            p += 1
            walk = tuple(a - b for a, b in zip(walk, bj))
        q = 0
        walk = tuple(a + b for a, b in zip(bi, bj))
        while walk in root_set:
            q += 1
            walk = tuple(a + b for a, b in zip(walk, bj))
        return p - q

    entries = tuple(
        tuple(string_entry(si, sj) for sj in simples) for si in simples
    )
    cm = CartanMatrix(entries)
    validation = validate_cartan(cm)
    if not validation.is_finite_type:
        raise ConstructionDefectError(
            "recovered Cartan matrix is not of finite type: "
            + ("; ".join(validation.problems) or "not positive definite")
        )
    diagram = dynkin(cm)
    comps = recognize(diagram)
    space_of = {r.chi.values: r.space for r in root_results}

    out: list[tuple[LieSubspace, tuple[str, int]]] = []
    ideal_spaces: list[Subspace] = []
    for comp in comps:
        if comp.family is None:
            raise ConstructionDefectError(
                "a diagram component of a verified finite-type matrix failed recognition"
            )
        seeds: list[Vector] = []
        for node in comp.nodes:
            alpha = simples[node]
            neg_alpha = tuple(-x for x in alpha)
            seeds.extend(space_of[alpha].basis)
            seeds.extend(space_of[neg_alpha].basis)
        closure = ideal_closure(L, seeds)
        ideal = classify_subspace(L, closure)
        if ideal.kind != "ideal":
            raise ConstructionDefectError("component closure is not an ideal")
        if not is_simple(restrict(L, ideal)):
            raise ConstructionDefectError("a component ideal is not simple")
        family, rank = comp.family, comp.rank
        if (family, rank) == ("C", 2):
            family = "B"
        out.append((ideal, (family, rank)))
        ideal_spaces.append(ideal.space)

    for a in range(len(ideal_spaces)):
        for b in range(a + 1, len(ideal_spaces)):
            for u in ideal_spaces[a].basis:
                for v in ideal_spaces[b].basis:
                    if L.bracket(u, v) != zero:
                        raise ConstructionDefectError(
                            f"component ideals {a} and {b} do not bracket to zero"
                        )
    total = Subspace.zero(L.dim)
    for s in ideal_spaces:
        total = total + s
    if not total.is_full():
        raise ConstructionDefectError("component ideals do not span the algebra")
    return out
