"""Weight-space and root-space decompositions over the rationals.

A weight function assigns a rational value to each basis vector of an
acting subalgebra H; its weight space is the intersection of the maximal
generalised eigenspaces of the individual actions. Weight enumeration
finds every candidate value exactly, as a rational root of an exact
characteristic polynomial, and rejects irrational spectra loudly instead
of approximating.

Weight functions are linear functionals given by their values on a fixed
basis of H. Nonlinear functions can never be weights, so enumeration
loses nothing, and the basis-indexed intersection matches the ambient
definition for the nilpotent subalgebras these operations require.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from liekit.errors import (
    ConstructionDefectError,
    NonSplitError,
    NotNilpotentError,
)
from liekit.exactlin import (
    Matrix,
    ShapeError,
    Subspace,
    Vector,
    as_scalar,
    kernel,
)
from liekit.lie_core import (
    LieAlgebra,
    LieSubspace,
    Representation,
    is_nilpotent,
    restrict,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class WeightFunction:
    """Rational values on a fixed basis of the acting subalgebra."""

    values: tuple[Fraction, ...]

    @staticmethod
    def of(values: Sequence[int | Fraction]) -> "WeightFunction":
        return WeightFunction(tuple(as_scalar(v) for v in values))

    def __add__(self, other: "WeightFunction") -> "WeightFunction":
        if len(self.values) != len(other.values):
            raise ShapeError("weight functions index different bases")
        return WeightFunction(tuple(a + b for a, b in zip(self.values, other.values)))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)


@dataclass(frozen=True)
class WeightSpaceResult:
    chi: WeightFunction
    space: Subspace

    @property
    def is_weight(self) -> bool:
        return not self.space.is_zero()


def generalized_eigenspace(f: Matrix, lam: int | Fraction) -> Subspace:
    """Kernel of (f - lam*id)^n where n is the ambient dimension.

    The exponent n always reaches the maximal generalised eigenspace, so a
    single kernel computation suffices and no stabilisation loop is needed.
    """
    if not f.is_square():
        raise ShapeError("generalised eigenspaces require a square matrix")
    n = f.rows
    if n == 0:
        return Subspace.zero(0)
    shifted = f - Matrix.identity(n).scale(as_scalar(lam))
    return kernel(shifted.pow(n))


# ---------------------------------------------------------------------------
# exact characteristic polynomials and rational spectra


def _hessenberg(m: Matrix) -> list[list[Fraction]]:
    """Similarity reduction to upper Hessenberg form by exact elimination."""
    n = m.rows
    a = [list(m.row(i)) for i in range(n)]
    for c in range(n - 2):
        piv = next((r for r in range(c + 1, n) if a[r][c]), None)
        if piv is None:
            continue
        if piv != c + 1:
            a[piv], a[c + 1] = a[c + 1], a[piv]
            for row in a:
                row[piv], row[c + 1] = row[c + 1], row[piv]
        for r in range(c + 2, n):
            if a[r][c]:
                f = a[r][c] / a[c + 1][c]
                arow, brow = a[r], a[c + 1]
                for k in range(n):
                    arow[k] -= f * brow[k]
                for row in a:
                    row[c + 1] += f * row[r]
    return a


def char_poly(m: Matrix) -> tuple[Fraction, ...]:
    """Monic characteristic polynomial det(x*id - m), coefficients by
    ascending degree. Hessenberg reduction first, then the block-leading
    determinant recurrence, keeping the whole computation at cubic cost."""
    if not m.is_square():
        raise ShapeError("characteristic polynomial requires a square matrix")
    n = m.rows
    h = _hessenberg(m)
    polys: list[list[Fraction]] = [[_ONE]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = [_ZERO] + prev
        diag = h[k - 1][k - 1]
        if diag:
            for t, c in enumerate(prev):
                cur[t] -= diag * c
        prod = _ONE
        for i in range(k - 1, 0, -1):
            prod *= h[i][i - 1]
            if not prod:
                break
            coef = h[i - 1][k - 1] * prod
            if coef:
                for t, c in enumerate(polys[i - 1]):
                    cur[t] -= coef * c
        polys.append(cur)
    return tuple(polys[n])


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = _ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: list[Fraction], r: Fraction) -> list[Fraction] | None:
    """Quotient by (x - r) when r is a root, else None."""
    quotient: list[Fraction] = []
    acc = _ZERO
    for c in reversed(coeffs):
        acc = acc * r + c
        quotient.append(acc)
    if acc != 0:
        return None
    quotient.pop()
    quotient.reverse()
    return quotient


def rational_eigenvalues(f: Matrix) -> tuple[dict[Fraction, int], bool]:
    """Rational eigenvalues of f with algebraic multiplicities, plus a flag
    telling whether the characteristic polynomial splits over the
    rationals. Candidates come from the rational root theorem after
    clearing denominators."""
    coeffs = list(char_poly(f))
    roots: dict[Fraction, int] = {}
    zero_mult = 0
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs.pop(0)
        zero_mult += 1
    if zero_mult:
        roots[_ZERO] = zero_mult
    if len(coeffs) == 1:
        return roots, True

    from math import lcm

    from sympy import divisors

    denom = 1
    for c in coeffs:
        denom = lcm(denom, c.denominator)
    ints = [int(c * denom) for c in coeffs]
    lead_divs = divisors(abs(ints[-1]))
    const_divs = divisors(abs(ints[0]))
    candidates = sorted({Fraction(s * p, q) for p in const_divs for q in lead_divs for s in (1, -1)})
    for r in candidates:
        while True:
            reduced = _deflate(coeffs, r)
            if reduced is None:
                break
            coeffs = reduced
            roots[r] = roots.get(r, 0) + 1
        if len(coeffs) == 1:
            break
    return roots, len(coeffs) == 1


# ---------------------------------------------------------------------------
# weight spaces


def _chi_values(chi: WeightFunction | Sequence[int | Fraction], n: int) -> tuple[Fraction, ...]:
    values = chi.values if isinstance(chi, WeightFunction) else tuple(as_scalar(v) for v in chi)
    if len(values) != n:
        raise ShapeError(f"weight function has {len(values)} values for a basis of size {n}")
    return values


def pre_weight_space(
    rep: Representation,
    H_basis: Sequence[Sequence[Fraction]],
    chi: WeightFunction | Sequence[int | Fraction],
) -> Subspace:
    """Intersection of the maximal generalised eigenspaces of the actions
    of the given basis vectors at the given values."""
    values = _chi_values(chi, len(H_basis))
    space = Subspace.full(rep.module_dim)
    for x, lam in zip(H_basis, values):
        space = space & generalized_eigenspace(rep.action_of(x), lam)
        if space.is_zero():
            break
    return space


def _require_nilpotent(L: LieAlgebra, H: LieSubspace) -> None:
    if H.parent != L:
        raise ValueError("subspace belongs to a different algebra")
    sub = restrict(L, H)
    if not is_nilpotent(sub):
        raise NotNilpotentError(
            "the acting subalgebra is not nilpotent: its lower central series "
            "never reaches zero"
        )


def _certify_h_closed(space: Subspace, actions: Sequence[Matrix], what: str) -> None:
    for idx, m in enumerate(actions):
        for w in space.basis:
            if not space.contains_vector(m.mul_vec(w)):
                raise ConstructionDefectError(
                    f"{what} is not closed under acting basis vector {idx}"
                )


def weight_space(
    rep: Representation,
    H: LieSubspace,
    chi: WeightFunction | Sequence[int | Fraction],
) -> WeightSpaceResult:
    """Weight space of a representation for a nilpotent acting subalgebra,
    certified closed under the H-action."""
    _require_nilpotent(rep.algebra, H)
    values = _chi_values(chi, H.space.dim)
    space = pre_weight_space(rep, H.space.basis, values)
    actions = [rep.action_of(h) for h in H.space.basis]
    _certify_h_closed(space, actions, f"weight space of {values}")
    return WeightSpaceResult(WeightFunction(values), space)


def _adjoint_actions(L: LieAlgebra, H: LieSubspace) -> list[Matrix]:
    return [L.ad(h) for h in H.space.basis]


def _simultaneous_space(ads: Sequence[Matrix], values: Sequence[Fraction]) -> Subspace:
    space = Subspace.full(ads[0].rows) if ads else Subspace.full(0)
    for m, lam in zip(ads, values):
        space = space & generalized_eigenspace(m, lam)
        if space.is_zero():
            break
    return space


def root_spaces(L: LieAlgebra, H: LieSubspace) -> list[WeightSpaceResult]:
    """All weights of the adjoint action of a nilpotent subalgebra H,
    including the zero weight, each with its nonzero weight space.

    Candidate values for each basis vector are the rational roots of the
    exact characteristic polynomial of its adjoint matrix; candidate
    tuples are pruned by intersecting as they are extended. The returned
    spaces must exhaust the algebra; an irrational eigenvalue raises
    instead, naming the offending vector.
    """
    _require_nilpotent(L, H)
    ads = _adjoint_actions(L, H)
    if not ads:
        raise ValueError("the acting subalgebra is zero")
    state: list[tuple[tuple[Fraction, ...], Subspace]] = [((), Subspace.full(L.dim))]
    for j, m in enumerate(ads):
        values, split = rational_eigenvalues(m)
        if not split:
            raise NonSplitError(
                f"adjoint action of Cartan basis vector {j} has an irrational eigenvalue; "
                "the algebra does not split over the rationals for this subalgebra"
            )
        next_state = []
        for prefix, space in state:
            for lam in sorted(values):
                refined = space & generalized_eigenspace(m, lam)
                if not refined.is_zero():
                    next_state.append((prefix + (lam,), refined))
        state = next_state
    total = sum(space.dim for _, space in state)
    if total != L.dim:
        raise ConstructionDefectError(
            f"weight spaces cover dimension {total} of {L.dim}; "
            "simultaneous decomposition failed"
        )
    results = []
    for values, space in sorted(state, key=lambda t: t[0]):
        _certify_h_closed(space, ads, f"weight space of {values}")
        results.append(WeightSpaceResult(WeightFunction(values), space))
    return results


@dataclass(frozen=True)
class RootProductReport:
    chi1: WeightFunction
    chi2: WeightFunction
    chi_sum: WeightFunction
    dims: tuple[int, int, int]
    violations: tuple[tuple[int, int], ...]

    @property
    def holds(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.holds


def root_product_check(
    L: LieAlgebra,
    H: LieSubspace,
    chi1: WeightFunction | Sequence[int | Fraction],
    chi2: WeightFunction | Sequence[int | Fraction],
) -> RootProductReport:
    """Check that bracketing the two weight spaces lands inside the weight
    space of the sum of the weights, pair of basis vectors by pair."""
    _require_nilpotent(L, H)
    ads = _adjoint_actions(L, H)
    n = H.space.dim
    v1 = _chi_values(chi1, n)
    v2 = _chi_values(chi2, n)
    vs = tuple(a + b for a, b in zip(v1, v2))
    s1 = _simultaneous_space(ads, v1)
    s2 = _simultaneous_space(ads, v2)
    target = _simultaneous_space(ads, vs)
    violations = []
    for i, u in enumerate(s1.basis):
        for j, w in enumerate(s2.basis):
            if not target.contains_vector(L.bracket(u, w)):
                violations.append((i, j))
    return RootProductReport(
        WeightFunction(v1),
        WeightFunction(v2),
        WeightFunction(vs),
        (s1.dim, s2.dim, target.dim),
        tuple(violations),
    )
