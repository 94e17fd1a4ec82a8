"""Exact-arithmetic Lie theory toolkit.

Everything is computed over the rationals with python Fractions: no floats,
no tolerances. The package builds Lie algebras from structure constants or
matrix bases, computes the standard structural invariants (series, radical,
Killing form, weight spaces), constructs the split simple algebras from
Cartan matrices, and recognises Dynkin diagrams back out of semisimple
algebras.
"""

from liekit.exactlin import Matrix, Subspace, Scalar, rref, kernel, solve
from liekit.lie_core import (
    LieAlgebra,
    LieSubspace,
    Representation,
    check_axioms,
    classify_subspace,
    ideal_bracket,
    derived_series,
    lower_central_series,
    is_solvable,
    is_nilpotent,
    center,
    killing_form,
    radical,
    is_semisimple,
    is_simple,
    direct_sum,
    quotient,
    restrict,
)
from liekit.matrix_lie import (
    MatrixLieAlgebra,
    matrix_bracket,
    is_adjoint_pair,
    skew_adjoint_algebra,
    classical,
    congruence_transport,
    to_abstract,
)
from liekit.freelie import FreeLieElement, LyndonWord, lyndon_words, free_bracket, lift, graded_dimension
from liekit.cartan import (
    CartanMatrix,
    RootSystem,
    DynkinDiagram,
    ChevalleyAlgebra,
    named_cartan,
    validate_cartan,
    roots_from_cartan,
    chevalley_algebra,
    verify_serre,
    dynkin,
    recognize,
    split_decompose,
    render_dynkin,
)
from liekit.weights import (
    WeightFunction,
    WeightSpaceResult,
    generalized_eigenspace,
    pre_weight_space,
    weight_space,
    root_spaces,
    root_product_check,
)

__version__ = "0.1.0"
