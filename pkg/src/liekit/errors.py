"""Exception types shared across the package.

The CLI maps these onto its exit-code contract, so new failure modes should
reuse an existing class where the meaning fits rather than invent a fresh
one.
"""

from __future__ import annotations


class LieKitError(Exception):
    """Base class for all structured failures raised by liekit."""


class ParseError(LieKitError):
    """Malformed wire input: bad JSON shape, bad rational literal, bad element syntax."""


class NotFiniteTypeError(LieKitError):
    """A Cartan matrix is not a valid finite-type generalised Cartan matrix."""


class NotClosedError(LieKitError):
    """A subspace that was required to close under the bracket does not."""


class NotNilpotentError(LieKitError):
    """A nilpotency precondition on a subalgebra failed."""


class NotCartanError(LieKitError):
    """A candidate splitting Cartan subalgebra fails to be one: not abelian,
    not self-normalising, or not self-centralising."""


class NonSplitError(LieKitError):
    """An operator that must split over the rationals has an irrational eigenvalue."""


class NotSemisimpleError(LieKitError):
    """Decomposition into simple ideals was requested for a non-semisimple algebra."""


class ConstructionDefectError(LieKitError):
    """An internal runtime postcondition failed; indicates a bug, not bad input."""
