"""The free Lie algebra on a finite alphabet, truncated by degree.

Basis elements are Lyndon words (words strictly smaller than all of their
proper suffixes); the standard bracketing of a Lyndon word splits it at its
lexicographically least proper suffix and brackets the two halves
recursively. Arbitrary bracket expressions are rewritten into this basis by
expanding both sides in the free associative algebra: the expansion of a
standard bracketing is its own word plus lexicographically larger words, so
repeatedly subtracting the expansion of the least surviving word terminates
and yields exact basis coordinates.

Elements carry a truncation degree (default 8); bracket terms beyond it are
dropped, which makes every operation finite while keeping all identities
exact within the retained degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from liekit.errors import ParseError
from liekit.exactlin import Vector, as_scalar, format_scalar, parse_scalar
from liekit.lie_core import LieAlgebra

Word = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)

DEFAULT_TRUNCATION = 8


def is_lyndon(letters: Sequence[int]) -> bool:
    w = tuple(letters)
    if not w:
        return False
    return all(w < w[i:] for i in range(1, len(w)))


@dataclass(frozen=True, order=True)
class LyndonWord:
    """A word strictly smaller than each of its proper suffixes."""

    letters: Word

    def __post_init__(self) -> None:
        if not self.letters:
            raise ValueError("the empty word is not Lyndon")
        if any(c < 0 for c in self.letters):
            raise ValueError("letters are nonnegative indices")
        if not is_lyndon(self.letters):
            raise ValueError(f"{self.letters} is not a Lyndon word")

    @property
    def degree(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(letter_name(c) for c in self.letters)


def letter_name(i: int) -> str:
    if 0 <= i < 26:
        return chr(ord("a") + i)
    return f"x{i}"


def lyndon_words(alphabet_size: int, degree: int) -> list[LyndonWord]:
    """All Lyndon words of exactly the given degree, lexicographically
    sorted (Duval's generation order is already lexicographic)."""
    if alphabet_size < 1 or degree < 1:
        raise ValueError("alphabet size and degree must be at least 1")
    return [LyndonWord(w) for w in _duval(alphabet_size, degree) if len(w) == degree]


@lru_cache(maxsize=None)
def _duval(k: int, max_len: int) -> tuple[Word, ...]:
    """Duval's algorithm: all Lyndon words over k letters of length at most
    max_len, in lexicographic order."""
    out: list[Word] = []
    w = [-1]
    while w:
        w[-1] += 1
        out.append(tuple(w))
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return tuple(out)


def standard_factorization(w: Word) -> tuple[Word, Word]:
    """Split a Lyndon word of length at least 2 as u v with v its
    lexicographically least proper suffix; both halves are Lyndon."""
    if len(w) < 2:
        raise ValueError("single letters do not factor")
    best = 1
    for i in range(2, len(w)):
        if w[i:] < w[best:]:
            best = i
    return w[:best], w[best:]


def bracket_text(w: Word) -> str:
    """The standard bracketing rendered with square brackets, e.g. [a,[a,b]]."""
    if len(w) == 1:
        return letter_name(w[0])
    u, v = standard_factorization(w)
    return f"[{bracket_text(u)},{bracket_text(v)}]"


# ---------------------------------------------------------------------------
# expansion into the free associative algebra and rewriting back


@lru_cache(maxsize=None)
def _expand_standard(w: Word) -> tuple[tuple[Word, Fraction], ...]:
    """Noncommutative-polynomial expansion of the standard bracketing of w."""
    if len(w) == 1:
        return ((w, _ONE),)
    u, v = standard_factorization(w)
    return _poly_commutator(_expand_standard(u), _expand_standard(v))


def _poly_commutator(
    a: tuple[tuple[Word, Fraction], ...], b: tuple[tuple[Word, Fraction], ...]
) -> tuple[tuple[Word, Fraction], ...]:
    acc: dict[Word, Fraction] = {}
    for wa, ca in a:
        for wb, cb in b:
            c = ca * cb
            for word, s in ((wa + wb, c), ((wb + wa), -c)):
                t = acc.get(word, _ZERO) + s
                if t:
                    acc[word] = t
                elif word in acc:
                    del acc[word]
    return tuple(sorted(acc.items()))


def _rewrite_to_basis(poly: Mapping[Word, Fraction]) -> dict[Word, Fraction]:
    """Coordinates of a homogeneous associative polynomial in the Lyndon
    basis. The expansion of each standard bracketing leads with its own word,
    so clearing the least surviving word strictly increases it and the loop
    terminates; hitting a non-Lyndon leader means the input was not a Lie
    element."""
    work = {w: c for w, c in poly.items() if c}
    out: dict[Word, Fraction] = {}
    while work:
        w = min(work)
        if not is_lyndon(w):
            raise ValueError(f"polynomial is not a Lie element: stray word {w}")
        c = work.pop(w)
        out[w] = out.get(w, _ZERO) + c
        for word, coeff in _expand_standard(w):
            if word == w:
                continue
            t = work.get(word, _ZERO) - c * coeff
            if t:
                work[word] = t
            elif word in work:
                del work[word]
    return {w: c for w, c in out.items() if c}


@lru_cache(maxsize=None)
def _bracket_basis(w1: Word, w2: Word) -> tuple[tuple[Word, Fraction], ...]:
    """Lyndon coordinates of the bracket of two basis words."""
    if w1 == w2:
        return ()
    prod = _poly_commutator(_expand_standard(w1), _expand_standard(w2))
    return tuple(sorted(_rewrite_to_basis(dict(prod)).items()))


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class FreeLieElement:
    """Finite Lyndon-basis combination over a fixed alphabet, with all terms
    of degree at most the truncation bound."""

    alphabet_size: int
    truncation: int
    terms: tuple[tuple[Word, Fraction], ...]

    def __post_init__(self) -> None:
        if self.alphabet_size < 1:
            raise ValueError("alphabet size must be at least 1")
        if self.truncation < 1:
            raise ValueError("truncation degree must be at least 1")
        seen = set()
        for w, c in self.terms:
            if w in seen:
                raise ValueError(f"duplicate term {w}")
            seen.add(w)
            if not is_lyndon(w):
                raise ValueError(f"{w} is not a Lyndon word")
            if any(x >= self.alphabet_size for x in w):
                raise ValueError(f"word {w} uses letters outside the alphabet")
            if len(w) > self.truncation:
                raise ValueError(f"word {w} exceeds the truncation degree")
            if not c:
                raise ValueError("zero coefficients are never stored")

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, w: Word) -> Fraction:
        for word, c in self.terms:
            if word == w:
                return c
        return _ZERO

    def _with_terms(self, mapping: Mapping[Word, Fraction]) -> "FreeLieElement":
        return element(self.alphabet_size, mapping, self.truncation)

    def __add__(self, other: "FreeLieElement") -> "FreeLieElement":
        _require_compatible(self, other)
        acc = dict(self.terms)
        for w, c in other.terms:
            acc[w] = acc.get(w, _ZERO) + c
        return self._with_terms(acc)

    def __sub__(self, other: "FreeLieElement") -> "FreeLieElement":
        return self + other.scale(-1)

    def __neg__(self) -> "FreeLieElement":
        return self.scale(-1)

    def scale(self, c) -> "FreeLieElement":
        c = as_scalar(c)
        if not c:
            return element(self.alphabet_size, {}, self.truncation)
        return self._with_terms({w: c * x for w, x in self.terms})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for w, c in self.terms:
            text = bracket_text(w)
            mag = abs(c)
            piece = text if mag == 1 else f"{format_scalar(mag)}*{text}"
            if not out:
                out.append(piece if c > 0 else f"-{piece}")
            else:
                out.append(f"+ {piece}" if c > 0 else f"- {piece}")
        return " ".join(out)


def _require_compatible(a: FreeLieElement, b: FreeLieElement) -> None:
    if a.alphabet_size != b.alphabet_size:
        raise ValueError("elements live over different alphabets")
    if a.truncation != b.truncation:
        raise ValueError("elements carry different truncation degrees")


def element(
    alphabet_size: int,
    terms: Mapping[Word, Fraction | int] | Iterable[tuple[Word, Fraction | int]],
    truncation: int = DEFAULT_TRUNCATION,
) -> FreeLieElement:
    """Normalised element: zero coefficients and over-degree words dropped,
    terms sorted by degree then letters."""
    mapping = dict(terms) if not isinstance(terms, dict) else terms
    cleaned = {}
    for w, c in mapping.items():
        c = as_scalar(c)
        if c and len(w) <= truncation:
            cleaned[tuple(w)] = c
    ordered = tuple(sorted(cleaned.items(), key=lambda t: (len(t[0]), t[0])))
    return FreeLieElement(alphabet_size, truncation, ordered)


def letter(i: int, alphabet_size: int, truncation: int = DEFAULT_TRUNCATION) -> FreeLieElement:
    if not 0 <= i < alphabet_size:
        raise ValueError("letter index outside the alphabet")
    return element(alphabet_size, {(i,): _ONE}, truncation)


def free_bracket(x: FreeLieElement, y: FreeLieElement) -> FreeLieElement:
    """Bilinear bracket on the Lyndon basis; terms beyond the truncation
    degree are dropped."""
    _require_compatible(x, y)
    acc: dict[Word, Fraction] = {}
    for w1, c1 in x.terms:
        for w2, c2 in y.terms:
            if len(w1) + len(w2) > x.truncation:
                continue
            c = c1 * c2
            for word, coeff in _bracket_basis(w1, w2):
                t = acc.get(word, _ZERO) + c * coeff
                if t:
                    acc[word] = t
                elif word in acc:
                    del acc[word]
    return element(x.alphabet_size, acc, x.truncation)


def lift(
    assignment: Sequence[Sequence[Fraction]], L: LieAlgebra, x: FreeLieElement
) -> Vector:
    """Evaluate x in L, sending letter i to assignment[i].

    This is the unique bracket-preserving extension of the assignment:
    each basis word evaluates by its standard bracketing under L's bracket
    and the result extends linearly.
    """
    if len(assignment) != x.alphabet_size:
        raise ValueError("one target vector per letter is required")
    if not L.verified:
        raise ValueError("lift requires a verified target algebra")
    vectors = [tuple(as_scalar(c) for c in v) for v in assignment]
    for v in vectors:
        if len(v) != L.dim:
            raise ValueError("assignment vector length does not match the algebra")
    memo: dict[Word, Vector] = {}

    def evaluate(w: Word) -> Vector:
        got = memo.get(w)
        if got is None:
            if len(w) == 1:
                got = vectors[w[0]]
            else:
                u, v = standard_factorization(w)
                got = L.bracket(evaluate(u), evaluate(v))
            memo[w] = got
        return got

    acc = [_ZERO] * L.dim
    for w, c in x.terms:
        val = evaluate(w)
        for i, entry in enumerate(val):
            if entry:
                acc[i] += c * entry
    return tuple(acc)


def graded_dimension(alphabet_size: int, degree: int) -> int:
    """Dimension of the degree-n graded piece over k letters, by the Witt
    formula (1/n) sum over d | n of mu(d) k^(n/d)."""
    if alphabet_size < 1 or degree < 1:
        raise ValueError("alphabet size and degree must be at least 1")
    from sympy import divisors, mobius

    total = sum(int(mobius(d)) * alphabet_size ** (degree // d) for d in divisors(degree))
    if total % degree:
        raise ArithmeticError("Witt sum failed to divide evenly")
    return total // degree


# ---------------------------------------------------------------------------
# textual element grammar


def parse_element(
    text: str, alphabet_size: int, truncation: int = DEFAULT_TRUNCATION
) -> FreeLieElement:
    """Parse a bracket expression.

    Grammar: an expression is a signed sum of terms; a term is an optional
    rational coefficient and '*' followed by an atom; an atom is a letter
    a-z or a bracket [expr,expr]. Example: [a,b] - 2/3*[a,[a,b]].
    """
    parser = _ElementParser(text, alphabet_size, truncation)
    result = parser.parse_expression()
    parser.skip_space()
    if parser.pos != len(parser.text):
        raise ParseError(f"unexpected input at position {parser.pos}: {text[parser.pos:]!r}")
    return result


class _ElementParser:
    def __init__(self, text: str, alphabet_size: int, truncation: int) -> None:
        self.text = text
        self.pos = 0
        self.alphabet_size = alphabet_size
        self.truncation = truncation

    def skip_space(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r} at position {self.pos}")
        self.pos += 1

    def parse_expression(self) -> FreeLieElement:
        self.skip_space()
        sign = _ONE
        if self.peek() in ("+", "-"):
            if self.peek() == "-":
                sign = -_ONE
            self.pos += 1
        acc = self.parse_term().scale(sign)
        while True:
            self.skip_space()
            ch = self.peek()
            if ch not in ("+", "-"):
                return acc
            self.pos += 1
            term = self.parse_term()
            acc = acc + (term if ch == "+" else -term)

    def parse_term(self) -> FreeLieElement:
        self.skip_space()
        coeff = _ONE
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] == "/"):
            self.pos += 1
        if self.pos > start:
            literal = self.text[start : self.pos]
            try:
                coeff = parse_scalar(literal)
            except ValueError as exc:
                raise ParseError(f"bad coefficient {literal!r} at position {start}") from exc
            self.skip_space()
            self.expect("*")
        return self.parse_atom().scale(coeff)

    def parse_atom(self) -> FreeLieElement:
        self.skip_space()
        ch = self.peek()
        if ch == "[":
            self.pos += 1
            left = self.parse_expression()
            self.skip_space()
            self.expect(",")
            right = self.parse_expression()
            self.skip_space()
            self.expect("]")
            return free_bracket(left, right)
        if ch.isalpha() and ch.islower():
            idx = ord(ch) - ord("a")
            if idx >= self.alphabet_size:
                raise ParseError(f"letter {ch!r} outside the alphabet at position {self.pos}")
            self.pos += 1
            return letter(idx, self.alphabet_size, self.truncation)
        raise ParseError(f"expected a letter or '[' at position {self.pos}")
