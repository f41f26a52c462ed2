"""Kiselman's semigroup: elements, multiplication and the structural maps.

An element is identified with its canonical word, so equality and
hashing are word-level and the deterministic element order used in all
output is length-lexicographic on canonical words.  Multiplication
concatenates canonical words and re-canonicalizes.  The empty word is
the unit; the strictly decreasing word n, n-1, ..., 1 is the zero,
absorbing on both sides.

Structural maps:

* `content` -- the set of letters in the canonical form, a morphism onto
  subsets of {1..n} under union.
* `antiautomorphism` -- reverse the canonical word, flip every letter
  i -> n-i+1, re-canonicalize.  Order-reversing, involutive, fixes the
  zero.  Reversal and the letter flip act letter-wise independently, so
  they can be applied in either order.
* `zero_threshold` -- the least i such that right-multiplying by the
  decreasing idempotent over {1..i} gives the zero; zero exactly on the
  zero element itself.
* `prefix_before_one` -- for an element whose canonical form contains
  the letter 1 (necessarily exactly once), the element of the prefix
  before that letter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError, InvariantError, ValidationError
from .rewrite import canonical_form, canonical_letters
from .words import Word, idempotent_word, is_canonical, mirror

__all__ = [
    "Element",
    "from_word",
    "multiply",
    "identity",
    "zero",
    "generator",
    "idempotent",
    "content",
    "antiautomorphism",
    "zero_threshold",
    "prefix_before_one",
    "sort_key",
    "display",
]


@dataclass(frozen=True)
class Element:
    """A semigroup element, held as its canonical word."""

    word: Word

    def __post_init__(self) -> None:
        if not is_canonical(self.word):
            raise ValidationError(
                f"element word must be canonical, got '{self.word}'"
            )

    @property
    def rank(self) -> int:
        return self.word.rank

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def __str__(self) -> str:
        return str(self.word)


def from_word(w: Word) -> Element:
    """The element represented by an arbitrary word.

    >>> from .words import parse_word
    >>> str(from_word(parse_word("3 2 1 1", 3)))
    '3 2 1'
    """
    return Element(canonical_form(w))


def identity(rank: int) -> Element:
    """The unit: the element of the empty word."""
    return Element(Word((), rank))


def zero(rank: int) -> Element:
    """The absorbing element, whose canonical word is rank, rank-1, ..., 1.

    >>> str(zero(3))
    '3 2 1'
    >>> str(zero(1))
    '1'
    """
    return Element(Word(tuple(range(rank, 0, -1)), rank))


def generator(i: int, rank: int) -> Element:
    """The single-letter element for letter i."""
    return Element(Word((i,), rank))


def idempotent(members: Iterable[int], rank: int) -> Element:
    """The idempotent element of a letter set: its decreasing word."""
    return Element(idempotent_word(members, rank))


def multiply(x: Element, y: Element) -> Element:
    """Concatenate canonical words and re-canonicalize.

    Associative, with `identity` neutral and `zero` absorbing.

    >>> from .words import parse_word
    >>> str(multiply(generator(2, 2), from_word(parse_word("1 2", 2))))
    '2 1'
    """
    if x.rank != y.rank:
        raise ValidationError(f"rank mismatch: {x.rank} vs {y.rank}")
    return Element(Word(canonical_letters(x.word.letters + y.word.letters), x.rank))


def content(x: Element) -> frozenset[int]:
    """The set of letters appearing in the canonical form.

    content(x * y) = content(x) | content(y), and every subset of
    {1..rank} is the content of exactly one idempotent.
    """
    return frozenset(x.word.letters)


def antiautomorphism(x: Element) -> Element:
    """The order-reversing involution sending letter i to rank - i + 1.

    >>> str(antiautomorphism(generator(1, 3)))
    '3'
    >>> str(antiautomorphism(zero(3)))
    '3 2 1'
    """
    flipped = mirror(x.word)
    return from_word(Word(tuple(reversed(flipped.letters)), x.rank))


def zero_threshold(x: Element) -> int:
    """Least i in [0, rank] with x * idempotent({1..i}) equal to the zero.

    Returns 0 exactly on the zero element; rank is always enough because
    the full idempotent is itself the zero.
    """
    target = zero(x.rank)
    for i in range(x.rank + 1):
        if multiply(x, idempotent(range(1, i + 1), x.rank)) == target:
            return i
    raise InvariantError(
        f"multiplying '{x}' by the full decreasing idempotent did not give the zero"
    )


def prefix_before_one(x: Element) -> Element:
    """The element of the canonical-form prefix before the letter 1.

    Defined only when the canonical form contains the letter 1; it then
    contains it exactly once, so the split is unambiguous, and a prefix
    of a canonical word is itself canonical.
    """
    letters = x.word.letters
    if 1 not in letters:
        raise DomainError(
            "prefix before letter 1 undefined: canonical form contains no letter 1"
        )
    pos = letters.index(1)
    if 1 in letters[pos + 1:]:
        raise InvariantError(f"canonical form '{x}' contains letter 1 twice")
    return Element(Word(letters[:pos], x.rank))


def sort_key(x: Element) -> tuple[int, tuple[int, ...]]:
    """Length-lexicographic key: the package's deterministic element order."""
    return (len(x.word.letters), x.word.letters)


def display(x: Element) -> str:
    """Human-readable form: the canonical word, with the unit shown as "e"."""
    return str(x.word) or "e"
