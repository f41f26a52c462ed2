"""Words over the generator alphabet of Kiselman's semigroup.

Kiselman's semigroup K_n is the monoid with generators a_1, ..., a_n and
relations a_i^2 = a_i and a_i a_j a_i = a_j a_i a_j = a_i a_j for j < i.
This module supplies the raw substrate: finite words over the letters
1..n, the containment predicates the rewriting theory is phrased in, the
canonicality test, the mirror map, and the strictly decreasing idempotent
words.

A word is *canonical* when every factor that starts and ends with the
same letter i encloses both a letter larger than i and a letter smaller
than i.  Canonical words are the shortest representatives of semigroup
elements, exactly one per element, so the rest of the package identifies
elements with their canonical words.

Textual format, shared by the CLI and the cache files: space-separated
decimal letter indices ("3 2 1"), with the empty string for the empty
word.  Every word carries its rank so that mixing alphabets fails loudly
instead of silently reinterpreting letters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ValidationError

__all__ = [
    "Word",
    "word_from_indices",
    "parse_word",
    "concat",
    "is_subword",
    "is_quasi_subword",
    "is_canonical",
    "mirror",
    "idempotent_word",
    "occurrence_counts",
]


@dataclass(frozen=True)
class Word:
    """An immutable word over the letters 1..rank."""

    letters: tuple[int, ...]
    rank: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.rank < 1:
            raise ValidationError(f"rank must be >= 1, got {self.rank}")
        for pos, letter in enumerate(self.letters):
            if not 1 <= letter <= self.rank:
                raise ValidationError(
                    f"letter index {letter} at position {pos} "
                    f"out of range [1, {self.rank}]"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __str__(self) -> str:
        return " ".join(str(i) for i in self.letters)


def word_from_indices(indices: Iterable[int], rank: int) -> Word:
    """Build a word from an iterable of letter indices.

    >>> str(word_from_indices([2, 1], 2))
    '2 1'
    >>> str(word_from_indices([], 3))
    ''
    >>> word_from_indices([4], 3)
    Traceback (most recent call last):
        ...
    kiselman.errors.ValidationError: letter index 4 at position 0 out of range [1, 3]
    """
    return Word(tuple(indices), rank)


def parse_word(text: str, rank: int) -> Word:
    """Parse the textual word format: space-separated indices, "" for empty.

    >>> parse_word("3 2 1", 3).letters
    (3, 2, 1)
    >>> parse_word("", 3).letters
    ()
    """
    stripped = text.strip()
    if not stripped:
        return Word((), rank)
    try:
        indices = tuple(int(part) for part in stripped.split())
    except ValueError:
        raise ValidationError(
            f"cannot parse word text {text!r}: expected space-separated integers"
        ) from None
    return Word(indices, rank)


def _require_same_rank(u: Word, w: Word) -> None:
    if u.rank != w.rank:
        raise ValidationError(f"rank mismatch: {u.rank} vs {w.rank}")


def concat(u: Word, w: Word) -> Word:
    """Concatenation of two words over the same alphabet."""
    _require_same_rank(u, w)
    return Word(u.letters + w.letters, u.rank)


def is_subword(u: Word, w: Word) -> bool:
    """Is u a contiguous factor of w?  The empty word is a factor of everything.

    >>> is_subword(parse_word("1 2", 3), parse_word("3 1 2 1", 3))
    True
    >>> is_subword(parse_word("2 2", 2), parse_word("2 1 2", 2))
    False
    """
    _require_same_rank(u, w)
    if not u.letters:
        return True
    k = len(u.letters)
    return any(
        w.letters[i:i + k] == u.letters for i in range(len(w.letters) - k + 1)
    )


def is_quasi_subword(v: Word, w: Word) -> bool:
    """Is v a not-necessarily-contiguous subsequence of w?

    Reflexive and transitive; every factor is also a quasi-subword.

    >>> is_quasi_subword(parse_word("2 2", 2), parse_word("2 1 2", 2))
    True
    >>> is_quasi_subword(parse_word("1 2", 2), parse_word("2 1", 2))
    False
    """
    _require_same_rank(v, w)
    it = iter(w.letters)
    return all(letter in it for letter in v.letters)


def is_canonical(w: Word) -> bool:
    """Does every repeated-letter factor enclose a larger and a smaller letter?

    Checking consecutive occurrences of each letter suffices: a violating
    factor with another copy of the same letter inside contains a violating
    consecutive pair, because that inner copy is neither larger nor smaller
    than its own value.

    >>> is_canonical(parse_word("3 2 1", 3))
    True
    >>> is_canonical(parse_word("2 1 2", 3))
    False
    >>> is_canonical(parse_word("2 1 3 2", 3))
    True
    >>> is_canonical(parse_word("", 1))
    True
    """
    letters = w.letters
    last: dict[int, int] = {}
    for pos, i in enumerate(letters):
        prev = last.get(i)
        if prev is not None:
            gap = letters[prev + 1:pos]
            if not (any(g > i for g in gap) and any(g < i for g in gap)):
                return False
        last[i] = pos
    return True


def mirror(w: Word) -> Word:
    """Replace every letter i by rank - i + 1, keeping the order.

    An involution, and a word is canonical exactly when its mirror is.

    >>> str(mirror(parse_word("1 3", 3)))
    '3 1'
    >>> str(mirror(parse_word("2", 3)))
    '2'
    """
    return Word(tuple(w.rank - i + 1 for i in w.letters), w.rank)


def idempotent_word(members: Iterable[int], rank: int) -> Word:
    """The strictly decreasing word over a set of letters.

    These words are canonical and represent the idempotent elements; the
    full set {1..rank} gives the word of the zero element.

    >>> str(idempotent_word({1, 2, 3}, 3))
    '3 2 1'
    >>> str(idempotent_word(set(), 2))
    ''
    >>> str(idempotent_word({2}, 4))
    '2'
    """
    return Word(tuple(sorted(set(members), reverse=True)), rank)


def occurrence_counts(w: Word) -> dict[int, int]:
    """Multiplicity of every letter 1..rank in w; absent letters count 0.

    >>> occurrence_counts(parse_word("2 1 2", 2))
    {1: 1, 2: 2}
    >>> occurrence_counts(parse_word("", 3))
    {1: 0, 2: 0, 3: 0}
    """
    counts = dict.fromkeys(range(1, w.rank + 1), 0)
    for i in w.letters:
        counts[i] += 1
    return counts
