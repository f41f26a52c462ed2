"""The one-letter deletion relation and canonical forms.

A word rewrites in one step by deleting one of two equal letters i when
every letter strictly between them is smaller (a *right deletion*: the
right copy goes) or every letter strictly between them is larger (a
*left deletion*: the left copy goes).  Adjacent equal letters satisfy
both conditions vacuously, so they admit both deletion kinds.

Iterating deletions always terminates, every deletion shortening the
word by one, and the endpoint does not depend on the order in which
deletions were applied; that unique fixpoint is the canonical form.
`canonical_form` commits to one deterministic order so traces are
reproducible byte for byte, while `all_normal_forms` deliberately
follows every maximal deletion sequence and reports every endpoint,
which makes it the independent oracle the tests use to confirm that
the endpoint really is unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .errors import ResourceLimitError, ValidationError
from .words import Word

__all__ = [
    "ReductionKind",
    "Reduction",
    "ReductionTrace",
    "one_step_reductions",
    "canonical_form",
    "canonical_letters",
    "all_normal_forms",
    "reduction_trace",
    "DEFAULT_NODE_BUDGET",
]

DEFAULT_NODE_BUDGET = 1_000_000


class ReductionKind(Enum):
    RIGHT_DELETION = "RightDeletion"
    LEFT_DELETION = "LeftDeletion"


@dataclass(frozen=True)
class Reduction:
    """One deletion step, with 0-based positions into the word it acts on.

    A right deletion keeps the left copy (kept < removed); a left
    deletion keeps the right copy (removed < kept).
    """

    kind: ReductionKind
    letter: int
    kept_position: int
    removed_position: int

    def describe(self) -> str:
        return (
            f"{self.kind.value} letter={self.letter} "
            f"keep={self.kept_position} remove={self.removed_position}"
        )


@dataclass(frozen=True)
class ReductionTrace:
    """A deletion chain from a source word down to its canonical form."""

    source: Word
    steps: tuple[tuple[Reduction, Word], ...]

    @property
    def final(self) -> Word:
        return self.steps[-1][1] if self.steps else self.source


def _redexes(letters: tuple[int, ...]) -> Iterator[tuple[ReductionKind, int, int, int]]:
    """Yield (kind, letter, kept, removed) for every applicable deletion.

    Only consecutive occurrences of a letter can form a redex: a copy of
    the letter inside the gap is neither smaller nor larger than its own
    value, so it defeats both deletion conditions.  Pairs are scanned by
    the position of their left copy, right deletion checked first, and
    that order is what makes `canonical_form` deterministic.
    """
    for p, i in enumerate(letters):
        q = None
        for r in range(p + 1, len(letters)):
            if letters[r] == i:
                q = r
                break
        if q is None:
            continue
        gap = letters[p + 1:q]
        if all(g < i for g in gap):
            yield ReductionKind.RIGHT_DELETION, i, p, q
        if all(g > i for g in gap):
            yield ReductionKind.LEFT_DELETION, i, q, p


def one_step_reductions(w: Word) -> set[tuple[Reduction, Word]]:
    """Every word reachable from w by a single deletion, with its witness.

    Empty exactly when w is canonical.  Adjacent equal letters admit both
    deletion kinds, so two witnesses may share one resulting word:

    >>> from .words import parse_word
    >>> sorted(str(v) for _, v in one_step_reductions(parse_word("1 1", 1)))
    ['1', '1']
    >>> [(r.kind.value, str(v)) for r, v in one_step_reductions(parse_word("2 1 2", 2))]
    [('RightDeletion', '2 1')]
    >>> [(r.kind.value, str(v)) for r, v in one_step_reductions(parse_word("1 2 1", 2))]
    [('LeftDeletion', '2 1')]
    >>> one_step_reductions(parse_word("3 2 1", 3))
    set()
    """
    out: set[tuple[Reduction, Word]] = set()
    for kind, letter, kept, removed in _redexes(w.letters):
        shorter = Word(w.letters[:removed] + w.letters[removed + 1:], w.rank)
        out.add((Reduction(kind, letter, kept, removed), shorter))
    return out


def canonical_letters(letters: tuple[int, ...]) -> tuple[int, ...]:
    """Tuple-level canonical form; the hot path used by enumeration."""
    current = letters
    while True:
        redex = next(_redexes(current), None)
        if redex is None:
            return current
        removed = redex[3]
        current = current[:removed] + current[removed + 1:]


def canonical_form(w: Word) -> Word:
    """The unique shortest word representing the same semigroup element.

    The deletion order cannot change the answer; this implementation
    always applies the first redex found by the left-to-right pair scan,
    preferring right deletion on a pair that admits both kinds.

    >>> from .words import parse_word
    >>> str(canonical_form(parse_word("2 1 2", 2)))
    '2 1'
    >>> str(canonical_form(parse_word("1 2 1", 2)))
    '2 1'
    >>> str(canonical_form(parse_word("3 2 1 2", 3)))
    '3 2 1'
    >>> str(canonical_form(parse_word("", 2)))
    ''
    """
    return Word(canonical_letters(w.letters), w.rank)


def reduction_trace(w: Word) -> ReductionTrace:
    """The deterministic deletion chain from w down to its canonical form.

    The chain has exactly len(w) - len(canonical_form(w)) steps and its
    last word is the canonical form.
    """
    steps: list[tuple[Reduction, Word]] = []
    current = w
    while True:
        redex = next(_redexes(current.letters), None)
        if redex is None:
            return ReductionTrace(w, tuple(steps))
        kind, letter, kept, removed = redex
        current = Word(
            current.letters[:removed] + current.letters[removed + 1:], current.rank
        )
        steps.append((Reduction(kind, letter, kept, removed), current))


def all_normal_forms(w: Word, node_budget: int = DEFAULT_NODE_BUDGET) -> set[Word]:
    """Endpoints of every maximal deletion sequence starting at w.

    Visited words are deduplicated, so the search walks a DAG rather
    than a tree.  Once more than node_budget distinct words have been
    visited a ResourceLimitError is raised; that is a resource failure,
    never a wrong answer.  Confluence promises a singleton result, but
    this function must not assume it: it is the oracle that checks it.
    """
    if node_budget < 1:
        raise ValidationError(f"node budget must be >= 1, got {node_budget}")
    seen: set[tuple[int, ...]] = {w.letters}
    stack: list[tuple[int, ...]] = [w.letters]
    normals: set[tuple[int, ...]] = set()
    while stack:
        current = stack.pop()
        successors = {
            current[:removed] + current[removed + 1:]
            for _, _, _, removed in _redexes(current)
        }
        if not successors:
            normals.add(current)
            continue
        for nxt in successors:
            if nxt in seen:
                continue
            if len(seen) >= node_budget:
                raise ResourceLimitError(
                    f"normal-form search visited more than "
                    f"{node_budget} distinct words"
                )
            seen.add(nxt)
            stack.append(nxt)
    return {Word(letters, w.rank) for letters in normals}
