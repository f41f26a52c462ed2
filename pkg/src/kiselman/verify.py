"""Machine-checkable verification suites behind the `verify` CLI command.

Each suite re-derives one structural fact at the requested rank and
reports pass/fail with counterexamples; nothing is trusted from earlier
runs.  Suites share one enumeration context so the expensive closures
are built once per invocation.  A suite that does not apply at the
requested rank reports itself as skipped with a reason; the report
always lists every selected suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import chain, combinations

from .algebra import (
    Element,
    antiautomorphism,
    content,
    generator,
    idempotent,
    multiply,
    sort_key,
    zero,
)
from .enumeration import (
    DEFAULT_ELEMENT_LIMIT,
    EnumerationResult,
    KNOWN_CARDINALITIES,
    enumerate_canonical_words,
    enumerate_elements,
    generated_submonoid,
    letter_bounds,
    parity_report,
    word_sort_key,
)
from .equations import (
    construct_right_zero_solutions,
    solution_multiply,
    solution_word,
    solve_right_zero,
    verify_zero_cancellation,
)
from .errors import InvariantError, ResourceLimitError, ValidationError
from .rewrite import all_normal_forms, canonical_form
from .words import Word, is_quasi_subword, occurrence_counts

__all__ = ["SuiteResult", "SUITE_NAMES", "run_suites"]

SUITE_NAMES = [
    "cardinality",
    "confluence",
    "idempotents",
    "content",
    "antiautomorphism",
    "word_bounds",
    "prefix_stability",
    "prefix_recovery",
    "zero_cancellation",
    "solution_structure",
    "prefix_bijection",
    "parity",
]

# Above these sizes the exhaustive scans switch to seeded sampling.
_EXHAUSTIVE_PAIR_RANK = 3
_EXHAUSTIVE_CANCELLATION_RANK = 4
_EXHAUSTIVE_SOLUTION_PAIRS = 200


@dataclass
class SuiteResult:
    name: str
    status: str  # "pass" | "fail" | "skip"
    checks: int
    failures: list[str] = field(default_factory=list)
    detail: dict = field(default_factory=dict)


@dataclass
class _Context:
    rank: int
    seed: int
    samples: int
    rng: random.Random
    result: EnumerationResult
    elements: list[Element]
    words: set[Word]
    submonoid: frozenset[Element]


def _result(name: str, checks: int, failures: list[str], detail: dict) -> SuiteResult:
    status = "fail" if failures else "pass"
    return SuiteResult(name, status, checks, failures[:10], detail)


def _skip(name: str, reason: str) -> SuiteResult:
    return SuiteResult(name, "skip", 0, [], {"reason": reason})


def _build_context(rank: int, seed: int, samples: int, limit: int) -> _Context:
    result = enumerate_elements(rank, limit)
    words = enumerate_canonical_words(rank)
    submonoid = generated_submonoid(rank, range(2, rank + 1), limit=limit)
    return _Context(
        rank=rank,
        seed=seed,
        samples=samples,
        rng=random.Random(seed),
        result=result,
        elements=result.sorted_elements(),
        words=words,
        submonoid=submonoid,
    )


def _random_word(ctx: _Context, max_len: int, letters: tuple[int, ...]) -> Word:
    length = ctx.rng.randint(0, max_len)
    return Word(
        tuple(ctx.rng.choice(letters) for _ in range(length)), ctx.rank
    )


def _subsets(universe: range):
    return chain.from_iterable(
        combinations(universe, k) for k in range(len(universe) + 1)
    )


def _suite_cardinality(ctx: _Context) -> SuiteResult:
    failures: list[str] = []
    closure_count = ctx.result.cardinality
    direct_count = len(ctx.words)
    checks = 2
    if closure_count != direct_count:
        failures.append(
            f"closure found {closure_count} elements, canonical-word "
            f"search found {direct_count}"
        )
    if {x.word for x in ctx.result.elements} != ctx.words:
        failures.append("the two enumeration routes disagree on the element sets")
    golden = KNOWN_CARDINALITIES.get(ctx.rank)
    if golden is not None:
        checks += 1
        if closure_count != golden:
            failures.append(
                f"cardinality {closure_count} differs from the "
                f"cross-validated value {golden}"
            )
    listings = {1: {"", "1"}, 2: {"", "1", "2", "1 2", "2 1"}}
    if ctx.rank in listings:
        checks += 1
        got = {str(w) for w in ctx.words}
        if got != listings[ctx.rank]:
            failures.append(f"rank-{ctx.rank} listing is {sorted(got)}")
    detail = {"closure": closure_count, "direct": direct_count}
    if golden is not None:
        detail["golden"] = golden
    return _result("cardinality", checks, failures, detail)


def _suite_confluence(ctx: _Context) -> SuiteResult:
    failures: list[str] = []
    max_len = 12
    alphabet = tuple(range(1, ctx.rank + 1))
    for _ in range(ctx.samples):
        w = _random_word(ctx, max_len, alphabet)
        normals = all_normal_forms(w)
        expected = canonical_form(w)
        if normals != {expected}:
            failures.append(
                f"word '{w}' has normal forms "
                f"{sorted(str(v) for v in normals)}, expected only '{expected}'"
            )
    return _result(
        "confluence", ctx.samples, failures, {"max_length": max_len}
    )


def _suite_idempotents(ctx: _Context) -> SuiteResult:
    failures: list[str] = []
    found = {x for x in ctx.elements if multiply(x, x) == x}
    expected = {
        idempotent(subset, ctx.rank) for subset in _subsets(range(1, ctx.rank + 1))
    }
    if len(expected) != 2 ** ctx.rank:
        failures.append("decreasing idempotent words are not pairwise distinct")
    if found != expected:
        extra = sorted(str(x) for x in found - expected)
        missing = sorted(str(x) for x in expected - found)
        failures.append(f"idempotents mismatch: extra={extra} missing={missing}")
    return _result(
        "idempotents",
        len(ctx.elements) + 1,
        failures,
        {"count": len(found), "expected": 2 ** ctx.rank},
    )


def _pair_stream(ctx: _Context, exhaustive: bool):
    if exhaustive:
        for x in ctx.elements:
            for y in ctx.elements:
                yield x, y
    else:
        for _ in range(ctx.samples):
            yield ctx.rng.choice(ctx.elements), ctx.rng.choice(ctx.elements)


def _suite_content(ctx: _Context) -> SuiteResult:
    failures: list[str] = []
    exhaustive = ctx.rank <= _EXHAUSTIVE_PAIR_RANK
    checked = 0
    for x, y in _pair_stream(ctx, exhaustive):
        checked += 1
        if content(multiply(x, y)) != content(x) | content(y):
            failures.append(f"content(x*y) != content(x) | content(y) at x='{x}' y='{y}'")
    contents = {content(x) for x in ctx.elements}
    if len(contents) != 2 ** ctx.rank:
        failures.append(
            f"{len(contents)} distinct contents, expected {2 ** ctx.rank}"
        )
    return _result(
        "content",
        checked + 1,
        failures,
        {"pairs": checked, "exhaustive": exhaustive},
    )


def _suite_antiautomorphism(ctx: _Context) -> SuiteResult:
    failures: list[str] = []
    tau = antiautomorphism
    checks = 0
    if tau(zero(ctx.rank)) != zero(ctx.rank):
        failures.append("the antiautomorphism moved the zero")
    checks += 1
    for i in range(1, ctx.rank + 1):
        checks += 1
        if tau(generator(i, ctx.rank)) != generator(ctx.rank - i + 1, ctx.rank):
            failures.append(f"generator {i} not sent to {ctx.rank - i + 1}")
    for x in ctx.elements:
        checks += 1
        if tau(tau(x)) != x:
            failures.append(f"not an involution at '{x}'")
    exhaustive = ctx.rank <= _EXHAUSTIVE_PAIR_RANK
    for x, y in _pair_stream(ctx, exhaustive):
        checks += 1
        if tau(multiply(x, y)) != multiply(tau(y), tau(x)):
            failures.append(f"product not reversed at x='{x}' y='{y}'")
    return _result(
        "antiautomorphism", checks, failures, {"exhaustive": exhaustive}
    )


def _suite_word_bounds(ctx: _Context) -> SuiteResult:
    failures: list[str] = []
    bounds = letter_bounds(ctx.rank)
    for w in sorted(ctx.words, key=word_sort_key):
        counts = occurrence_counts(w)
        for i, bound in bounds.items():
            if counts[i] > bound:
                failures.append(
                    f"canonical word '{w}' uses letter {i} "
                    f"{counts[i]} times, bound {bound}"
                )
    return _result(
        "word_bounds", len(ctx.words) * ctx.rank, failures, {"words": len(ctx.words)}
    )


def _suite_prefix_stability(ctx: _Context) -> SuiteResult:
    # can(w . 1 . u) = w . 1 . u* with u* a subsequence of u, for w a
    # canonical word avoiding letter 1 and u any word avoiding letter 1.
    if ctx.rank < 2:
        return _skip("prefix_stability", "needs letters above 1")
    failures: list[str] = []
    stems = sorted(
        (w for w in ctx.words if 1 not in w.letters), key=word_sort_key
    )
    alphabet = tuple(range(2, ctx.rank + 1))
    per_stem = max(1, ctx.samples // len(stems))
    cases = 0
    for w in stems:
        for _ in range(per_stem):
            u = _random_word(ctx, 8, alphabet)
            combined = Word(w.letters + (1,) + u.letters, ctx.rank)
            reduced = canonical_form(combined)
            head = w.letters + (1,)
            cases += 1
            if reduced.letters[:len(head)] != head:
                failures.append(
                    f"can('{combined}') = '{reduced}' lost the stem '{w}' + 1"
                )
                continue
            tail = Word(reduced.letters[len(head):], ctx.rank)
            if not is_quasi_subword(tail, u):
                failures.append(
                    f"can('{combined}') tail '{tail}' is not a subsequence of '{u}'"
                )
    return _result(
        "prefix_stability", cases, failures, {"stems": len(stems)}
    )


def _suite_prefix_recovery(ctx: _Context) -> SuiteResult:
    # If can(w . u) contains letter 1 for canonical w and u avoiding
    # letter 1, then w begins with the part up to and including that 1.
    if ctx.rank < 2:
        return _skip("prefix_recovery", "needs letters above 1")
    failures: list[str] = []
    alphabet = tuple(range(2, ctx.rank + 1))
    if ctx.rank <= _EXHAUSTIVE_PAIR_RANK:
        suffixes = [
            Word(p, ctx.rank)
            for length in range(0, 4)
            for p in _tuples(alphabet, length)
        ]
        pairs = [(w, u) for w in sorted(ctx.words, key=word_sort_key) for u in suffixes]
    else:
        pairs = [
            (ctx.rng.choice(ctx.elements).word, _random_word(ctx, 6, alphabet))
            for _ in range(ctx.samples)
        ]
    cases = 0
    for w, u in pairs:
        cases += 1
        reduced = canonical_form(Word(w.letters + u.letters, ctx.rank))
        if 1 not in reduced.letters:
            continue
        pos = reduced.letters.index(1)
        if 1 in reduced.letters[pos + 1:]:
            failures.append(f"canonical form '{reduced}' repeats letter 1")
            continue
        head = reduced.letters[:pos + 1]
        if w.letters[:pos + 1] != head:
            failures.append(
                f"can('{w}' + '{u}') = '{reduced}' but '{w}' does not "
                "begin with the part up to letter 1"
            )
    return _result("prefix_recovery", cases, failures, {})


def _tuples(alphabet: tuple[int, ...], length: int):
    if length == 0:
        yield ()
        return
    for rest in _tuples(alphabet, length - 1):
        for a in alphabet:
            yield rest + (a,)


def _suite_zero_cancellation(ctx: _Context) -> SuiteResult:
    exhaustive = ctx.rank <= _EXHAUSTIVE_CANCELLATION_RANK
    report = verify_zero_cancellation(
        ctx.rank,
        elements=ctx.result.elements,
        pair_samples=None if exhaustive else ctx.samples * 10,
        triple_samples=ctx.samples,
        seed=ctx.seed,
    )
    return _result(
        "zero_cancellation",
        report.checked_pairs + report.checked_triples,
        list(report.violations),
        {
            "pairs": report.checked_pairs,
            "triples": report.checked_triples,
            "exhaustive_pairs": exhaustive,
        },
    )


def _suite_solution_structure(ctx: _Context) -> SuiteResult:
    failures: list[str] = []
    checks = 0
    constructed = construct_right_zero_solutions(ctx.rank)
    brute = solve_right_zero(generator(1, ctx.rank), elements=ctx.result.elements)
    checks += 1
    if constructed.solutions != brute.solutions:
        failures.append("constructive and brute-force solution sets differ")
    checks += 1
    if len(constructed.solutions) != 1 + len(ctx.submonoid):
        failures.append(
            f"|solutions| = {len(constructed.solutions)}, "
            f"expected 1 + {len(ctx.submonoid)}"
        )
    if ctx.rank >= 2:
        checks += 1
        one_down = len(enumerate_canonical_words(ctx.rank - 1))
        if len(ctx.submonoid) != one_down:
            failures.append(
                f"submonoid avoiding letter 1 has {len(ctx.submonoid)} members, "
                f"rank {ctx.rank - 1} has {one_down} elements"
            )
    for x in sorted(ctx.submonoid, key=sort_key):
        checks += 1
        try:
            solution_word(x)
        except InvariantError as exc:
            failures.append(str(exc))
    ordered = constructed.sorted_solutions()
    if len(ordered) <= _EXHAUSTIVE_SOLUTION_PAIRS:
        pairs = [(x, y) for x in ordered for y in ordered]
    else:
        pairs = [
            (ctx.rng.choice(ordered), ctx.rng.choice(ordered))
            for _ in range(ctx.samples)
        ]
    for x, y in pairs:
        checks += 1
        try:
            product = solution_multiply(x, y, constructed)
        except InvariantError as exc:
            failures.append(str(exc))
            continue
        if product not in constructed.solutions:
            failures.append(
                f"product '{product}' of solutions escaped the solution set"
            )
    return _result(
        "solution_structure",
        checks,
        failures,
        {"solutions": len(constructed.solutions), "submonoid": len(ctx.submonoid)},
    )


def _suite_prefix_bijection(ctx: _Context) -> SuiteResult:
    from .algebra import prefix_before_one

    constructed = construct_right_zero_solutions(ctx.rank)
    containing_one = constructed.decomposition.containing_one
    failures: list[str] = []
    images = {prefix_before_one(x) for x in containing_one}
    if len(images) != len(containing_one):
        failures.append("prefix map is not injective on the solutions")
    if images != ctx.submonoid:
        failures.append(
            "prefix map does not cover the submonoid avoiding letter 1"
        )
    return _result(
        "prefix_bijection",
        len(containing_one) + 1,
        failures,
        {"solutions_with_one": len(containing_one)},
    )


def _suite_parity(ctx: _Context) -> SuiteResult:
    failures: list[str] = []
    report = parity_report(ctx.rank)
    checks = 2
    expected_parity = "even" if ctx.rank % 2 == 1 else "odd"
    if report.parity != expected_parity:
        failures.append(
            f"cardinality {report.cardinality} is {report.parity}, "
            f"rank {ctx.rank} demands {expected_parity}"
        )
    if report.cardinality != ctx.result.cardinality:
        failures.append("parity report disagrees with the closure enumeration")
    detail: dict = {"cardinality": report.cardinality, "parity": report.parity}
    if ctx.rank >= 3:
        checks += 3
        if not report.identity_holds:
            failures.append("the counting identity fails")
        if report.count_one_first != report.count_top_first:
            failures.append(
                f"extreme-letter halves differ: {report.count_one_first} "
                f"vs {report.count_top_first}"
            )
        if not report.mirror_pairing:
            failures.append("the mirror map does not pair the two halves")
        detail["one_first"] = report.count_one_first
        detail["top_first"] = report.count_top_first
    return _result("parity", checks, failures, detail)


_SUITES = {
    "cardinality": _suite_cardinality,
    "confluence": _suite_confluence,
    "idempotents": _suite_idempotents,
    "content": _suite_content,
    "antiautomorphism": _suite_antiautomorphism,
    "word_bounds": _suite_word_bounds,
    "prefix_stability": _suite_prefix_stability,
    "prefix_recovery": _suite_prefix_recovery,
    "zero_cancellation": _suite_zero_cancellation,
    "solution_structure": _suite_solution_structure,
    "prefix_bijection": _suite_prefix_bijection,
    "parity": _suite_parity,
}


def run_suites(
    rank: int,
    seed: int = 0,
    samples: int = 1000,
    limit: int = DEFAULT_ELEMENT_LIMIT,
    names: list[str] | None = None,
) -> dict:
    """Run verification suites and assemble a JSON-ready report.

    Every selected suite appears in the report, passed, failed or
    skipped.  A resource cap tripping mid-run aborts the remainder but
    the partial report is still returned, flagged as aborted.
    """
    selected = list(SUITE_NAMES) if names is None else list(names)
    for name in selected:
        if name not in _SUITES:
            raise ValidationError(f"unknown suite {name!r}")
    report: dict = {
        "rank": rank,
        "seed": seed,
        "samples": samples,
        "aborted": False,
        "all_passed": True,
        "suites": [],
    }
    try:
        ctx = _build_context(rank, seed, samples, limit)
    except ResourceLimitError as exc:
        report["aborted"] = True
        report["all_passed"] = False
        report["error"] = str(exc)
        return report
    for name in selected:
        try:
            outcome = _SUITES[name](ctx)
        except ResourceLimitError as exc:
            report["aborted"] = True
            report["all_passed"] = False
            report["error"] = str(exc)
            break
        except InvariantError as exc:
            outcome = SuiteResult(name, "fail", 0, [f"invariant violated: {exc}"], {})
        report["suites"].append(
            {
                "name": outcome.name,
                "status": outcome.status,
                "checks": outcome.checks,
                "failures": outcome.failures,
                "detail": outcome.detail,
            }
        )
        if outcome.status == "fail":
            report["all_passed"] = False
    return report
