"""Recognising cherries and reticulated cherries from a triple set alone."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional

from .errors import LabelOutsideUniverse, MalformedW, UniverseTooLargeForExhaustiveSearch
from .triples import TripleSet

PROPERTIES = ("W1", "W2", "W3", "W4", "W5")
DEFAULT_SEARCH_LIMIT = 16


@dataclass(frozen=True)
class CandidateCheck:
    """Outcome of :func:`check_candidate_set`; truthy iff every property held."""

    passed: tuple
    failed: Optional[str] = None
    witness: Optional[tuple] = None
    detail: str = ""

    def __bool__(self):
        return self.failed is None


@dataclass(frozen=True)
class CandidateSet:
    a: str
    b: str
    members: frozenset
    certificate: tuple = PROPERTIES


@dataclass(frozen=True)
class RecognizedCherry:
    """A cherry {a, b}, or a reticulated cherry with reticulation leaf ``b``.

    ``alternatives`` counts every candidate set valid for the same pair; it
    is 1 whenever the choice of ``candidate`` was forced.
    """

    kind: str  # "cherry" | "reticulated"
    a: str
    b: str
    candidate: Optional[CandidateSet] = None
    alternatives: int = field(default=0, compare=False)

    @property
    def is_reticulated(self) -> bool:
        return self.kind == "reticulated"


def _check_pair(R: TripleSet, a: str, b: str):
    for lab in (a, b):
        if lab not in R.universe:
            raise LabelOutsideUniverse(lab)
    if a == b:
        raise ValueError(f"a and b must differ, got {a!r} twice")


def is_cherry_by_triples(R: TripleSet, a: str, b: str) -> bool:
    """Every triple containing both a and b has {a, b} as its pair (vacuous if none)."""
    _check_pair(R, a, b)
    for x in R.universe:
        if x == a or x == b:
            continue
        if R.has(a, x, b) or R.has(b, x, a):
            return False
    return True


def check_candidate_set(R: TripleSet, a: str, b: str, W: Iterable[str]) -> CandidateCheck:
    """Test W1..W5 in order, stopping at the first failure."""
    _check_pair(R, a, b)
    W = frozenset(W)
    if not W:
        raise MalformedW("candidate set must be non-empty")
    for c in W:
        if c not in R.universe:
            raise LabelOutsideUniverse(c)
    if a in W or b in W:
        raise MalformedW("candidate set must avoid a and b")

    X = R.universe
    members = sorted(W)
    outside_b = sorted(X - W - {b})
    rest = sorted(X - W - {a, b})
    passed = []

    def fail(prop, witness, detail):
        return CandidateCheck(tuple(passed), prop, witness, detail)

    for c in members:
        for x in outside_b:
            if not R.has(b, c, x):
                return fail("W1", (c, x), f"{b}{c}|{x} not in R")
        if R.has(a, c, b):
            return fail("W1", (c, b), f"{a}{c}|{b} in R")
    passed.append("W1")

    for c, c2 in combinations(members, 2):
        if R.has(b, c, c2):
            return fail("W2", (c, c2), f"{b}{c}|{c2} in R")
        if R.has(b, c2, c):
            return fail("W2", (c2, c), f"{b}{c2}|{c} in R")
    passed.append("W2")

    for c in members:
        for x in rest:
            if R.has(c, x, a) != R.has(b, x, a):
                return fail("W3", (c, x), f"{c}{x}|{a} and {b}{x}|{a} disagree")
    passed.append("W3")

    for x in rest:
        for y in rest:
            if x == y or not R.has(b, x, y) or R.has(a, x, y):
                continue
            for c in members:
                if not R.has(c, x, y):
                    return fail("W4", (c, x, y), f"{b}{x}|{y} in R, {a}{x}|{y} not, {c}{x}|{y} not")
    passed.append("W4")

    for c in members:
        if all(R.has(a, c, x) for x in rest):
            for x in rest:
                if R.has(a, x, c):
                    return fail("W5", (c, x), f"{a}{x}|{c} in R")
                if R.has(a, x, b):
                    return fail("W5", (c, x), f"{a}{x}|{b} in R")
    passed.append("W5")

    return CandidateCheck(tuple(passed))


def _iter_candidate_sets(R: TripleSet, a: str, b: str, limit: int):
    _check_pair(R, a, b)
    if len(R.universe) > limit:
        raise UniverseTooLargeForExhaustiveSearch(len(R.universe), limit)
    pool = sorted(R.universe - {a, b})
    for size in range(1, len(pool) + 1):
        for members in combinations(pool, size):
            if check_candidate_set(R, a, b, members):
                yield CandidateSet(a, b, frozenset(members))


def find_candidate_sets(R: TripleSet, a: str, b: str,
                        limit: int = DEFAULT_SEARCH_LIMIT) -> list:
    """Every valid candidate set for (a, b), smallest first, then lexicographic."""
    return list(_iter_candidate_sets(R, a, b, limit))


def find_recognized_cherry(R: TripleSet,
                           limit: int = DEFAULT_SEARCH_LIMIT) -> Optional[RecognizedCherry]:
    """First cherry in lexicographic pair order, else the first reticulated cherry.

    Returns None when nothing is recognised.
    """
    X = sorted(R.universe)
    if len(X) < 2:
        return None
    if len(X) > limit:
        raise UniverseTooLargeForExhaustiveSearch(len(X), limit)
    mentioned = {lab for t in R.triples for lab in t}
    for a, b in combinations(X, 2):
        if (len(X) == 2 or a in mentioned or b in mentioned) and is_cherry_by_triples(R, a, b):
            return RecognizedCherry("cherry", a, b)
    for a in X:
        for b in X:
            if a == b:
                continue
            if not all(R.has(a, b, x) for x in X if x != a and x != b):
                continue
            found = find_candidate_sets(R, a, b, limit)
            if found:
                return RecognizedCherry("reticulated", a, b, found[0], len(found))
    return None
