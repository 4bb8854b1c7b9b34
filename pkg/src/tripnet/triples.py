"""Rooted triples, displayed trees and the triple text format.

Display is decided through switchings: keep one in-arc per reticulation,
prune, suppress.  A rooted triple or 4-leaf tree is displayed by a network
exactly when it is displayed by one of its switching trees.
"""

from __future__ import annotations

import re
from itertools import combinations, product
from typing import Iterable, Iterator, NamedTuple

from .errors import LabelOutsideUniverse, TripleFormatError
from .network import Network, adjacency, cluster_set, simplify


class RootedTriple(NamedTuple):
    """``xy|z`` stored with x < y."""

    x: str
    y: str
    z: str

    @classmethod
    def of(cls, x: str, y: str, z: str) -> "RootedTriple":
        if len({x, y, z}) != 3:
            raise ValueError(f"triple needs three distinct labels, got {x}, {y}, {z}")
        return cls(x, y, z) if x < y else cls(y, x, z)

    @property
    def pair(self) -> frozenset:
        return frozenset((self.x, self.y))

    @property
    def labels(self) -> frozenset:
        return frozenset(self)

    def __str__(self):
        return f"{self.x} {self.y} | {self.z}"


class QuartetCaterpillar(NamedTuple):
    """``(((w,x),y),z)`` stored with w < x."""

    w: str
    x: str
    y: str
    z: str

    @classmethod
    def of(cls, w, x, y, z) -> "QuartetCaterpillar":
        return cls(w, x, y, z) if w < x else cls(x, w, y, z)

    def __str__(self):
        return f"((({self.w},{self.x}),{self.y}),{self.z})"


class TripleSet:
    """An immutable set of rooted triples over a leaf universe."""

    __slots__ = ("universe", "triples")

    def __init__(self, universe: Iterable[str], triples: Iterable = ()):
        self.universe = frozenset(universe)
        ts = frozenset(t if isinstance(t, RootedTriple) else RootedTriple.of(*t)
                       for t in triples)
        for t in ts:
            for lab in t:
                if lab not in self.universe:
                    raise LabelOutsideUniverse(lab)
        self.triples = ts

    def has(self, x: str, y: str, z: str) -> bool:
        """Is ``xy|z`` in the set (pair order irrelevant)?"""
        return ((x, y, z) if x < y else (y, x, z)) in self.triples

    def __contains__(self, t) -> bool:
        return self.has(*t)

    def __iter__(self) -> Iterator[RootedTriple]:
        return iter(sorted(self.triples))

    def __len__(self):
        return len(self.triples)

    def __eq__(self, other):
        if not isinstance(other, TripleSet):
            return NotImplemented
        return self.universe == other.universe and self.triples == other.triples

    def __hash__(self):
        return hash((self.universe, self.triples))

    def __repr__(self):
        return f"TripleSet({sorted(self.universe)}, {[str(t) for t in self]})"

    def sorted_universe(self) -> list:
        return sorted(self.universe)


# -- switchings ---------------------------------------------------------

def switchings(N: Network, dedupe: bool = True) -> Iterator[Network]:
    """Yield the trees obtained by keeping one in-arc per reticulation.

    With ``dedupe`` (the default) repeated trees are skipped, compared by
    their canonical extended Newick text.
    """
    from .newick import write_enewick

    rets = N.reticulations
    if not rets:
        yield N
        return
    seen = set()
    base = adjacency(N)
    labels = N.leaf_labels
    for choice in product((0, 1), repeat=len(rets)):
        kids = {v: list(cs) for v, cs in base.items()}
        for r, keep in zip(rets, choice):
            drop = N.parents(r)[1 - keep]
            kids[drop].remove(r)
        T = simplify(kids, labels, N.root, strict=False)
        if dedupe:
            key = write_enewick(T)
            if key in seen:
                continue
            seen.add(key)
        yield T


def _lca_depths(T: Network) -> dict:
    """Depth of lca(x, y) for every unordered label pair of a tree."""
    depth = {T.root: 0}
    for v in T.topological_order:
        for c in T.children(v):
            depth[c] = depth[v] + 1
    out = {}
    for v in T.vertices:
        kids = T.children(v)
        if len(kids) != 2:
            continue
        left, right = cluster_set(T, kids[0]), cluster_set(T, kids[1])
        d = depth[v]
        for x in left:
            for y in right:
                out[(x, y) if x < y else (y, x)] = d
    return out


def tree_triples(T: Network) -> set:
    """Triples of a tree: xy|z iff lca(x, y) lies strictly below lca(x, y, z)."""
    if T.reticulations:
        raise ValueError("tree_triples needs a network without reticulations")
    d = _lca_depths(T)
    out = set()
    for x, y, z in combinations(sorted(T.leaves), 3):
        dxy, dxz = d[(x, y)], d[(x, z)]
        if dxy > dxz:
            out.add(RootedTriple(x, y, z))
        elif dxz > dxy:
            out.add(RootedTriple(x, z, y))
        else:
            out.add(RootedTriple(y, z, x))
    return out


def rooted_triples(N: Network) -> TripleSet:
    """R(N): every rooted triple displayed by ``N``."""
    if len(N.leaves) < 3:
        return TripleSet(N.leaves)
    acc = set()
    for T in switchings(N):
        acc |= tree_triples(T)
    return TripleSet(N.leaves, acc)


def displays_triple(N: Network, t) -> bool:
    t = t if isinstance(t, RootedTriple) else RootedTriple.of(*t)
    for lab in t:
        if lab not in N.leaves:
            raise LabelOutsideUniverse(lab)
    for T in switchings(N, dedupe=False):
        d = _lca_depths(T)
        pair = d[(t.x, t.y)]
        if pair > d[tuple(sorted((t.x, t.z)))] and pair > d[tuple(sorted((t.y, t.z)))]:
            return True
    return False


def _quartets_of_tree(T: Network) -> set:
    d = _lca_depths(T)

    def depth(a, b):
        return d[(a, b) if a < b else (b, a)]

    out = set()
    for quad in combinations(sorted(T.leaves), 4):
        for z in quad:
            rest = [q for q in quad if q != z]
            top = max(depth(z, q) for q in rest)
            inner = min(depth(p, q) for p, q in combinations(rest, 2))
            if top < inner:
                # z hangs off the root of the restricted tree; rest is a triple
                a, b, c = rest
                dab, dac = depth(a, b), depth(a, c)
                if dab > dac:
                    out.add(QuartetCaterpillar.of(a, b, c, z))
                elif dac > dab:
                    out.add(QuartetCaterpillar.of(a, c, b, z))
                else:
                    out.add(QuartetCaterpillar.of(b, c, a, z))
                break
    return out


def quartet_caterpillars(N: Network) -> frozenset:
    """Q(N): displayed 4-leaf trees with exactly one cherry."""
    if len(N.leaves) < 4:
        return frozenset()
    acc = set()
    for T in switchings(N):
        acc |= _quartets_of_tree(T)
    return frozenset(acc)


def remove_leaf(R: TripleSet, b: str) -> TripleSet:
    """Drop ``b`` from the universe and every triple that mentions it."""
    if b not in R.universe:
        raise LabelOutsideUniverse(b)
    return TripleSet(R.universe - {b}, (t for t in R.triples if b not in t))


# -- text format --------------------------------------------------------

LABEL_RE = re.compile(r"^[A-Za-z0-9_.\-]+$")
_TRIPLE_RE = re.compile(r"^(\S+)\s+(\S+)\s*\|\s*(\S+)$")


def parse_triples(text: str) -> TripleSet:
    """Read ``x y | z`` lines; an optional ``leaves: ...`` line fixes the universe."""
    universe = None
    found = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.lower().startswith("leaves:"):
            if universe is not None:
                raise TripleFormatError("second 'leaves:' line", lineno)
            labels = line.split(":", 1)[1].split()
            for lab in labels:
                if not LABEL_RE.match(lab):
                    raise TripleFormatError(f"bad label {lab!r}", lineno)
            if len(set(labels)) != len(labels):
                raise TripleFormatError("duplicate label in 'leaves:' line", lineno)
            universe = set(labels)
            continue
        m = _TRIPLE_RE.match(line)
        if not m:
            raise TripleFormatError(f"cannot parse {raw!r}; expected 'x y | z'", lineno)
        x, y, z = m.groups()
        for lab in (x, y, z):
            if not LABEL_RE.match(lab):
                raise TripleFormatError(f"bad label {lab!r}", lineno)
        if len({x, y, z}) != 3:
            raise TripleFormatError("labels of a triple must be distinct", lineno)
        found.append((RootedTriple.of(x, y, z), lineno))
    if universe is None:
        universe = {lab for t, _ in found for lab in t}
    for t, lineno in found:
        for lab in t:
            if lab not in universe:
                raise TripleFormatError(f"label {lab!r} missing from 'leaves:' line", lineno)
    return TripleSet(universe, (t for t, _ in found))


def format_triples(R: TripleSet, header=None) -> str:
    """Render in the triple text format.

    ``header=None`` writes the ``leaves:`` line only when the universe could
    not be inferred from the triples themselves.
    """
    if header is None:
        header = {lab for t in R.triples for lab in t} != R.universe
    lines = []
    if header:
        lines.append("leaves: " + " ".join(R.sorted_universe()))
    lines.extend(str(t) for t in R)
    return "\n".join(lines) + "\n"
