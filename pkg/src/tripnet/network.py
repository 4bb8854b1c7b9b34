"""Binary rooted phylogenetic networks: construction, validation and structure.

A :class:`Network` is an immutable leaf-labelled DAG.  Vertex ids are opaque
hashables; only leaf labels carry identity across networks.  Everything in
this module is read-only once a network is built.
"""

from __future__ import annotations

import enum
from collections import deque
from functools import cached_property
from typing import Hashable, Iterable, Mapping, NamedTuple

from .errors import (
    DegreeViolation,
    DuplicateLabel,
    MultipleRoots,
    NetworkError,
    NotAcyclic,
    ParallelArc,
    UnknownVertex,
    UnlabeledLeaf,
    WouldCreateParallelArc,
)

Vertex = Hashable
LeafSet = frozenset


class VertexKind(enum.Enum):
    ROOT = "root"
    TREE = "tree"
    RETICULATION = "reticulation"
    LEAF = "leaf"


class NearPair(NamedTuple):
    u: Vertex
    v: Vertex
    comparable: bool


class ReticulatedCherry(NamedTuple):
    a: str
    b: str
    p_a: Vertex
    p_b: Vertex
    g_b: Vertex


class Network:
    """Validated binary phylogenetic network.  Build with :func:`build_network`."""

    def __init__(self, vertices, children, parents, labels, root):
        # trusted constructor: callers go through build_network
        self._vertices: tuple = vertices
        self._children: dict = children
        self._parents: dict = parents
        self._labels: dict = labels
        self._leaf_of: dict = {lab: v for v, lab in labels.items()}
        self.root = root

    def __repr__(self):
        return (f"<Network |X|={len(self._labels)} "
                f"reticulations={len(self.reticulations)} vertices={len(self._vertices)}>")

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @cached_property
    def arcs(self) -> tuple:
        return tuple((u, c) for u in self._vertices for c in self._children[u])

    @cached_property
    def leaves(self) -> LeafSet:
        """The leaf set X."""
        return frozenset(self._leaf_of)

    @property
    def leaf_labels(self) -> Mapping:
        return dict(self._labels)

    def __contains__(self, v) -> bool:
        return v in self._children

    def _check(self, v):
        if v not in self._children:
            raise UnknownVertex(v)

    def children(self, v) -> tuple:
        self._check(v)
        return self._children[v]

    def parents(self, v) -> tuple:
        self._check(v)
        return self._parents[v]

    def label(self, v):
        """Leaf label of ``v``, or None for internal vertices."""
        self._check(v)
        return self._labels.get(v)

    def leaf(self, label: str):
        """Vertex carrying ``label``."""
        try:
            return self._leaf_of[label]
        except KeyError:
            from .errors import LabelOutsideUniverse
            raise LabelOutsideUniverse(label) from None

    def is_leaf(self, v) -> bool:
        self._check(v)
        return v in self._labels

    def kind(self, v) -> VertexKind:
        return vertex_kind(self, v)

    @cached_property
    def reticulations(self) -> tuple:
        return tuple(v for v in self._vertices if len(self._parents[v]) == 2)

    @cached_property
    def tree_vertices(self) -> tuple:
        return tuple(v for v in self._vertices
                     if len(self._parents[v]) == 1 and len(self._children[v]) == 2)

    @cached_property
    def order(self) -> dict:
        """Position of every vertex in ``vertices``; used for deterministic sorting."""
        return {v: i for i, v in enumerate(self._vertices)}

    @cached_property
    def topological_order(self) -> tuple:
        indeg = {v: len(self._parents[v]) for v in self._vertices}
        queue = deque(v for v in self._vertices if indeg[v] == 0)
        out = []
        while queue:
            v = queue.popleft()
            out.append(v)
            for c in self._children[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    queue.append(c)
        return tuple(out)

    # -- clusters, reachability -----------------------------------------

    @cached_property
    def _clusters(self) -> dict:
        clusters = {}
        for v in reversed(self.topological_order):
            if v in self._labels:
                clusters[v] = frozenset((self._labels[v],))
            else:
                acc = frozenset()
                for c in self._children[v]:
                    acc |= clusters[c]
                clusters[v] = acc
        return clusters

    @cached_property
    def _descendants(self) -> dict:
        desc = {}
        for v in reversed(self.topological_order):
            acc = {v}
            for c in self._children[v]:
                acc |= desc[c]
            desc[v] = frozenset(acc)
        return desc

    def is_ancestor(self, u, v) -> bool:
        """True if there is a directed path from ``u`` to ``v`` (u == v included)."""
        self._check(u)
        self._check(v)
        return v in self._descendants[u]

    def _reachable_leaves_avoiding(self, banned) -> frozenset:
        if self.root == banned:
            return frozenset()
        seen = {self.root}
        stack = [self.root]
        while stack:
            v = stack.pop()
            for c in self._children[v]:
                if c != banned and c not in seen:
                    seen.add(c)
                    stack.append(c)
        return frozenset(self._labels[v] for v in seen if v in self._labels)

    @cached_property
    def _visibility(self) -> dict:
        return {v: self._clusters[v] - self._reachable_leaves_avoiding(v)
                for v in self._vertices}


def build_network(arcs: Iterable, leaf_labels: Mapping, vertices: Iterable = ()) -> Network:
    """Validate ``arcs`` and ``leaf_labels`` and return a :class:`Network`.

    ``leaf_labels`` maps out-degree-0 vertices to label strings.  A single
    labelled vertex with no arcs is the network on one leaf.  ``vertices``
    may list extra ids (only useful for that single-vertex case); vertex
    order follows first appearance and is kept for deterministic output.
    """
    order: dict = {}
    for v in vertices:
        order.setdefault(v, None)
    arc_list = []
    seen_arcs = set()
    for u, c in arcs:
        if (u, c) in seen_arcs:
            raise ParallelArc((u, c))
        if u == c:
            raise NotAcyclic(u)
        seen_arcs.add((u, c))
        arc_list.append((u, c))
        order.setdefault(u, None)
        order.setdefault(c, None)
    for v in leaf_labels:
        order.setdefault(v, None)
    verts = tuple(order)
    if not verts:
        raise NetworkError("network has no vertices")

    children = {v: [] for v in verts}
    parents = {v: [] for v in verts}
    for u, c in arc_list:
        children[u].append(c)
        parents[c].append(u)

    labels = {}
    used = set()
    for v, lab in leaf_labels.items():
        if not isinstance(lab, str) or not lab:
            raise NetworkError(f"label of {v!r} must be a non-empty string")
        if lab in used:
            raise DuplicateLabel(lab)
        used.add(lab)
        labels[v] = lab

    roots = [v for v in verts if not parents[v]]
    if not roots:
        raise NotAcyclic(verts[0])
    if len(roots) > 1:
        raise MultipleRoots(roots)
    root = roots[0]

    # Kahn's algorithm; leftovers lie on or below a cycle
    indeg = {v: len(parents[v]) for v in verts}
    queue = deque([root])
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for c in children[v]:
            indeg[c] -= 1
            if indeg[c] == 0:
                queue.append(c)
    if seen != len(verts):
        raise NotAcyclic(next(v for v in verts if indeg[v] > 0))

    for v in verts:
        indeg, outdeg = len(parents[v]), len(children[v])
        if v in labels:
            if outdeg != 0:
                raise DegreeViolation(v, indeg, outdeg, "labelled vertex is not a leaf")
            if indeg != 1 and not (v == root and len(verts) == 1):
                raise DegreeViolation(v, indeg, outdeg, "leaf must have in-degree 1")
        elif outdeg == 0:
            raise UnlabeledLeaf(v)
        elif v == root:
            if outdeg != 2:
                raise DegreeViolation(v, indeg, outdeg, "root must have out-degree 2")
        elif (indeg, outdeg) not in ((1, 2), (2, 1)):
            raise DegreeViolation(v, indeg, outdeg)

    return Network(
        verts,
        {v: tuple(children[v]) for v in verts},
        {v: tuple(parents[v]) for v in verts},
        labels,
        root,
    )


def single_leaf_network(label: str, vertex=0) -> Network:
    return build_network([], {vertex: label})


def vertex_kind(N: Network, v) -> VertexKind:
    N._check(v)
    if v in N._labels:
        return VertexKind.LEAF
    if v == N.root:
        return VertexKind.ROOT
    if len(N._parents[v]) == 2:
        return VertexKind.RETICULATION
    return VertexKind.TREE


def cluster_set(N: Network, v) -> LeafSet:
    """Labels of the leaves reachable from ``v``."""
    N._check(v)
    return N._clusters[v]


def visibility_set(N: Network, v) -> LeafSet:
    """Leaves every root path to which passes through ``v``.

    Computed by deleting ``v`` and checking which leaves the root can still
    reach; no dominator tree.
    """
    N._check(v)
    return N._visibility[v]


# -- tree-child characterisations ---------------------------------------

def _is_tree_or_leaf(N: Network, v) -> bool:
    return len(N._parents[v]) == 1


def is_tree_child(N: Network) -> bool:
    return all(any(_is_tree_or_leaf(N, c) for c in N._children[v])
               for v in N._vertices if N._children[v])


def sibling_reticulation_pairs(N: Network) -> list:
    """Pairs of reticulations that share a parent."""
    pairs = []
    for p in N._vertices:
        rets = [c for c in N._children[p] if len(N._parents[c]) == 2]
        if len(rets) == 2:
            pairs.append(tuple(sorted(rets, key=N.order.__getitem__)))
    return pairs


def stack_reticulation_pairs(N: Network) -> list:
    """(upper, lower) pairs where a reticulation is the parent of a reticulation."""
    return [(r, c) for r in N.reticulations for c in N._children[r]
            if len(N._parents[c]) == 2]


def all_vertices_visible(N: Network) -> bool:
    return all(N._visibility[v] for v in N._vertices)


def shortcuts(N: Network) -> list:
    """Reticulation arcs (u, v) for which another directed u-v path exists."""
    out = []
    for v in N.reticulations:
        for u in N._parents[v]:
            if any(c != v and v in N._descendants[c] for c in N._children[u]):
                out.append((u, v))
    return out


def is_normal(N: Network) -> bool:
    return is_tree_child(N) and not shortcuts(N)


# -- near reticulations -------------------------------------------------

def _comparable(N: Network, u, v) -> bool:
    return v in N._descendants[u] or u in N._descendants[v]


def _near_sibling_witnesses(N: Network):
    # t may be the root: near-sibling patterns with t at the root behave
    # exactly like those lower down
    for t in N._vertices:
        kids = N._children[t]
        if len(kids) != 2:
            continue
        for v, s in (kids, kids[::-1]):
            if len(N._parents[v]) != 2:
                continue
            if len(N._parents[s]) != 1 or len(N._children[s]) != 2:
                continue
            for u in N._children[s]:
                if len(N._parents[u]) == 2 and u != v:
                    yield t, s, u, v


def near_sibling_pairs(N: Network) -> list:
    """(u, v, comparable): v is a child of t and u is a child of a tree-vertex child of t."""
    out = []
    seen = set()
    for _t, _s, u, v in _near_sibling_witnesses(N):
        if (u, v) not in seen:
            seen.add((u, v))
            out.append(NearPair(u, v, _comparable(N, u, v)))
    return out


def near_stack_pairs(N: Network) -> list:
    """(u, v, comparable): the child of reticulation u is a tree vertex parent of reticulation v."""
    out = []
    for u in N.reticulations:
        (c,) = N._children[u]
        if len(N._parents[c]) != 1 or len(N._children[c]) != 2:
            continue
        for v in N._children[c]:
            if len(N._parents[v]) == 2:
                out.append(NearPair(u, v, True))
    return out


def has_near_reticulations(N: Network) -> bool:
    return bool(near_stack_pairs(N)) or next(_near_sibling_witnesses(N), None) is not None


# -- cherries -----------------------------------------------------------

def cherries(N: Network) -> list:
    """Sorted label pairs (a, b) of leaves sharing a parent."""
    out = []
    for p in N._vertices:
        kids = N._children[p]
        if len(kids) == 2 and all(c in N._labels for c in kids):
            out.append(tuple(sorted(N._labels[c] for c in kids)))
    return sorted(out)


def reticulated_cherries(N: Network) -> list:
    """Every (a, b, p_a, p_b, g_b) with b's parent p_b a reticulation and p_a a parent of p_b."""
    out = []
    for v, b in N._labels.items():
        if v == N.root:
            continue
        (p_b,) = N._parents[v]
        if len(N._parents[p_b]) != 2:
            continue
        for p_a in N._parents[p_b]:
            others = [c for c in N._children[p_a] if c != p_b]
            if len(others) == 1 and others[0] in N._labels:
                g_b = next(p for p in N._parents[p_b] if p != p_a)
                out.append(ReticulatedCherry(N._labels[others[0]], b, p_a, p_b, g_b))
    out.sort(key=lambda rc: (rc.a, rc.b))
    return out


# -- graph surgery ------------------------------------------------------

def simplify(children: Mapping, labels: Mapping, root, *, strict: bool = True) -> Network:
    """Clean up a mutable adjacency map and build a Network from it.

    Removes unlabelled sinks, splices out vertices of in-degree 1 and
    out-degree 1, and drops a root left with a single child.  With
    ``strict``, a splice that would duplicate an existing arc raises
    :class:`WouldCreateParallelArc`.
    """
    kids = {v: list(cs) for v, cs in children.items()}
    pars = {v: [] for v in kids}
    for v, cs in kids.items():
        for c in cs:
            pars.setdefault(c, []).append(v)
            kids.setdefault(c, [])

    # drop everything unreachable from the root
    seen = {root}
    stack = [root]
    while stack:
        v = stack.pop()
        for c in kids[v]:
            if c not in seen:
                seen.add(c)
                stack.append(c)
    for v in [v for v in kids if v not in seen]:
        for c in kids.pop(v):
            if c in pars:
                pars[c].remove(v)
        pars.pop(v, None)

    stack = [v for v in kids if not kids[v] and v not in labels]
    while stack:
        v = stack.pop()
        if v not in kids or kids[v] or v in labels:
            continue
        for p in pars.pop(v):
            kids[p].remove(v)
            if not kids[p] and p not in labels:
                stack.append(p)
        del kids[v]
        if v == root:
            raise NetworkError("no labelled leaf reachable from the root")

    changed = True
    while changed:
        changed = False
        for v in list(kids):
            if v not in kids:
                continue
            if v == root:
                if len(kids[v]) == 1 and v not in labels:
                    (c,) = kids.pop(v)
                    pars[c].remove(v)
                    del pars[v]
                    root = c
                    changed = True
                continue
            if len(pars[v]) == 1 and len(kids[v]) == 1:
                (p,) = pars[v]
                (c,) = kids[v]
                if c in kids[p]:
                    if strict:
                        raise WouldCreateParallelArc((p, c))
                    continue
                kids[p][kids[p].index(v)] = c
                pars[c][pars[c].index(v)] = p
                del kids[v], pars[v]
                changed = True

    arcs = [(v, c) for v in kids for c in kids[v]]
    return build_network(arcs, {v: lab for v, lab in labels.items() if v in kids},
                         vertices=list(kids))


def adjacency(N: Network) -> dict:
    """Mutable copy of the children map."""
    return {v: list(N._children[v]) for v in N._vertices}


def fresh_vertex_factory(N: Network):
    """Return a callable yielding vertex ids not used in ``N``."""
    used = set(N._vertices)
    ints = [v for v in used if isinstance(v, int) and not isinstance(v, bool)]
    counter = [max(ints) + 1 if ints else 0]

    def fresh():
        while counter[0] in used:
            counter[0] += 1
        v = counter[0]
        used.add(v)
        counter[0] += 1
        return v

    return fresh


def relabel_vertices(N: Network, mapping: Mapping) -> Network:
    """Same network with internal ids renamed by ``mapping`` (missing ids kept)."""
    f = lambda v: mapping.get(v, v)  # noqa: E731
    return build_network([(f(u), f(c)) for u, c in N.arcs],
                         {f(v): lab for v, lab in N._labels.items()},
                         vertices=[f(v) for v in N._vertices])


def relabel_leaves(N: Network, mapping: Mapping) -> Network:
    """Same network with leaf labels renamed by ``mapping`` (missing labels kept)."""
    labels = {v: mapping.get(lab, lab) for v, lab in N._labels.items()}
    return build_network(N.arcs, labels, vertices=N._vertices)
