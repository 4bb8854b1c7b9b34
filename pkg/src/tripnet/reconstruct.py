"""Cherry and reticulated-cherry reductions, their inverses, and reconstruction
of a network from its rooted triples."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import (
    AmbiguousAttachment,
    LabelClash,
    LabelOutsideUniverse,
    NetworkError,
    NoVisibilityMatch,
    NotACherry,
    NotAReticulatedCherry,
    NotRealizableOrOutOfClass,
)
from .network import (
    Network,
    adjacency,
    build_network,
    cherries,
    fresh_vertex_factory,
    reticulated_cherries,
    simplify,
    single_leaf_network,
    visibility_set,
)
from .recognition import DEFAULT_SEARCH_LIMIT, find_recognized_cherry
from .triples import TripleSet, remove_leaf, rooted_triples

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "cherry" | "reticulated"
    a: str
    b: str
    members: Optional[frozenset] = None
    alternatives: int = field(default=0, compare=False)

    def describe(self) -> str:
        if self.kind == "cherry":
            return f"cherry {{{self.a},{self.b}}}"
        return (f"reticulated cherry {{{self.a},{self.b}}} (reticulation leaf {self.b}, "
                f"W={{{','.join(sorted(self.members))}}})")


@dataclass
class ReconstructionResult:
    network: Network
    steps: list
    verified: bool
    stages: list = field(default_factory=list)
    notes: list = field(default_factory=list)


# -- reductions ---------------------------------------------------------

def _drop(N: Network, doomed: Iterable) -> dict:
    doomed = set(doomed)
    kids = adjacency(N)
    for v in doomed:
        del kids[v]
    for v in kids:
        kids[v] = [c for c in kids[v] if c not in doomed]
    return kids


def reduce_cherry(N: Network, a: str, b: str) -> Network:
    """Delete leaf ``b`` of cherry {a, b} and suppress its parent."""
    va, vb = N.leaf(a), N.leaf(b)
    if va == vb or va == N.root or N.parents(va) != N.parents(vb):
        raise NotACherry(f"{{{a},{b}}} is not a cherry")
    labels = {v: lab for v, lab in N.leaf_labels.items() if v != vb}
    return simplify(_drop(N, [vb]), labels, N.root)


def reduce_reticulated_cherry(N: Network, a: str, b: str) -> Network:
    """Delete reticulation leaf ``b`` and its parent, then suppress."""
    va, vb = N.leaf(a), N.leaf(b)
    if va == vb or va == N.root or vb == N.root:
        raise NotAReticulatedCherry(f"{{{a},{b}}} is not a reticulated cherry")
    (p_b,) = N.parents(vb)
    (p_a,) = N.parents(va)
    if len(N.parents(p_b)) != 2 or p_a not in N.parents(p_b):
        raise NotAReticulatedCherry(
            f"{{{a},{b}}} is not a reticulated cherry with reticulation leaf {b}")
    labels = {v: lab for v, lab in N.leaf_labels.items() if v != vb}
    return simplify(_drop(N, [vb, p_b]), labels, N.root)


# -- attachments --------------------------------------------------------

def _two_leaf(a: str, b: str) -> Network:
    return build_network([(0, 1), (0, 2)], {1: a, 2: b})


def _subdivide(kids: dict, parent, child, mid):
    kids[parent][kids[parent].index(child)] = mid
    kids[mid] = [child]


def attach_cherry(N: Network, a: str, b: str) -> Network:
    """Subdivide the arc into leaf ``a`` and hang a new leaf ``b`` there."""
    if b in N.leaves:
        raise LabelClash(b)
    va = N.leaf(a)
    fresh = fresh_vertex_factory(N)
    s, vb = fresh(), fresh()
    kids = adjacency(N)
    labels = dict(N.leaf_labels)
    labels[vb] = b
    if va == N.root:
        kids[s] = [va, vb]
    else:
        (p,) = N.parents(va)
        _subdivide(kids, p, va, s)
        kids[s].append(vb)
    kids[vb] = []
    return build_network([(u, c) for u in kids for c in kids[u]], labels)


def attachment_targets(N: Network, members: Iterable[str]) -> list:
    """Vertices whose visibility set equals ``members``, topmost first."""
    members = frozenset(members)
    U = [v for v in N.vertices if visibility_set(N, v) == members]
    U.sort(key=lambda v: (sum(1 for w in U if w != v and N.is_ancestor(w, v)), N.order[v]))
    return U


def attach_reticulated_cherry(N: Network, a: str, b: str, members: Iterable[str],
                              notes: Optional[list] = None) -> Network:
    """Inverse of :func:`reduce_reticulated_cherry`.

    The new reticulation gets one parent on the arc into ``a`` and the other
    on the arc into the unique vertex whose visibility set is ``members``.
    If that vertex is the root a new root is created above it.
    """
    members = frozenset(members)
    if b in N.leaves:
        raise LabelClash(b)
    va = N.leaf(a)
    for c in members:
        if c not in N.leaves:
            raise LabelOutsideUniverse(c)
    U = attachment_targets(N, members)
    if not U:
        raise NoVisibilityMatch(members)
    if len(U) > 1:
        raise AmbiguousAttachment(members, U)
    (u,) = U
    if len(N.parents(u)) == 2:
        raise AmbiguousAttachment(members, U)

    fresh = fresh_vertex_factory(N)
    p_a, g_b, p_b, vb = fresh(), fresh(), fresh(), fresh()
    kids = adjacency(N)
    labels = dict(N.leaf_labels)
    labels[vb] = b

    if va == N.root:
        kids[p_a] = [va]
    else:
        _subdivide(kids, N.parents(va)[0], va, p_a)
    if u == N.root:
        kids[g_b] = [u]
        if notes is not None:
            notes.append(f"attached {b}: target for W={sorted(members)} is the root; new root added")
        log.debug("attaching %s above the root", b)
    else:
        _subdivide(kids, N.parents(u)[0], u, g_b)
    kids[p_a].append(p_b)
    kids[g_b].append(p_b)
    kids[p_b] = [vb]
    kids[vb] = []
    return build_network([(x, c) for x in kids for c in kids[x]], labels)


# -- reconstruction -----------------------------------------------------

def _base_network(labels: list) -> Network:
    if len(labels) == 1:
        return single_leaf_network(labels[0])
    return _two_leaf(*labels)


def reconstruct_from_triples(R: TripleSet,
                             limit: int = DEFAULT_SEARCH_LIMIT) -> ReconstructionResult:
    """Rebuild a network from its complete triple set.

    Peels off recognised cherries and reticulated cherries down to two
    leaves, replays the attachments in reverse, and finally checks that the
    result displays exactly ``R``.  Raises :class:`NotRealizableOrOutOfClass`
    when any stage fails.
    """
    if not R.universe:
        raise NotRealizableOrOutOfClass("empty leaf set")
    steps = []
    cur = R
    while len(cur.universe) > 2:
        rec = find_recognized_cherry(cur, limit)
        if rec is None:
            raise NotRealizableOrOutOfClass(
                "no cherry or reticulated cherry recognised",
                witness=tuple(sorted(cur.universe)), steps=steps)
        members = rec.candidate.members if rec.is_reticulated else None
        steps.append(ReductionStep(rec.kind, rec.a, rec.b, members, rec.alternatives))
        if rec.alternatives > 1:
            log.info("%d candidate sets for (%s, %s); using %s",
                     rec.alternatives, rec.a, rec.b, sorted(members))
        cur = remove_leaf(cur, rec.b)

    net = _base_network(cur.sorted_universe())
    stages = [net]
    notes = [f"{s.alternatives} candidate sets for ({s.a}, {s.b})"
             for s in steps if s.alternatives > 1]
    for step in reversed(steps):
        try:
            if step.kind == "cherry":
                net = attach_cherry(net, step.a, step.b)
            else:
                net = attach_reticulated_cherry(net, step.a, step.b, step.members, notes)
        except NetworkError as exc:
            raise NotRealizableOrOutOfClass(
                f"cannot undo {step.describe()} ({exc})", witness=step, steps=steps) from exc
        stages.append(net)

    got = rooted_triples(net)
    if got != R:
        diff = sorted(got.triples ^ R.triples)
        witness = str(diff[0]) if diff else "leaf sets differ"
        raise NotRealizableOrOutOfClass(
            "reconstructed network displays a different triple set", witness=witness, steps=steps)
    return ReconstructionResult(net, steps, True, stages, notes)


def structural_reduction(N: Network):
    """Reduce ``N`` to two leaves using its own cherries / reticulated cherries.

    Yields ``(step, before, after)``; cherries are taken before reticulated
    cherries, each in label order.
    """
    while len(N.leaves) > 2:
        ch = cherries(N)
        if ch:
            a, b = ch[0]
            after = reduce_cherry(N, a, b)
            step = ReductionStep("cherry", a, b)
        else:
            rcs = reticulated_cherries(N)
            if not rcs:
                raise NotAReticulatedCherry("network has neither a cherry nor a reticulated cherry")
            rc = rcs[0]
            step = ReductionStep("reticulated", rc.a, rc.b, visibility_set(N, rc.g_b))
            after = reduce_reticulated_cherry(N, rc.a, rc.b)
        yield step, N, after
        N = after
