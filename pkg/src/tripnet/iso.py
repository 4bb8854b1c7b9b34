"""Leaf-label-preserving isomorphism of networks by signature-pruned backtracking."""

from __future__ import annotations

from collections import defaultdict

from .network import Network, cluster_set


def _signature(N: Network, v):
    return len(N.parents(v)), len(N.children(v)), cluster_set(N, v)


def find_isomorphism(N1: Network, N2: Network):
    """Return a vertex map N1 -> N2 fixing leaf labels and preserving arcs, or None.

    Vertices of N1 are matched children-first, so when a vertex is placed
    every child already has an image and the candidate must have exactly
    those images as its children.  Candidates are restricted to vertices
    with the same (in-degree, out-degree, cluster set) signature.
    """
    if (N1.leaves != N2.leaves or len(N1.vertices) != len(N2.vertices)
            or len(N1.arcs) != len(N2.arcs)):
        return None

    buckets = defaultdict(list)
    for w in N2.vertices:
        buckets[_signature(N2, w)].append(w)
    sig1 = {v: _signature(N1, v) for v in N1.vertices}
    for v in N1.vertices:
        if len(buckets.get(sig1[v], ())) == 0:
            return None

    order = list(reversed(N1.topological_order))
    phi: dict = {}
    used: set = set()

    def candidates(v):
        lab = N1.label(v)
        if lab is not None:
            w = N2.leaf(lab)
            return [w] if sig1[v] == _signature(N2, w) else []
        kids = N1.children(v)
        images = {phi[c] for c in kids}
        # any common parent of the images; the first child narrows it enough
        pool = N2.parents(phi[kids[0]])
        return [w for w in pool
                if w not in used and _signature(N2, w) == sig1[v]
                and set(N2.children(w)) == images]

    def extend(i):
        if i == len(order):
            return True
        v = order[i]
        for w in candidates(v):
            if w in used:
                continue
            phi[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del phi[v]
            used.discard(w)
        return False

    if extend(0):
        return dict(phi)
    return None


def are_isomorphic(N1: Network, N2: Network) -> bool:
    return find_isomorphism(N1, N2) is not None
