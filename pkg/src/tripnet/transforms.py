"""Network rewrites and generators: near-sibling NNI, the two intertwined
counterexample networks, and seeded random networks for testing."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import GenerationBudgetExhausted, NetworkError, NotNearSiblingPair
from .network import (
    Network,
    adjacency,
    build_network,
    fresh_vertex_factory,
    has_near_reticulations,
    is_normal,
    single_leaf_network,
)


def nni_near_sibling(N: Network, u, v) -> Network:
    """Nearest neighbour interchange relative to the near-sibling pair (u, v).

    With t a parent of v and s a tree-vertex child of t that is a parent of
    u, and w the other child of s: delete (s, w), suppress s (so t -> u),
    then subdivide (t, v) by s and hang w from it.  ``s`` keeps its id.
    """
    for t in (N.parents(v) if v in N else ()):
        kids = N.children(t)
        if len(kids) != 2 or v not in kids:
            continue
        s = kids[0] if kids[1] == v else kids[1]
        if len(N.parents(s)) != 1 or len(N.children(s)) != 2 or u not in N.children(s):
            continue
        if len(N.parents(u)) != 2 or len(N.parents(v)) != 2:
            continue
        (w,) = [c for c in N.children(s) if c != u]
        new = adjacency(N)
        # t: (s, v) -> (u, s)
        new[t] = [u if c == s else s if c == v else c for c in new[t]]
        new[s] = [v, w]
        return build_network([(x, c) for x in new for c in new[x]], N.leaf_labels,
                             vertices=N.vertices)
    raise NotNearSiblingPair(f"({u!r}, {v!r}) is not a near-sibling pair")


# -- intertwined counterexample ----------------------------------------

def _hang(arcs: list, labels: dict, parent: str, name: str, cherry: bool):
    if cherry:
        arcs += [(parent, name), (name, name + "a"), (name, name + "b")]
        labels[name + "a"] = name + "a"
        labels[name + "b"] = name + "b"
    else:
        arcs.append((parent, name))
        labels[name] = name


def build_figure6_pair(cherry_leaves: bool = True) -> tuple:
    """The normal networks N and N' with equal triple sets.

    Each gadget w1..w4 is a two-leaf cherry (leaves ``w1a``, ``w1b``, ...)
    or, with ``cherry_leaves=False``, a single leaf ``w1`` ... ``w4``.
    Internal vertex ids follow the drawing: in N the reticulations are
    ``u`` and ``v``; in N' they are ``u'`` and ``v'``.
    """
    arcs: list = [
        ("root", "q_v"), ("root", "p_v"),
        ("q_v", "v"), ("p_v", "v"), ("p_v", "p_u"),
        ("v", "q_u"), ("q_u", "u"), ("p_u", "u"),
    ]
    labels: dict = {}
    for parent, w in (("q_v", "w1"), ("q_u", "w2"), ("u", "w3"), ("p_u", "w4")):
        _hang(arcs, labels, parent, w, cherry_leaves)
    N = build_network(arcs, labels)

    arcs2: list = [
        ("root", "q_v'"), ("root", "p_u"),
        ("q_v'", "q_v"), ("q_v'", "v'"), ("p_u", "v'"),
        ("v'", "p_u'"), ("p_u'", "u'"), ("q_v", "u'"),
    ]
    labels2: dict = {}
    for parent, w in (("q_v", "w1"), ("u'", "w2"), ("p_u'", "w3"), ("p_u", "w4")):
        _hang(arcs2, labels2, parent, w, cherry_leaves)
    N2 = build_network(arcs2, labels2)
    return N, N2


# -- random generation --------------------------------------------------

@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    n_leaves: int = 5
    n_reticulations: int = 1
    forbid_near: bool = True
    max_rejections: int = 2000


def leaf_name(i: int) -> str:
    """0 -> 'a', 25 -> 'z', 26 -> 'aa' ..."""
    s = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        s = chr(97 + r) + s
    return s


def _cherry_move(N: Network, leaf: str, new: str) -> Network:
    from .reconstruct import attach_cherry
    return attach_cherry(N, leaf, new)


def _retic_move(N: Network, leaf: str, arc, new: str) -> Network:
    """Subdivide the arc into ``leaf`` and ``arc``; join them by a new reticulation above ``new``."""
    va = N.leaf(leaf)
    fresh = fresh_vertex_factory(N)
    p_a, g, p_b, vb = fresh(), fresh(), fresh(), fresh()
    kids = adjacency(N)
    (pa_parent,) = N.parents(va)
    kids[pa_parent][kids[pa_parent].index(va)] = p_a
    kids[p_a] = [va, p_b]
    x, y = arc
    kids[x][kids[x].index(y)] = g
    kids[g] = [y, p_b]
    kids[p_b] = [vb]
    kids[vb] = []
    labels = dict(N.leaf_labels)
    labels[vb] = new
    return build_network([(s, c) for s in kids for c in kids[s]], labels)


def random_normal_network(cfg: GeneratorConfig) -> Network:
    """Grow a normal network by seeded inverse cherry / reticulated-cherry moves.

    Every move adds one leaf.  A move whose result is not normal (or has
    near reticulations when ``forbid_near``) is rejected and redrawn; once
    ``max_rejections`` draws have been rejected in total the generator gives
    up with :class:`GenerationBudgetExhausted`.
    """
    if cfg.n_leaves < 1 or cfg.n_reticulations < 0:
        raise ValueError("need n_leaves >= 1 and n_reticulations >= 0")
    if cfg.n_reticulations > max(cfg.n_leaves - 2, 0):
        raise GenerationBudgetExhausted(
            f"{cfg.n_reticulations} reticulations need more than {cfg.n_leaves} leaves")
    rng = random.Random(cfg.seed)
    rejections = 0

    def reject():
        nonlocal rejections
        rejections += 1
        if rejections > cfg.max_rejections:
            raise GenerationBudgetExhausted(
                f"gave up after {cfg.max_rejections} rejected moves ({cfg})")

    while True:
        moves = ["retic"] * cfg.n_reticulations + ["cherry"] * (cfg.n_leaves - 2 - cfg.n_reticulations)
        rng.shuffle(moves)
        if cfg.n_leaves > 1:
            # a single leaf has no arc to subdivide, so the first move is a cherry
            moves.insert(0, "cherry")
        N = single_leaf_network(leaf_name(0))
        for i, move in enumerate(moves, start=1):
            new = leaf_name(i)
            for _ in range(50):
                leaf = rng.choice(sorted(N.leaves))
                try:
                    if move == "cherry":
                        cand = _cherry_move(N, leaf, new)
                    else:
                        va = N.leaf(leaf)
                        cand = _retic_move(N, leaf, rng.choice([e for e in N.arcs if e[1] != va]), new)
                except NetworkError:
                    cand = None
                if cand is not None and is_normal(cand) and not (
                        cfg.forbid_near and has_near_reticulations(cand)):
                    N = cand
                    break
                reject()
            else:
                break
        else:
            return _renumber(N)


def _renumber(N: Network) -> Network:
    """Relabel internal vertices 0..k-1 in a stable order."""
    mapping = {v: i for i, v in enumerate(N.vertices)}
    return build_network([(mapping[u], mapping[c]) for u, c in N.arcs],
                         {mapping[v]: lab for v, lab in N.leaf_labels.items()},
                         vertices=[mapping[v] for v in N.vertices])


def random_tree(n_leaves: int, seed: int) -> Network:
    return random_normal_network(GeneratorConfig(seed=seed, n_leaves=n_leaves, n_reticulations=0))


def random_binary_network(n_leaves: int, n_reticulations: int, seed: int,
                          max_tries: int = 1000) -> Network:
    """Random binary network with no class restriction.

    Starts from a random tree and adds reticulation arcs between uniformly
    chosen arcs (possibly creating shortcuts, stacks and sibling
    reticulations); draws that create cycles or parallel arcs are redrawn.
    """
    if n_leaves == 1 and n_reticulations:
        raise ValueError("a single leaf has no arc to attach a reticulation arc to")
    rng = random.Random(seed)
    N = random_tree(n_leaves, rng.randrange(1 << 30))
    for _ in range(n_reticulations):
        for _ in range(max_tries):
            cand = _add_random_arc(N, rng)
            if cand is not None:
                N = cand
                break
        else:
            raise GenerationBudgetExhausted("could not add a reticulation arc")
    return _renumber(N)


def add_reticulation_arc(N: Network, e1, e2, top_first: bool = True) -> Optional[Network]:
    """Subdivide arcs ``e1`` (by s) and ``e2`` (by r) and add the arc s -> r.

    ``e1`` may be None for the virtual arc above the root.  When e1 == e2,
    ``top_first`` puts s above r on that arc.  Returns None if the result is
    not a valid network.
    """
    fresh = fresh_vertex_factory(N)
    s, r = fresh(), fresh()
    kids = adjacency(N)
    root = N.root
    try:
        if e1 is not None and e1 == e2:
            x, y = e1
            top, bottom = (s, r) if top_first else (r, s)
            kids[x][kids[x].index(y)] = top
            kids[top] = [bottom]
            kids[bottom] = [y]
        else:
            if e1 is None:
                kids[s] = [root]
            else:
                x, y = e1
                kids[x][kids[x].index(y)] = s
                kids[s] = [y]
            x, y = e2
            kids[x][kids[x].index(y)] = r
            kids[r] = [y]
        kids[s].append(r)
        return build_network([(a, c) for a in kids for c in kids[a]], N.leaf_labels)
    except NetworkError:
        return None


def _add_random_arc(N: Network, rng: random.Random) -> Optional[Network]:
    arcs = list(N.arcs)
    e1 = rng.choice(arcs + [None])
    e2 = rng.choice(arcs)
    return add_reticulation_arc(N, e1, e2, rng.random() < 0.5)


def enumerate_trees(labels) -> Iterator[Network]:
    """Every rooted binary tree on ``labels`` (each exactly once).

    Leaves are inserted in the given order onto every arc or above the root,
    which produces each labelled tree once: (2n-3)!! trees for n >= 2.
    """
    labels = list(labels)
    if not labels:
        return
    first = single_leaf_network(labels[0])

    def grow(T: Network, i: int):
        if i == len(labels):
            yield T
            return
        new = labels[i]
        for e in [None] + list(T.arcs):
            yield from grow(_insert_leaf(T, e, new), i + 1)

    yield from grow(first, 1)


def _insert_leaf(T: Network, arc, label: str) -> Network:
    fresh = fresh_vertex_factory(T)
    s, leaf = fresh(), fresh()
    kids = adjacency(T)
    if arc is None:
        kids[s] = [T.root, leaf]
    else:
        x, y = arc
        kids[x][kids[x].index(y)] = s
        kids[s] = [y, leaf]
    kids[leaf] = []
    labels = dict(T.leaf_labels)
    labels[leaf] = label
    return build_network([(a, c) for a in kids for c in kids[a]], labels)


_TOP = object()  # tail of the virtual arc entering the root


def _tree_shape(T: Network, v=None) -> str:
    v = T.root if v is None else v
    kids = T.children(v)
    if not kids:
        return "x"
    return "(" + ",".join(sorted(_tree_shape(T, c) for c in kids)) + ")"


def tree_shapes(n_leaves: int) -> list:
    """One labelled representative per unlabelled rooted binary tree shape."""
    labels = [leaf_name(i) for i in range(n_leaves)]
    reps = {}
    for T in enumerate_trees(labels):
        reps.setdefault(_tree_shape(T), T)
    return [reps[k] for k in sorted(reps)]


def enumerate_binary_networks(n_leaves: int, n_reticulations: int) -> Iterator[Network]:
    """Every binary network shape with the given leaf and reticulation counts.

    Each tree shape is extended by ``n_reticulations`` arc additions: two
    arcs (or one arc twice, or the virtual arc above the root) are
    subdivided and joined by a new arc.  Intermediate stages are kept as
    raw arc lists because they may contain parallel arcs.  Every binary
    network arises this way (delete a reticulation arc and suppress to go
    back), so the output covers all shapes, with repeats.
    """
    for T in tree_shapes(n_leaves):
        arcs = [(_TOP, T.root)] + list(T.arcs)
        yield from _extend(arcs, T.leaf_labels, n_reticulations, [len(T.vertices)])


def _extend(arcs: list, labels: dict, remaining: int, counter: list):
    if remaining == 0:
        real = [(u, v) for u, v in arcs if u is not _TOP]
        try:
            yield build_network(real, labels)
        except NetworkError:
            pass
        return
    m = len(arcs)
    for i in range(m):
        for j in range(m):
            s, r = counter[0], counter[0] + 1
            new = list(arcs)
            if i == j:
                x, y = arcs[i]
                new[i] = (x, s)
                new += [(s, r), (r, y), (s, r)]
            else:
                x1, y1 = arcs[i]
                x2, y2 = arcs[j]
                new[i] = (x1, s)
                new[j] = (x2, r)
                new += [(s, y1), (r, y2), (s, r)]
                if _has_cycle(new):
                    continue
            counter[0] += 2
            yield from _extend(new, labels, remaining - 1, counter)


def _has_cycle(arcs: list) -> bool:
    kids: dict = {}
    indeg: dict = {}
    for u, v in arcs:
        kids.setdefault(u, []).append(v)
        indeg[v] = indeg.get(v, 0) + 1
        indeg.setdefault(u, 0)
    stack = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for c in kids.get(v, ()):
            indeg[c] -= 1
            if indeg[c] == 0:
                stack.append(c)
    return seen != len(indeg)
