"""Extended Newick reading and canonical writing.

Reticulations are written ``(subtree)#Hk`` at their first occurrence and
``#Hk`` at the second.  Branch lengths, support values and ``[...]``
comments are accepted and ignored.
"""

from __future__ import annotations

from itertools import product

from .errors import HybridTagMismatch, NewickSyntaxError
from .network import Network, build_network, cluster_set

_SPECIAL = set("(),:;#[]'")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.next_id = 0
        self.arcs: list = []
        self.labels: dict = {}
        self.hybrids: dict = {}  # tag -> {"v", "count", "defined", "label", "first"}

    def where(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def fail(self, message, pos=None):
        raise NewickSyntaxError(message, *self.where(pos))

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip(self):
        t = self.text
        while self.pos < len(t):
            ch = t[self.pos]
            if ch.isspace():
                self.pos += 1
            elif ch == "[":
                end = t.find("]", self.pos)
                if end < 0:
                    self.fail("unterminated comment")
                self.pos = end + 1
            else:
                break

    def expect(self, ch):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            self.fail(f"expected {ch!r}, got {got!r}")
        self.pos += 1

    def new_vertex(self):
        v = self.next_id
        self.next_id += 1
        return v

    def name(self):
        self.skip()
        start = self.pos
        t = self.text
        while self.pos < len(t) and t[self.pos] not in _SPECIAL and not t[self.pos].isspace():
            self.pos += 1
        return t[start:self.pos]

    def lengths(self):
        while self.peek() == ":":
            self.pos += 1
            self.name()

    def subtree(self):
        """Parse one node; return its vertex id."""
        kids = []
        if self.peek() == "(":
            self.pos += 1
            kids.append(self.subtree())
            while self.peek() == ",":
                self.pos += 1
                kids.append(self.subtree())
            self.expect(")")
        label_pos = self.pos
        label = self.name()
        tag = None
        if self.peek() == "#":
            self.pos += 1
            tag_pos = self.pos
            tag = self.name()
            if not tag:
                self.fail("empty hybrid tag", tag_pos)
        self.lengths()

        if tag is None:
            v = self.new_vertex()
            if kids:
                self.arcs.extend((v, c) for c in kids)
            else:
                if not label:
                    self.fail("leaf without a label", label_pos)
                self.labels[v] = label
            return v

        h = self.hybrids.get(tag)
        if h is None:
            h = self.hybrids[tag] = {"v": self.new_vertex(), "count": 0,
                                     "defined": False, "label": None}
        h["count"] += 1
        if h["count"] > 2:
            raise HybridTagMismatch(tag, "appears more than twice")
        if kids:
            if h["defined"]:
                raise HybridTagMismatch(tag, "subtree given at both occurrences")
            h["defined"] = True
            self.arcs.extend((h["v"], c) for c in kids)
        if label:
            if h["label"] not in (None, label):
                raise HybridTagMismatch(tag, "occurrences carry different labels")
            h["label"] = label
        return h["v"]

    def parse(self):
        if not self.peek():
            self.fail("empty input")
        root = self.subtree()
        self.expect(";")
        if self.peek():
            self.fail("trailing text after ';'")
        for tag, h in self.hybrids.items():
            if h["count"] != 2:
                raise HybridTagMismatch(tag, f"appears {h['count']} time(s), expected 2")
            if not h["defined"]:
                if h["label"] is None:
                    raise HybridTagMismatch(tag, "no occurrence carries a subtree or label")
                # hybrid leaf ``x#H1``: split into reticulation + pendant leaf
                leaf = self.new_vertex()
                self.arcs.append((h["v"], leaf))
                self.labels[leaf] = h["label"]
        return build_network(self.arcs, self.labels, vertices=[root])


def parse_enewick(text: str) -> Network:
    """Parse one extended Newick network terminated by ``;``."""
    return _Parser(text).parse()


def _child_key(N: Network, v):
    c = cluster_set(N, v)
    return min(c), tuple(sorted(c))


def _render(N: Network, flips: frozenset) -> str:
    tags: dict = {}
    out: list = []

    def visit(v):
        lab = N.label(v)
        if lab is not None:
            out.append(lab)
            return
        if len(N.parents(v)) == 2:
            if v in tags:
                out.append(f"#H{tags[v]}")
                return
            tags[v] = len(tags) + 1
            tag = tags[v]
            out.append("(")
            visit(N.children(v)[0])
            out.append(f")#H{tag}")
            return
        kids = sorted(N.children(v), key=lambda c: _child_key(N, c))
        if v in flips:
            kids.reverse()
        out.append("(")
        for i, c in enumerate(kids):
            if i:
                out.append(",")
            visit(c)
        out.append(")")

    visit(N.root)
    return "".join(out)


def write_enewick(N: Network) -> str:
    """Canonical extended Newick: isomorphic networks give identical text.

    Children are ordered by their smallest descendant label (then by the
    full cluster).  Siblings with identical clusters can only occur with
    shortcuts; those orders are resolved by taking the smallest rendering.
    """
    tied = []
    for v in N.vertices:
        kids = N.children(v)
        if len(kids) == 2 and _child_key(N, kids[0]) == _child_key(N, kids[1]):
            tied.append(v)
    if not tied:
        body = _render(N, frozenset())
    else:
        body = min(_render(N, frozenset(v for v, f in zip(tied, bits) if f))
                   for bits in product((False, True), repeat=len(tied)))
    return body + ";\n"


def write_arcs(N: Network) -> str:
    """Plain arc-list dump: ``leaf <id> <label>`` and ``arc <u> <v>`` lines."""
    lines = [f"root {N.root}"]
    for v in N.vertices:
        lab = N.label(v)
        if lab is not None:
            lines.append(f"leaf {v} {lab}")
    lines.extend(f"arc {u} {c}" for u, c in N.arcs)
    return "\n".join(lines) + "\n"


def write_dot(N: Network) -> str:
    lines = ["digraph network {"]
    for v in N.vertices:
        lab = N.label(v)
        if lab is not None:
            lines.append(f'  "{v}" [label="{lab}", shape=plaintext];')
        elif len(N.parents(v)) == 2:
            lines.append(f'  "{v}" [label="", shape=box, width=0.15, height=0.15];')
        else:
            lines.append(f'  "{v}" [label="", shape=point];')
    lines.extend(f'  "{u}" -> "{c}";' for u, c in N.arcs)
    lines.append("}")
    return "\n".join(lines) + "\n"
