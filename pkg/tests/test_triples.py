import pytest

from tripnet import (
    GeneratorConfig,
    QuartetCaterpillar,
    RootedTriple,
    TripleSet,
    are_isomorphic,
    build_figure6_pair,
    displays_triple,
    enumerate_trees,
    format_triples,
    parse_enewick,
    parse_triples,
    quartet_caterpillars,
    random_binary_network,
    random_normal_network,
    random_tree,
    remove_leaf,
    reticulated_cherries,
    rooted_triples,
    switchings,
    tree_triples,
    write_enewick,
)
from tripnet.selftest import reconstruction_sample
from tripnet.errors import LabelOutsideUniverse, TripleFormatError
from tripnet.network import adjacency, simplify


def T(x, y, z):
    return RootedTriple.of(x, y, z)


def restrict(N, keep):
    """Tree restricted to the labels in ``keep``."""
    kids = adjacency(N)
    labels = {v: lab for v, lab in N.leaf_labels.items() if lab in keep}
    for v, lab in N.leaf_labels.items():
        if lab not in keep:
            for p in N.parents(v):
                kids[p].remove(v)
            del kids[v]
    return simplify(kids, labels, N.root)


class TestRootedTriple:
    def test_canonical(self):
        assert T("b", "a", "c") == T("a", "b", "c") == ("a", "b", "c")
        assert str(T("b", "a", "c")) == "a b | c"

    def test_distinct_labels(self):
        with pytest.raises(ValueError):
            T("a", "a", "b")

    def test_set_rejects_foreign_label(self):
        with pytest.raises(LabelOutsideUniverse):
            TripleSet({"a", "b"}, [("a", "b", "c")])

    def test_sorted_iteration(self):
        R = TripleSet("abcd", [("c", "d", "a"), ("a", "b", "c"), ("b", "a", "d")])
        assert [str(t) for t in R] == ["a b | c", "a b | d", "c d | a"]


class TestSwitchings:
    def test_tree_is_itself(self, tree3):
        (S,) = switchings(tree3)
        assert S is tree3

    def test_retic3(self, retic3):
        texts = sorted(write_enewick(S) for S in switchings(retic3))
        assert texts == ["((a,b),c);\n", "(a,(b,c));\n"]

    def test_count_without_dedupe(self):
        for seed in range(30):
            N = random_binary_network(5, seed % 4, seed)
            assert len(list(switchings(N, dedupe=False))) == 2 ** len(N.reticulations)

    def test_full_leaf_set(self):
        for seed in range(40):
            N = random_normal_network(GeneratorConfig(seed=seed, n_leaves=6, n_reticulations=seed % 4,
                                                      forbid_near=False))
            for S in switchings(N):
                assert S.leaves == N.leaves and not S.reticulations

    def test_switching_triples_subset(self):
        for seed in range(30):
            N = random_binary_network(5, 1 + seed % 3, seed)
            R = rooted_triples(N)
            for S in switchings(N):
                assert set(rooted_triples(S).triples) <= set(R.triples)


class TestRootedTriples:
    def test_tree3(self, tree3):
        assert rooted_triples(tree3) == TripleSet("abc", [T("a", "b", "c")])

    def test_retic3(self, retic3):
        assert rooted_triples(retic3) == TripleSet("abc", [T("a", "b", "c"), T("b", "c", "a")])

    def test_small_universe_empty(self):
        R = rooted_triples(parse_enewick("(a,b);"))
        assert len(R) == 0 and R.universe == {"a", "b"}

    def test_tree_count(self):
        for n in range(3, 10):
            assert len(rooted_triples(random_tree(n, n))) == n * (n - 1) * (n - 2) // 6

    def test_tree_triples_rejects_network(self, retic3):
        with pytest.raises(ValueError):
            tree_triples(retic3)

    def test_isomorphism_invariant(self):
        from tripnet import relabel_vertices
        for seed in range(20):
            N = random_binary_network(5, seed % 3, seed)
            M = relabel_vertices(N, {v: ("x", v) for v in N.vertices})
            assert rooted_triples(M) == rooted_triples(N)

    def test_distinct_trees_distinct_triples(self):
        trees = list(enumerate_trees(["a", "b", "c", "d"]))
        assert len(trees) == 15
        assert len({rooted_triples(t) for t in trees}) == 15

    def test_reticulated_cherry_pair_outvotes(self):
        for N in reconstruction_sample(120):
            R = rooted_triples(N)
            for rc in reticulated_cherries(N):
                assert all(R.has(rc.a, rc.b, x) for x in N.leaves - {rc.a, rc.b})


class TestDisplaysTriple:
    def test_retic3(self, retic3):
        assert not displays_triple(retic3, ("a", "c", "b"))
        assert displays_triple(retic3, ("b", "c", "a"))

    def test_tree(self, tree3):
        assert displays_triple(tree3, T("a", "b", "c"))

    def test_unknown_label(self, tree3):
        with pytest.raises(LabelOutsideUniverse):
            displays_triple(tree3, ("a", "b", "z"))

    def test_intertwined_pair_membership(self):
        N, N2 = build_figure6_pair(cherry_leaves=False)
        R2 = rooted_triples(N2)
        labels = sorted(N.leaves)
        for x in labels:
            for y in labels:
                for z in labels:
                    if x < y and z not in (x, y):
                        assert displays_triple(N, (x, y, z)) == R2.has(x, y, z)

    def test_agrees_with_rooted_triples(self):
        for seed in range(15):
            N = random_binary_network(5, seed % 3, seed)
            R = rooted_triples(N)
            labels = sorted(N.leaves)
            for x in labels:
                for y in labels:
                    for z in labels:
                        if x < y and z not in (x, y):
                            assert displays_triple(N, (x, y, z)) == R.has(x, y, z)


class TestQuartets:
    def test_caterpillar(self):
        Q = quartet_caterpillars(parse_enewick("(((a,b),c),d);"))
        assert Q == {QuartetCaterpillar("a", "b", "c", "d")}

    def test_balanced(self):
        assert quartet_caterpillars(parse_enewick("((a,b),(c,d));")) == frozenset()

    def test_small(self, retic3):
        assert quartet_caterpillars(retic3) == frozenset()

    def test_isomorphic_equal(self):
        from tripnet import relabel_vertices
        for seed in range(15):
            N = random_binary_network(5, seed % 3, seed)
            M = relabel_vertices(N, {v: ("y", v) for v in N.vertices})
            assert quartet_caterpillars(M) == quartet_caterpillars(N)

    def test_tree_restriction(self):
        from itertools import combinations
        for seed in range(10):
            Tr = random_tree(6, seed)
            Q = quartet_caterpillars(Tr)
            for quad in combinations(sorted(Tr.leaves), 4):
                sub = restrict(Tr, set(quad))
                cat = quartet_caterpillars(sub)
                assert cat == {q for q in Q if set(q) == set(quad)}


class TestRemoveLeaf:
    def test_retic3(self, retic3):
        R = remove_leaf(rooted_triples(retic3), "b")
        assert R.universe == {"a", "c"} and len(R) == 0

    def test_tree_restriction(self):
        for seed in range(20):
            Tr = random_tree(7, seed)
            for b in sorted(Tr.leaves):
                sub = restrict(Tr, Tr.leaves - {b})
                assert remove_leaf(rooted_triples(Tr), b) == rooted_triples(sub)

    def test_twice_errors(self, retic3):
        R = remove_leaf(rooted_triples(retic3), "b")
        with pytest.raises(LabelOutsideUniverse):
            remove_leaf(R, "b")


class TestTripleFormat:
    def test_roundtrip(self, retic3):
        R = rooted_triples(retic3)
        text = format_triples(R)
        assert text == "a b | c\nb c | a\n"
        assert parse_triples(text) == R

    def test_header_when_needed(self):
        R = rooted_triples(parse_enewick("(a,b);"))
        assert format_triples(R) == "leaves: a b\n"
        assert parse_triples(format_triples(R)) == R

    def test_whitespace_comments_duplicates(self):
        R = parse_triples("# hi\n\n  a   b|c \nb a | c\nleaves: a b c d\n")
        assert R.universe == {"a", "b", "c", "d"}
        assert list(R) == [T("a", "b", "c")]

    @pytest.mark.parametrize("text,line", [
        ("a b c\n", 1),
        ("a b | c\na a | b\n", 2),
        ("a b | c\nleaves: a b\n", 1),
        ("a b | c!\n", 1),
        ("leaves: a a\n", 1),
        ("leaves: a\nleaves: b\n", 2),
    ])
    def test_errors(self, text, line):
        with pytest.raises(TripleFormatError) as exc:
            parse_triples(text)
        assert exc.value.line == line
