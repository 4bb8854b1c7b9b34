import pytest

from tripnet import (
    TripleSet,
    are_isomorphic,
    attach_cherry,
    attach_reticulated_cherry,
    cherries,
    has_near_reticulations,
    is_normal,
    nni_near_sibling,
    parse_enewick,
    reconstruct_from_triples,
    reduce_cherry,
    reduce_reticulated_cherry,
    remove_leaf,
    reticulated_cherries,
    rooted_triples,
    single_leaf_network,
    structural_reduction,
    visibility_set,
    write_enewick,
)
from tripnet.errors import (
    LabelClash,
    NoVisibilityMatch,
    NotACherry,
    NotAReticulatedCherry,
    NotRealizableOrOutOfClass,
)
from tripnet.reconstruct import attachment_targets
from tripnet.selftest import near_sibling_sample, reconstruction_sample

SAMPLE = 150


class TestReduceCherry:
    def test_two_leaf(self):
        N = reduce_cherry(parse_enewick("(a,b);"), "a", "b")
        assert N.leaves == {"a"} and N.arcs == ()

    def test_tree3(self, tree3):
        assert are_isomorphic(reduce_cherry(tree3, "a", "b"), parse_enewick("(a,c);"))

    def test_not_a_cherry(self, tree3, retic3):
        with pytest.raises(NotACherry):
            reduce_cherry(tree3, "a", "c")
        with pytest.raises(NotACherry):
            reduce_cherry(retic3, "a", "b")

    def test_keeps_normal(self):
        for N in reconstruction_sample(SAMPLE):
            for a, b in cherries(N):
                assert is_normal(reduce_cherry(N, a, b))


class TestReduceReticulatedCherry:
    def test_retic3(self, retic3):
        assert are_isomorphic(reduce_reticulated_cherry(retic3, "a", "b"), parse_enewick("(a,c);"))

    def test_wrong_orientation(self, retic3):
        with pytest.raises(NotAReticulatedCherry):
            reduce_reticulated_cherry(retic3, "b", "a")
        with pytest.raises(NotAReticulatedCherry):
            reduce_reticulated_cherry(parse_enewick("((a,b),c);"), "a", "b")

    def test_closure_and_bookkeeping(self):
        count = 0
        for N in reconstruction_sample(SAMPLE):
            R = rooted_triples(N)
            for rc in reticulated_cherries(N):
                count += 1
                M = reduce_reticulated_cherry(N, rc.a, rc.b)
                assert is_normal(M) and not has_near_reticulations(M)
                assert rooted_triples(M) == remove_leaf(R, rc.b)
        assert count > 50


class TestAttach:
    def test_single_vertex(self):
        N = attach_cherry(single_leaf_network("a"), "a", "b")
        assert are_isomorphic(N, parse_enewick("(a,b);"))

    def test_onto_two_leaf(self):
        N = attach_cherry(parse_enewick("(a,c);"), "a", "b")
        assert are_isomorphic(N, parse_enewick("((a,b),c);"))

    def test_label_clash(self, tree3):
        with pytest.raises(LabelClash):
            attach_cherry(tree3, "a", "b")
        with pytest.raises(LabelClash):
            attach_reticulated_cherry(tree3, "a", "c", {"b"})

    def test_cherry_roundtrip(self):
        for N in reconstruction_sample(SAMPLE):
            for a, b in cherries(N):
                assert are_isomorphic(attach_cherry(reduce_cherry(N, a, b), a, b), N)

    def test_retic3_from_two_leaf(self, retic3):
        N = attach_reticulated_cherry(parse_enewick("(a,c);"), "a", "b", {"c"})
        assert are_isomorphic(N, retic3)

    def test_reticulated_roundtrip(self):
        for N in reconstruction_sample(SAMPLE):
            for rc in reticulated_cherries(N):
                W = visibility_set(N, rc.g_b)
                M = reduce_reticulated_cherry(N, rc.a, rc.b)
                assert len(attachment_targets(M, W)) <= 2
                assert are_isomorphic(attach_reticulated_cherry(M, rc.a, rc.b, W), N)

    def test_no_match(self):
        with pytest.raises(NoVisibilityMatch):
            attach_reticulated_cherry(parse_enewick("((a,c),d);"), "a", "b", {"a", "d"})

    def test_root_target_adds_root(self):
        notes = []
        N = attach_reticulated_cherry(parse_enewick("(a,c);"), "a", "b", {"a", "c"}, notes)
        assert notes and len(N.reticulations) == 1
        assert len(N.children(N.root)) == 2


class TestReconstruct:
    def test_tree3(self, tree3):
        res = reconstruct_from_triples(TripleSet("abc", [("a", "b", "c")]))
        assert res.verified and are_isomorphic(res.network, tree3)

    def test_retic3(self, retic3):
        res = reconstruct_from_triples(rooted_triples(retic3))
        assert res.verified and are_isomorphic(res.network, retic3)
        assert [s.kind for s in res.steps] == ["reticulated"]

    def test_small_universes(self):
        assert reconstruct_from_triples(TripleSet("a")).network.leaves == {"a"}
        assert are_isomorphic(reconstruct_from_triples(TripleSet("ab")).network, parse_enewick("(a,b);"))
        with pytest.raises(NotRealizableOrOutOfClass):
            reconstruct_from_triples(TripleSet(""))

    def test_not_found(self):
        R = TripleSet("abc", [("a", "b", "c"), ("b", "c", "a"), ("a", "c", "b")])
        with pytest.raises(NotRealizableOrOutOfClass) as exc:
            reconstruct_from_triples(R)
        assert exc.value.witness == ("a", "b", "c")

    def test_unrealizable_fails_verification(self):
        # recognised as cherries all the way down, but the result shows ab|d instead of ad|b
        R = TripleSet("abcd", [("a", "b", "c"), ("a", "d", "b")])
        with pytest.raises(NotRealizableOrOutOfClass):
            reconstruct_from_triples(R)

    def test_roundtrip(self):
        for N in reconstruction_sample(SAMPLE):
            res = reconstruct_from_triples(rooted_triples(N))
            assert res.verified and are_isomorphic(res.network, N)

    def test_stages_stay_in_class(self):
        for N in reconstruction_sample(SAMPLE):
            res = reconstruct_from_triples(rooted_triples(N))
            for M in res.stages:
                assert is_normal(M) and not has_near_reticulations(M)

    def test_deterministic(self):
        for N in reconstruction_sample(40):
            R = rooted_triples(N)
            a, b = reconstruct_from_triples(R), reconstruct_from_triples(R)
            assert a.steps == b.steps
            assert write_enewick(a.network) == write_enewick(b.network)

    def test_out_of_class_never_wrong(self):
        outcomes = set()
        for N, pair in near_sibling_sample(40):
            for M in (N, nni_near_sibling(N, pair.u, pair.v)):
                R = rooted_triples(M)
                try:
                    res = reconstruct_from_triples(R)
                except NotRealizableOrOutOfClass:
                    outcomes.add("failed")
                    continue
                outcomes.add("verified")
                assert rooted_triples(res.network) == R
        assert outcomes


class TestStructuralReduction:
    def test_chain(self):
        for N in reconstruction_sample(SAMPLE):
            steps = list(structural_reduction(N))
            assert len(steps) == len(N.leaves) - 2 if len(N.leaves) > 2 else not steps
            for step, before, after in steps:
                assert after.leaves == before.leaves - {step.b}
                assert rooted_triples(after) == remove_leaf(rooted_triples(before), step.b)

    def test_stalls_without_either_structure(self):
        N = parse_enewick("(((a)#H2)#H1,(#H2,((#H1,b),c)));")
        assert not cherries(N) and not reticulated_cherries(N)
        with pytest.raises(NotAReticulatedCherry):
            list(structural_reduction(N))
