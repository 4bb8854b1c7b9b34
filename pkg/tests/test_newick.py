import random

import pytest

from tripnet import (
    are_isomorphic,
    build_figure6_pair,
    parse_enewick,
    random_binary_network,
    relabel_vertices,
    write_arcs,
    write_dot,
    write_enewick,
)
from tripnet.errors import DegreeViolation, HybridTagMismatch, NewickSyntaxError


class TestParse:
    def test_tree(self, tree3):
        assert are_isomorphic(parse_enewick("((a,b),c);"), tree3)

    def test_retic3(self, retic3):
        N = parse_enewick("((a,(b)#H1),(#H1,c));")
        assert are_isomorphic(N, retic3)

    def test_hybrid_leaf_shorthand(self, retic3):
        assert are_isomorphic(parse_enewick("((a,b#H1),(#H1,c));"), retic3)

    def test_lengths_comments_whitespace(self, tree3):
        N = parse_enewick(" [tree]\n((a:1.5, b:2e-3)x:0.1,\n c:1);")
        assert are_isomorphic(N, tree3)

    def test_single_leaf(self):
        N = parse_enewick("a;")
        assert N.leaves == {"a"}

    def test_syntax_error_position(self):
        with pytest.raises(NewickSyntaxError) as exc:
            parse_enewick("((a,b;")
        assert (exc.value.line, exc.value.col) == (1, 6)

    def test_syntax_error_second_line(self):
        with pytest.raises(NewickSyntaxError) as exc:
            parse_enewick("((a,b),\n c))")
        assert exc.value.line == 2

    @pytest.mark.parametrize("text", ["((a,(b)#H1),c);", "((a,(b)#H1),((c)#H1,d));",
                                      "((a,#H1),(#H1,c));", "((a,(b)#H1),(#H1,(#H1,c)));"])
    def test_hybrid_mismatch(self, text):
        with pytest.raises(HybridTagMismatch):
            parse_enewick(text)

    def test_validation_forwarded(self):
        with pytest.raises(DegreeViolation):
            parse_enewick("((a,b,c),d);")

    def test_missing_semicolon(self):
        with pytest.raises(NewickSyntaxError):
            parse_enewick("((a,b),c)")


class TestWrite:
    def test_two_leaf(self):
        assert write_enewick(parse_enewick("(b,a);")) == "(a,b);\n"

    def test_canonical_under_relabel(self):
        rng = random.Random(3)
        for seed in range(60):
            N = random_binary_network(2 + seed % 6, seed % 4, seed)
            ids = list(N.vertices)
            rng.shuffle(ids)
            M = relabel_vertices(N, {v: f"n{i}" for i, v in enumerate(ids)})
            assert write_enewick(M) == write_enewick(N)

    def test_child_order_irrelevant(self):
        assert write_enewick(parse_enewick("(c,(b,a));")) == write_enewick(parse_enewick("((a,b),c);"))
        a = parse_enewick("((#H1,c),(a,(b)#H1));")
        b = parse_enewick("((a,(b)#H1),(#H1,c));")
        assert write_enewick(a) == write_enewick(b) == "((a,(b)#H1),(#H1,c));\n"

    def test_roundtrip(self):
        nets = [parse_enewick("a;"), parse_enewick("(a,b);"), *build_figure6_pair(True),
                *build_figure6_pair(False)]
        nets += [random_binary_network(2 + s % 7, s % 5, s) for s in range(100)]
        for N in nets:
            text = write_enewick(N)
            assert text.endswith(";\n") and text.count(";") == 1
            back = parse_enewick(text)
            assert are_isomorphic(back, N)
            assert write_enewick(back) == text

    def test_arcs_format(self, retic3):
        text = write_arcs(retic3)
        assert text.splitlines()[0] == "root r"
        assert "leaf pb b" not in text and "leaf b b" in text
        assert "arc pb b" in text

    def test_dot(self, retic3):
        text = write_dot(retic3)
        assert text.startswith("digraph") and '"pb" -> "b";' in text
