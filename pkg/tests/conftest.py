import pytest

from tripnet import build_network

RETIC3_ARCS = [("r", "g"), ("r", "pa"), ("pa", "a"), ("pa", "pb"), ("g", "c"), ("g", "pb"), ("pb", "b")]
LEAVES = {"a": "a", "b": "b", "c": "c"}


def make_retic3():
    return build_network(RETIC3_ARCS, LEAVES)


def make_tree3():
    return build_network([("r", "x"), ("r", "c"), ("x", "a"), ("x", "b")], LEAVES)


@pytest.fixture
def retic3():
    """Three leaves, one reticulation pb with parents pa (over a) and g (over c)."""
    return make_retic3()


@pytest.fixture
def tree3():
    return make_tree3()
