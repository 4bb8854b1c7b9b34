"""Rooted triples and reconstruction of binary phylogenetic networks."""

from .errors import *  # noqa: F401,F403
from .iso import are_isomorphic, find_isomorphism
from .network import (
    NearPair,
    Network,
    ReticulatedCherry,
    VertexKind,
    all_vertices_visible,
    build_network,
    cherries,
    cluster_set,
    has_near_reticulations,
    is_normal,
    is_tree_child,
    near_sibling_pairs,
    near_stack_pairs,
    relabel_leaves,
    relabel_vertices,
    reticulated_cherries,
    shortcuts,
    sibling_reticulation_pairs,
    single_leaf_network,
    stack_reticulation_pairs,
    vertex_kind,
    visibility_set,
)
from .newick import parse_enewick, write_arcs, write_dot, write_enewick
from .recognition import (
    CandidateCheck,
    CandidateSet,
    RecognizedCherry,
    check_candidate_set,
    find_candidate_sets,
    find_recognized_cherry,
    is_cherry_by_triples,
)
from .reconstruct import (
    ReconstructionResult,
    ReductionStep,
    attach_cherry,
    attach_reticulated_cherry,
    reconstruct_from_triples,
    reduce_cherry,
    reduce_reticulated_cherry,
    structural_reduction,
)
from .transforms import (
    GeneratorConfig,
    build_figure6_pair,
    enumerate_binary_networks,
    enumerate_trees,
    nni_near_sibling,
    random_binary_network,
    random_normal_network,
    random_tree,
)
from .triples import (
    QuartetCaterpillar,
    RootedTriple,
    TripleSet,
    displays_triple,
    format_triples,
    parse_triples,
    quartet_caterpillars,
    remove_leaf,
    rooted_triples,
    switchings,
    tree_triples,
)

__version__ = "0.1.0"
