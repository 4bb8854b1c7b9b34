"""Acceptance suites, runnable from the CLI (``tripnet selftest``) and pytest.

Each criterion returns a :class:`CriterionResult`; nothing here raises on a
failed check.  ``size="small"`` shrinks sample counts for a quick smoke run,
``size="full"`` uses the counts the acceptance gate requires.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import GenerationBudgetExhausted, NotRealizableOrOutOfClass
from .iso import are_isomorphic
from .network import (
    Network,
    all_vertices_visible,
    cherries,
    has_near_reticulations,
    is_normal,
    is_tree_child,
    near_sibling_pairs,
    reticulated_cherries,
    sibling_reticulation_pairs,
    stack_reticulation_pairs,
    visibility_set,
)
from .newick import parse_enewick, write_enewick
from .recognition import check_candidate_set, is_cherry_by_triples
from .reconstruct import reduce_reticulated_cherry, reconstruct_from_triples, structural_reduction
from .transforms import (
    GeneratorConfig,
    build_figure6_pair,
    enumerate_binary_networks,
    enumerate_trees,
    leaf_name,
    nni_near_sibling,
    random_binary_network,
    random_normal_network,
    random_tree,
)
from .triples import remove_leaf, rooted_triples

SIZES = {
    "small": {"sample": 60, "nni": 20, "random_lemma3": 150, "trees_per_n": 5,
              "format_random": 40, "lemma3_max_leaves": 4},
    "full": {"sample": 500, "nni": 100, "random_lemma3": 1000, "trees_per_n": 25,
             "format_random": 200, "lemma3_max_leaves": 5},
}


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:>2}. {self.name}: {self.detail} ({self.seconds:.1f}s)"


# -- shared samples -----------------------------------------------------

def sample_config(seed: int) -> GeneratorConfig:
    """Generator settings for seed ``seed`` of the reconstruction sample.

    Leaves cycle through 3..8 and reticulations through 0..3, capped at
    what the leaf count allows.
    """
    n = 3 + seed % 6
    r = min((seed // 6) % 4, n - 2)
    return GeneratorConfig(seed=seed, n_leaves=n, n_reticulations=r, forbid_near=True)


def sample_network(seed: int) -> Network:
    """Generate from :func:`sample_config`, dropping a reticulation if the budget runs out."""
    cfg = sample_config(seed)
    r = cfg.n_reticulations
    while True:
        try:
            return random_normal_network(GeneratorConfig(
                seed=seed, n_leaves=cfg.n_leaves, n_reticulations=r, forbid_near=True))
        except GenerationBudgetExhausted:
            if r == 0:
                raise
            r -= 1


@lru_cache(maxsize=None)
def reconstruction_sample(count: int) -> tuple:
    return tuple(sample_network(seed) for seed in range(count))


@lru_cache(maxsize=None)
def _triples_of_sample(count: int) -> tuple:
    return tuple(rooted_triples(N) for N in reconstruction_sample(count))


def near_sibling_sample(count: int) -> list:
    """Normal networks with a non-comparable near-sibling pair, from seeds 0, 1, ..."""
    out = []
    seed = 0
    while len(out) < count:
        n = 5 + seed % 4
        r = 2 + seed % 2
        seed += 1
        try:
            N = random_normal_network(GeneratorConfig(seed=seed, n_leaves=n, n_reticulations=r,
                                                      forbid_near=False))
        except GenerationBudgetExhausted:
            continue
        pairs = [p for p in near_sibling_pairs(N) if not p.comparable]
        if pairs:
            out.append((N, pairs[0]))
    return out


def _timed(fn):
    def wrapper(size="full"):
        start = time.perf_counter()
        res = fn(SIZES[size])
        res.seconds = time.perf_counter() - start
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# -- criteria -----------------------------------------------------------

@_timed
def criterion_1(cfg) -> CriterionResult:
    """Trees on 3, 4, 5 leaves: equal triple sets exactly when isomorphic."""
    expected = {3: 3, 4: 15, 5: 105}
    problems = []
    for n, want in expected.items():
        trees = list(enumerate_trees([leaf_name(i) for i in range(n)]))
        if len(trees) != want:
            problems.append(f"n={n}: {len(trees)} trees, expected {want}")
        triples = [rooted_triples(T) for T in trees]
        for i, j in combinations(range(len(trees)), 2):
            if (triples[i] == triples[j]) != are_isomorphic(trees[i], trees[j]):
                problems.append(f"n={n}: pair {i},{j} disagrees")
        for T in trees:
            if not are_isomorphic(T, T):
                problems.append(f"n={n}: tree not isomorphic to itself")
    detail = "tree counts 3/15/105, all pairs agree" if not problems else "; ".join(problems[:3])
    return CriterionResult(1, "triples determine trees", not problems, detail)


@_timed
def criterion_2(cfg) -> CriterionResult:
    """Reconstruction from R(N) returns N for in-class generated networks."""
    count = cfg["sample"]
    failures = []
    for seed, (N, R) in enumerate(zip(reconstruction_sample(count), _triples_of_sample(count))):
        try:
            res = reconstruct_from_triples(R)
        except NotRealizableOrOutOfClass as exc:
            failures.append(f"seed {seed}: {exc}")
            continue
        if not (res.verified and are_isomorphic(res.network, N)):
            failures.append(f"seed {seed}: result not isomorphic")
    detail = (f"{count} networks reconstructed up to isomorphism" if not failures
              else f"{len(failures)} failures, first: {failures[0]}")
    return CriterionResult(2, "reconstruction roundtrip", not failures, detail)


@_timed
def criterion_3(cfg) -> CriterionResult:
    """NNI on a non-comparable near-sibling pair keeps R(N) and breaks isomorphism."""
    count = cfg["nni"]
    bad = []
    for N, pair in near_sibling_sample(count):
        M = nni_near_sibling(N, pair.u, pair.v)
        if rooted_triples(N) != rooted_triples(M):
            bad.append("triples differ")
        elif are_isomorphic(N, M):
            bad.append("isomorphic")
        elif not is_normal(M):
            bad.append("result not normal")
    detail = (f"{count} networks: equal triples, non-isomorphic" if not bad
              else f"{len(bad)} failures: {bad[0]}")
    return CriterionResult(3, "near-sibling NNI indistinguishable", not bad, detail)


@_timed
def criterion_4(cfg) -> CriterionResult:
    """The intertwined pair: both normal, same triples, not isomorphic."""
    parts = []
    ok = True
    for cherry_leaves, name in ((False, "single-leaf"), (True, "cherry")):
        N, N2 = build_figure6_pair(cherry_leaves)
        this = (is_normal(N) and is_normal(N2)
                and rooted_triples(N) == rooted_triples(N2)
                and not are_isomorphic(N, N2))
        ok &= this
        parts.append(f"{name} gadgets {'ok' if this else 'FAILED'}")
    return CriterionResult(4, "intertwined counterexample", ok, ", ".join(parts))


def lemma3_agrees(N: Network) -> bool:
    a = is_tree_child(N)
    b = all_vertices_visible(N)
    c = not sibling_reticulation_pairs(N) and not stack_reticulation_pairs(N)
    return a == b == c


@_timed
def criterion_5(cfg) -> CriterionResult:
    """Three tree-child characterisations coincide."""
    exhaustive = 0
    tree_child = 0
    bad = 0
    for n in range(1, cfg["lemma3_max_leaves"] + 1):
        for r in range(3):
            for N in enumerate_binary_networks(n, r):
                exhaustive += 1
                tree_child += is_tree_child(N)
                bad += not lemma3_agrees(N)
    rand = cfg["random_lemma3"]
    rand_tc = 0
    for seed in range(rand):
        N = random_binary_network(2 + seed % 6, seed % 5, seed)
        rand_tc += is_tree_child(N)
        bad += not lemma3_agrees(N)
    detail = (f"{exhaustive} enumerated ({tree_child} tree-child) + {rand} random "
              f"({rand_tc} tree-child), {bad} disagreements")
    return CriterionResult(5, "tree-child characterisations", bad == 0, detail)


@_timed
def criterion_6(cfg) -> CriterionResult:
    """Visibility set of g_b passes every candidate-set property."""
    count = cfg["sample"]
    checked = 0
    bad = []
    for N, R in zip(reconstruction_sample(count), _triples_of_sample(count)):
        for rc in reticulated_cherries(N):
            checked += 1
            others = [x for x in N.leaves if x not in (rc.a, rc.b)]
            if not all(R.has(rc.a, rc.b, x) for x in others):
                bad.append(f"(i) fails for {rc.a},{rc.b}")
                continue
            cert = check_candidate_set(R, rc.a, rc.b, visibility_set(N, rc.g_b))
            if not cert:
                bad.append(f"{cert.failed} fails for {rc.a},{rc.b}: {cert.detail}")
    detail = (f"{checked} reticulated cherries, (i)-(vi) hold" if not bad
              else f"{len(bad)} failures: {bad[0]}")
    return CriterionResult(6, "visibility-set properties", not bad and checked > 0, detail)


@_timed
def criterion_7(cfg) -> CriterionResult:
    """Triple-based cherry test matches structural cherries."""
    count = cfg["sample"]
    pairs = 0
    bad = 0
    for N, R in zip(reconstruction_sample(count), _triples_of_sample(count)):
        if len(N.leaves) < 2:
            continue
        structural = set(cherries(N))
        for a, b in combinations(sorted(N.leaves), 2):
            pairs += 1
            bad += is_cherry_by_triples(R, a, b) != ((a, b) in structural)
    return CriterionResult(7, "cherry recognition", bad == 0,
                           f"{pairs} pairs checked, {bad} mismatches")


@_timed
def criterion_8(cfg) -> CriterionResult:
    """Reticulated-cherry reduction stays in class and removes exactly b's triples."""
    count = cfg["sample"]
    reductions = 0
    bad = []
    for N in reconstruction_sample(count):
        stages = [N] + [after for _, _, after in structural_reduction(N)]
        for M in stages:
            RM = None
            for rc in reticulated_cherries(M):
                if RM is None:
                    RM = rooted_triples(M)
                reductions += 1
                out = reduce_reticulated_cherry(M, rc.a, rc.b)
                if not is_normal(out) or has_near_reticulations(out):
                    bad.append(f"class lost reducing {rc.a},{rc.b}")
                elif rooted_triples(out) != remove_leaf(RM, rc.b):
                    bad.append(f"triples differ reducing {rc.a},{rc.b}")
    detail = (f"{reductions} reductions closed" if not bad
              else f"{len(bad)} failures: {bad[0]}")
    return CriterionResult(8, "reduction closure", not bad and reductions > 0, detail)


@_timed
def criterion_9(cfg) -> CriterionResult:
    """A tree on n leaves displays one triple per 3-subset."""
    bad = []
    total = 0
    for n in range(3, 10):
        for seed in range(cfg["trees_per_n"]):
            total += 1
            T = random_tree(n, seed * 31 + n)
            got = len(rooted_triples(T))
            if got != n * (n - 1) * (n - 2) // 6:
                bad.append(f"n={n} seed={seed}: {got}")
    return CriterionResult(9, "tree triple count", not bad,
                           f"{total} trees" if not bad else f"{len(bad)} wrong: {bad[0]}")


def format_fixtures() -> list:
    fixtures = [parse_enewick("((a,b),c);"), parse_enewick("((a,(b)#H1),(#H1,c));"),
                parse_enewick("(a,b);"), parse_enewick("a;")]
    for cherry in (False, True):
        fixtures.extend(build_figure6_pair(cherry))
    return fixtures


def _format_random(count: int) -> list:
    nets = []
    for seed in range(count):
        if seed % 2:
            nets.append(random_binary_network(2 + seed % 6, seed % 4, seed))
        else:
            nets.append(random_normal_network(GeneratorConfig(
                seed=seed, n_leaves=3 + seed % 6, n_reticulations=min(seed % 3, 1 + seed % 6),
                forbid_near=False)))
    return nets


@_timed
def criterion_10(cfg) -> CriterionResult:
    """Parse after write gives an isomorphic network; writing is deterministic."""
    count = cfg["format_random"]
    bad = []
    first = format_fixtures() + _format_random(count)
    texts = [write_enewick(N) for N in first]
    for N, text in zip(first, texts):
        back = parse_enewick(text)
        if not are_isomorphic(N, back):
            bad.append(f"roundtrip changed {text.strip()}")
        elif write_enewick(back) != text:
            bad.append(f"rewrite differs for {text.strip()}")
    again = [write_enewick(N) for N in format_fixtures() + _format_random(count)]
    if again != texts:
        bad.append("second run wrote different text")
    return CriterionResult(10, "format stability", not bad,
                           f"{len(first)} networks" if not bad else bad[0])


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10)


def run_all(size: str = "full", echo=None) -> list:
    if size not in SIZES:
        raise ValueError(f"size must be one of {sorted(SIZES)}")
    results = []
    for crit in CRITERIA:
        res = crit(size)
        results.append(res)
        if echo is not None:
            echo(res.line())
    return results
