import random
from functools import lru_cache
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import coverwidth as cw_oracle
from oracles import lattice, mim_cut_oracle, valid_pd, valid_spd, walk_edges
from pointwidth.decomposition import (
    RootedTree,
    SimplifiedPointDecomposition,
    SubBag,
    is_flat,
    validate_pd,
    validate_spd,
    width_of_pd,
)
from pointwidth.errors import InvalidInputError
from pointwidth.generators import random_branch_decomposition, random_hypergraph, random_order
from pointwidth.hypergraph import Hypergraph, Point, incidence_graph
from pointwidth.mim import (
    BranchDecomposition,
    build_simplified_from_branch,
    build_spd_from_order,
    consistent_subbags,
    coverwidth_exhaustive,
    coverwidth_of_order,
    cut_points,
    flatten,
    gen_hn,
    mim_width_of_branch,
    reachable_edges_cover,
    upper_part,
    width_of_spd,
)

EXAMPLE_ORDER = ["x1", "x2", "x0", "x3"]


def exact_mimw(h):
    """Minimum MIM-width over every rooted binary tree on the incidence vertices."""
    g = incidence_graph(h)
    allv = frozenset(g.vertices)
    cut = lambda part: mim_cut_oracle(g, part)

    @lru_cache(maxsize=None)
    def best(part):
        if len(part) == 1:
            return 0
        items = sorted(part)
        first, rest = items[0], items[1:]
        out = None
        for mask in range(1 << len(rest)):
            left = frozenset([first] + [x for i, x in enumerate(rest) if mask >> i & 1])
            right = part - left
            if not right:
                continue
            w = max(cut(left), cut(right), best(left), best(right))
            out = w if out is None else min(out, w)
        return out

    return best(allv)


def _case(seed, max_v=5, max_e=4):
    rng = random.Random(seed)
    h = random_hypergraph(rng, rng.randint(1, max_v), rng.randint(1, max_e))
    return rng, h


def test_gen_hn_shapes():
    one = gen_hn(1)
    assert one.collapsed and len(one.hypergraph) == 1
    assert one.hypergraph.set_view() == {frozenset({"x1", "y1"})}
    two = gen_hn(2)
    assert not two.collapsed
    assert len(two.hypergraph) == 4 and len(two.hypergraph.vertices) == 4
    assert two.hypergraph["ex1"] == {"y1", "y2", "x1"}
    for n in (1, 2, 3):
        assert mim_width_of_branch(gen_hn(n).hypergraph, gen_hn(n).branch) <= 2
    with pytest.raises(InvalidInputError):
        gen_hn(0)


def test_cut_points_basic():
    fam = gen_hn(2)
    h, bd = fam.hypergraph, fam.branch
    assert cut_points(h, bd, bd.tree.root) == frozenset()
    for leaf, (kind, i) in bd.leaves.items():
        got = cut_points(h, bd, leaf)
        if kind == "vertex":
            assert got == {Point(i, e) for e in h.edges_containing(i)}
        else:
            assert got == {Point(v, i) for v in h[i]}


def test_branch_rejects_bad_shapes():
    tree = RootedTree("r", {"a": "r"})
    with pytest.raises(InvalidInputError):
        BranchDecomposition(tree, {"a": ("vertex", "x")})
    tree = RootedTree("r", {"a": "r", "b": "r"})
    with pytest.raises(InvalidInputError):
        BranchDecomposition(tree, {"a": ("vertex", "x"), "b": ("vertex", "x")})
    with pytest.raises(InvalidInputError):
        BranchDecomposition(tree, {"a": ("vertex", "x"), "b": ("thing", "y")})
    bd = BranchDecomposition(tree, {"a": ("vertex", "x"), "b": ("edge", "e")})
    with pytest.raises(InvalidInputError):
        mim_width_of_branch(Hypergraph({"e": ["x", "y"]}), bd)


def test_single_edge_pipelines():
    h = Hypergraph({"e": ["a", "b"]})
    tree = RootedTree("r", {"n": "r", "la": "n", "lb": "n", "le": "r"})
    bd = BranchDecomposition(tree, {"la": ("vertex", "a"), "lb": ("vertex", "b"), "le": ("edge", "e")})
    assert mim_width_of_branch(h, bd) == 1
    spd = build_simplified_from_branch(h, bd)
    assert width_of_spd(h, spd) == 1
    assert coverwidth_of_order(h, ["a", "b"]) == coverwidth_of_order(h, ["b", "a"]) == 1
    spd2 = build_spd_from_order(h, ["a", "b"])
    assert len(spd2.tree.nodes) == 2 and width_of_spd(h, spd2) == 1
    assert validate_spd(h, spd2).ok


def test_single_node_flatten():
    h = Hypergraph({"e": ["a", "b"], "f": ["b", "c"]})
    spd = SimplifiedPointDecomposition(RootedTree("r"), {"r": h.points})
    pd = flatten(spd, h)
    assert pd.arcs == frozenset() and is_flat(pd)
    assert validate_pd(h, pd, "exhaustive").ok


def test_consistency_trivial_cases():
    fam = gen_hn(2)
    h, bd = fam.hypergraph, fam.branch
    spd = build_simplified_from_branch(h, bd)
    for t in spd.tree.nodes:
        if t == spd.tree.root:
            continue
        p = spd.tree.parent[t]
        full = lambda u: frozenset(q.vertex for q in spd.bags[u])
        assert consistent_subbags(spd, h, (t, full(t)), (p, full(p)))
        for e in h.edge_ids():
            a = frozenset(q.vertex for q in spd.bags[t] if q.edge == e)
            b = frozenset(q.vertex for q in spd.bags[p] if q.edge == e)
            assert consistent_subbags(spd, h, (t, a), (p, b))


def test_example_coverwidth(example_h):
    assert coverwidth_of_order(example_h, EXAMPLE_ORDER) == cw_oracle(example_h, EXAMPLE_ORDER)
    for x in EXAMPLE_ORDER:
        assert reachable_edges_cover(example_h, EXAMPLE_ORDER, x) == walk_edges(example_h, EXAMPLE_ORDER, x)
    # the global minimum reaches only its own edges
    assert reachable_edges_cover(example_h, EXAMPLE_ORDER, "x1") == {"e", "e1"}
    with pytest.raises(InvalidInputError):
        coverwidth_of_order(example_h, ["x1"])


def test_reach_stays_in_component():
    h = Hypergraph({"a": ["p", "q"], "b": ["r", "s"]})
    for order in permutations(sorted(h.vertices)):
        assert reachable_edges_cover(h, order, "p") == {"a"}
        assert reachable_edges_cover(h, order, "s") == {"b"}


def test_hn_coverwidth_lower_bound():
    h2 = gen_hn(2).hypergraph
    for order in permutations(sorted(h2.vertices)):
        assert coverwidth_of_order(h2, order) >= 2
    w3, _ = coverwidth_exhaustive(gen_hn(3).hypergraph)
    assert w3 >= 3


def test_hn_reach_matches_walks():
    h = gen_hn(2).hypergraph
    for order in permutations(sorted(h.vertices)):
        for x in order:
            assert reachable_edges_cover(h, order, x) == walk_edges(h, order, x)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_mim_width_matches_raw_cuts(seed):
    rng, h = _case(seed)
    bd = random_branch_decomposition(rng, h)
    g = incidence_graph(h)
    want = max(mim_cut_oracle(g, bd.below(t)) for t in bd.tree.nodes)
    assert mim_width_of_branch(h, bd) == want


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_branch_pipeline(seed):
    rng, h = _case(seed, 4, 4)
    bd = random_branch_decomposition(rng, h)
    k = mim_width_of_branch(h, bd)
    spd = build_simplified_from_branch(h, bd)
    assert width_of_spd(h, spd) <= 2 * k
    assert valid_spd(h, spd) is True
    assert validate_spd(h, spd).ok
    pd = flatten(spd, h)
    assert is_flat(pd) and pd.bags == spd.bags
    assert width_of_pd(h, pd) == width_of_spd(h, spd)
    rep = validate_pd(h, pd, "exhaustive")
    assert rep.ok and rep.complete
    # the literal oracle is only affordable on very small trees
    if len(pd.tree.nodes) <= 9:
        assert valid_pd(h, pd) is True


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_fast_consistency_matches_oracle(seed):
    rng, h = _case(seed, 5, 5)
    bd = random_branch_decomposition(rng, h)
    spd = build_simplified_from_branch(h, bd)
    k = width_of_spd(h, spd)
    for t in spd.tree.nodes:
        if t == spd.tree.root:
            continue
        p = spd.tree.parent[t]
        for a in lattice(h, spd.bags[t]):
            for b in lattice(h, spd.bags[p]):
                s1, s2 = SubBag(t, a), SubBag(p, b)
                assert consistent_subbags(spd, h, s1, s2, k) == consistent_subbags(spd, h, s1, s2, k, "oracle")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_order_pipeline(seed):
    rng, h = _case(seed)
    order = random_order(rng, h)
    for x in order:
        assert reachable_edges_cover(h, order, x) == walk_edges(h, order, x)
    cw = coverwidth_of_order(h, order)
    assert cw == cw_oracle(h, order)
    spd = build_spd_from_order(h, order)
    assert spd.tree.root == f"x:{order[-1]}"
    assert width_of_spd(h, spd) <= cw
    assert valid_spd(h, spd) is True
    assert all(upper_part(h, order, x) for x in order)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**9))
def test_mimw_at_most_four_times_coverwidth(seed):
    rng = random.Random(seed)
    h = random_hypergraph(rng, rng.randint(1, 3), rng.randint(1, 3))
    cw, order = coverwidth_exhaustive(h)
    assert exact_mimw(h) <= 4 * cw
