import random
from itertools import combinations, product

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles
from conftest import EXAMPLE_EDGES, sb
from pointwidth.decomposition import (
    PointDecomposition,
    RootedTree,
    SimplifiedPointDecomposition,
    check_decomposable,
    connectivity_violation,
    enumerate_realisations,
    enumerate_subbags,
    is_flat,
    is_partial_realisation,
    is_realisation,
    is_subbag,
    restrict_tstructure,
    tree_of,
    validate_pd,
    validate_spd,
    width_of_pd,
)
from pointwidth.errors import InvalidDecompositionError, InvalidInputError
from pointwidth.generators import random_hypergraph
from pointwidth.hypergraph import Hypergraph, Point

A1 = {
    sb("t4", {"x1", "x0"}),
    sb("t3", {"x2", "x0", "x3"}),
    sb("t2", {"x0", "x3"}),
    sb("t1", {"x3"}),
    sb("t0"),
}
A2 = {sb("t4", {"x1", "x0"}), sb("t3", {"x2", "x0"}), sb("t2", {"x0"}), sb("t0")}


# ------------------------------------------------------------------ trees


def test_rooted_tree_queries():
    t = RootedTree("r", {"a": "r", "b": "r", "c": "a"})
    assert t.nodes == {"r", "a", "b", "c"}
    assert t.children("r") == ("a", "b")
    assert t.ancestors("c") == ["a", "r"]
    assert t.below("c", "r") and not t.below("r", "c") and not t.below("a", "a")
    assert t.depth("c") == 2
    assert t.preorder() == ["r", "a", "c", "b"]
    assert t.postorder() == ["c", "a", "b", "r"]
    assert t.is_connected_subset({"a", "c"}) and not t.is_connected_subset({"c", "b"})
    assert t.adjacent("a", "c") and not t.adjacent("b", "c")


@pytest.mark.parametrize(
    "root,parent",
    [("r", {"r": "a"}), ("r", {"a": "b"}), ("r", {"a": "b", "b": "a"})],
)
def test_rooted_tree_rejects(root, parent):
    with pytest.raises(InvalidInputError):
        RootedTree(root, parent)


def test_arcs_must_point_up():
    tree = RootedTree("r", {"a": "r"})
    with pytest.raises(InvalidInputError):
        PointDecomposition(tree, {}, {(sb("r"), sb("a"))})
    with pytest.raises(InvalidInputError):
        PointDecomposition(tree, {}, {(sb("a"), sb("zz"))})
    with pytest.raises(InvalidInputError):
        PointDecomposition(tree, {"zz": []})


# --------------------------------------------------------------- sub-bags


def test_subbags_of_t4(example_h, example_pd):
    want = {sb("t4"), sb("t4", {"x0", "x1"}), sb("t4", {"x0", "x1", "x2", "x3"})}
    assert enumerate_subbags(example_h, example_pd, "t4", k=1) == want
    assert enumerate_subbags(example_h, example_pd, "t0") == {sb("t0")}


def test_subbag_modes_agree(example_h, example_pd):
    for t in example_pd.tree.nodes:
        ex = enumerate_subbags(example_h, example_pd, t, mode="exhaustive")
        assert enumerate_subbags(example_h, example_pd, t, k=1) == ex
        assert enumerate_subbags(example_h, example_pd, t, mode="closure") == ex
        assert {s.vertices for s in ex} == oracles.lattice(example_h, example_pd.bags[t])
    with pytest.raises(ValueError):
        enumerate_subbags(example_h, example_pd, "t4", mode="bounded")
    assert is_subbag(example_h, example_pd, ("t4", ["x0", "x1"]))
    assert not is_subbag(example_h, example_pd, ("t4", ["x1"]))
    assert not is_subbag(example_h, example_pd, ("zz", []))


# -------------------------------------------------------- decomposability


def test_example_decomposable(example_pd):
    assert check_decomposable(example_pd) is None
    s, s1, s2 = sb("t2", {"x0", "x3"}), sb("t4", {"x1", "x0"}), sb("t3", {"x2", "x0", "x3"})
    assert (s1, s) in example_pd.arcs and (s2, s) in example_pd.arcs and (s1, s2) in example_pd.arcs


def test_mutated_example_not_decomposable(example_h, example_pd):
    s1, s2 = sb("t4", {"x1", "x0"}), sb("t3", {"x2", "x0", "x3"})
    pd = PointDecomposition(example_pd.tree, example_pd.bags, example_pd.arcs - {(s1, s2)})
    bad = check_decomposable(pd)
    assert bad == (sb("t2", {"x0", "x3"}), s2, s1)
    assert not oracles.decomposable(example_h, pd)
    rep = validate_pd(example_h, pd)
    assert not rep.ok and "decomposable" in rep.violations[0]


def test_no_shared_heads_is_decomposable():
    tree = RootedTree("r", {"a": "r", "b": "r"})
    pd = PointDecomposition(tree, {}, {(sb("a"), sb("r"))})
    assert check_decomposable(pd) is None


# ----------------------------------------------------------- realisations


def test_restrict_tstructure(example_h, example_pd):
    r2 = restrict_tstructure(example_pd, example_h, ["e1", "e2"])
    assert r2.sub_bags == A2
    assert r2.sinks == [sb("t0")]
    full = restrict_tstructure(example_pd, example_h, example_h.edge_ids())
    assert {s.node for s in full.sub_bags} == example_pd.tree.nodes
    assert is_realisation(example_pd, full.sub_bags)
    # A1 agrees with the full restriction everywhere but t4, and no H' yields A1 itself
    assert full.sub_bags - A1 == {sb("t4", {"x0", "x1", "x2", "x3"})}
    for r in range(len(example_h) + 1):
        for sub in combinations(example_h.edge_ids(), r):
            assert restrict_tstructure(example_pd, example_h, sub).sub_bags != A1
    assert restrict_tstructure(example_pd, example_h, []).sub_bags == {sb("t0")}


def test_is_realisation(example_pd):
    assert is_realisation(example_pd, A1)
    assert not is_realisation(example_pd, A1 - {sb("t1", {"x3"})})
    assert is_realisation(example_pd, {sb("t0")})
    assert not is_realisation(example_pd, set())
    assert not is_realisation(example_pd, {sb("t0"), sb("t2", {"x0"}), sb("t2", {"x0", "x3"})})
    assert is_partial_realisation(example_pd, {sb("t2", {"x0", "x3"}), sb("t3", {"x0", "x2"})})
    assert not is_partial_realisation(example_pd, {sb("t3", {"x0", "x2"}), sb("t4", {"x0", "x1", "x2", "x3"})})


def test_tree_of(example_pd):
    assert tree_of(example_pd, A1) == example_pd.tree
    t2 = tree_of(example_pd, A2)
    assert t2.root == "t0"
    assert sorted(t2.edges()) == [("t2", "t0"), ("t3", "t2"), ("t4", "t2")]
    assert tree_of(example_pd, {sb("t0")}).nodes == {"t0"}
    with pytest.raises(InvalidDecompositionError):
        tree_of(example_pd, {sb("t2", {"x0"}), sb("t2", {"x0", "x3"})})
    with pytest.raises(InvalidDecompositionError):
        tree_of(example_pd, {sb("t1", {"x3"}), sb("t4", {"x0", "x1"})})
    assert connectivity_violation(example_pd, A1) is None


def test_example_realisations_match_oracle(example_h, example_pd):
    got = set(enumerate_realisations(example_h, example_pd))
    by_node = {}
    for s in oracles.all_subbags(example_h, example_pd):
        by_node.setdefault(s.node, []).append(s)
    want = set()
    for pick in product(*[[None] + by_node[t] for t in sorted(by_node)]):
        xs = frozenset(s for s in pick if s is not None)
        if oracles.is_realisation(example_pd, xs):
            want.add(xs)
    assert got == want
    assert frozenset(A1) in got and frozenset(A2) in got


# ------------------------------------------------------------- validation


def test_example_valid(example_h, example_pd):
    rep = validate_pd(example_h, example_pd)
    assert rep.ok and rep.complete and rep.status == "valid"
    assert oracles.valid_pd(example_h, example_pd) is True
    assert width_of_pd(example_h, example_pd) == 1
    assert not is_flat(example_pd)
    fast = validate_pd(example_h, example_pd, mode="fast")
    assert fast.ok and fast.status == "partially validated"
    with pytest.raises(ValueError):
        validate_pd(example_h, example_pd, mode="other")


def test_example_missing_point_reported(example_h, example_pd):
    bags = dict(example_pd.bags)
    for t in ("t4", "t3"):
        bags[t] = bags[t] - {Point("x2", "e")}
    pd = PointDecomposition(example_pd.tree, bags, example_pd.arcs)
    assert not validate_pd(example_h, pd).ok
    # without arcs the only failure left is condition (i)
    bare = PointDecomposition(example_pd.tree, bags)
    rep = validate_pd(example_h, bare)
    assert not rep.ok
    assert any("condition (i)" in v and "'e'" in v for v in rep.violations)


def test_bag_with_non_point(example_h, example_pd):
    bags = dict(example_pd.bags)
    bags["t0"] = frozenset({Point("x1", "e2")})
    rep = validate_pd(example_h, PointDecomposition(example_pd.tree, bags, example_pd.arcs))
    assert not rep.ok and "non-points" in rep.violations[0]


def test_condition_ii_violation():
    h = Hypergraph({"a": ["x"]})
    tree = RootedTree("r", {"c": "r"})
    pd = PointDecomposition(tree, {"c": [("x", "a")]})
    rep = validate_pd(h, pd)
    assert not rep.ok and "condition (ii)" in rep.violations[0]
    assert oracles.valid_pd(h, pd) == "cond-ii"


def test_single_bag_and_flat():
    h = Hypergraph({"a": ["x", "y"]})
    pd = PointDecomposition(RootedTree("r"), {"r": h.points})
    assert validate_pd(h, pd).ok
    assert width_of_pd(h, pd) == 1
    assert is_flat(pd)
    spd = SimplifiedPointDecomposition(RootedTree("r"), {"r": h.points})
    assert validate_spd(h, spd).ok


def test_validate_spd_failures():
    h = Hypergraph({"a": ["x", "y"], "b": ["y", "z"]})
    tree = RootedTree("r", {"p": "r", "q": "r"})
    # y appears at p and q but not at r: disconnected for {a, b}
    spd = SimplifiedPointDecomposition(
        tree,
        {"p": [("x", "a"), ("y", "a")], "q": [("y", "b"), ("z", "b")], "r": []},
    )
    rep = validate_spd(h, spd)
    assert not rep.ok and "condition (2)" in rep.violations[0]
    assert oracles.valid_spd(h, spd) is False
    missing = SimplifiedPointDecomposition(tree, {"p": [("x", "a")]})
    assert "condition (1)" in validate_spd(h, missing).violations[0]
    stray = SimplifiedPointDecomposition(tree, {"p": [("z", "a")]})
    assert not validate_spd(h, stray).ok


# ------------------------------------------------- random cross-checks


def random_pd(rng, h, nodes=4, p_point=0.6, p_arc=0.4):
    names = [f"n{i}" for i in range(nodes)]
    parent = {names[i]: names[rng.randrange(i)] for i in range(1, nodes)}
    tree = RootedTree(names[0], parent)
    pts = sorted(h.points)
    bags = {t: frozenset(p for p in pts if rng.random() < p_point) for t in names}
    # keep condition (i) plausible by planting each edge somewhere
    for e in h.edge_ids():
        t = rng.choice(names)
        bags[t] = bags[t] | {Point(v, e) for v in h[e]}
    lat = {t: sorted(oracles.lattice(h, bags[t]), key=sorted) for t in names}
    arcs = set()
    for t in names:
        for u in tree.ancestors(t):
            for a in lat[t]:
                for b in lat[u]:
                    if rng.random() < p_arc:
                        arcs.add((sb(t, a), sb(u, b)))
    return PointDecomposition(tree, bags, frozenset(arcs))


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**9))
def test_validate_pd_matches_literal_oracle(seed):
    rng = random.Random(seed)
    h = random_hypergraph(rng, rng.randint(1, 3), rng.randint(1, 3))
    pd = random_pd(rng, h, nodes=rng.randint(1, 4), p_arc=rng.choice([0.1, 0.3, 0.6]))
    rep = validate_pd(h, pd)
    assert rep.complete
    assert rep.ok == (oracles.valid_pd(h, pd) is True)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_validate_spd_matches_literal_oracle(seed):
    rng = random.Random(seed)
    h = random_hypergraph(rng, rng.randint(1, 4), rng.randint(1, 4))
    n = rng.randint(1, 5)
    names = [f"n{i}" for i in range(n)]
    tree = RootedTree(names[0], {names[i]: names[rng.randrange(i)] for i in range(1, n)})
    pts = sorted(h.points)
    bags = {t: [p for p in pts if rng.random() < 0.5] for t in names}
    spd = SimplifiedPointDecomposition(tree, bags)
    assert validate_spd(h, spd).ok == oracles.valid_spd(h, spd)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_condition_ii_literally_on_valid_pds(seed):
    rng = random.Random(seed)
    h = random_hypergraph(rng, rng.randint(1, 3), rng.randint(1, 3))
    pd = random_pd(rng, h, nodes=rng.randint(1, 3), p_arc=0.5)
    if not validate_pd(h, pd).ok:
        return
    for r in range(len(h) + 1):
        for sub in combinations(h.edge_ids(), r):
            real = restrict_tstructure(pd, h, sub)
            assert is_realisation(pd, real.sub_bags)
    for xs in enumerate_realisations(h, pd):
        assert connectivity_violation(pd, xs) is None


def test_example_constant_matches_fixture(example_h):
    assert example_h.edges == {e: frozenset(vs) for e, vs in EXAMPLE_EDGES.items()}


@settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10**9))
def test_validate_pd_matches_oracle_dense_arcs(seed):
    # sparser bags and denser arcs make condition (iii) failures common
    rng = random.Random(seed)
    h = random_hypergraph(rng, rng.randint(2, 3), rng.randint(2, 3))
    pd = random_pd(rng, h, nodes=rng.randint(3, 4), p_point=0.4, p_arc=rng.choice([0.5, 0.7, 0.9]))
    rep = validate_pd(h, pd)
    assert rep.complete
    verdict = oracles.valid_pd(h, pd)
    assert rep.ok == (verdict is True)
    if verdict == "cond-iii":
        assert any("condition (iii)" in v for v in rep.violations)
