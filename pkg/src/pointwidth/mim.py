"""Branch decompositions, MIM-width, coverwidth orderings and the pipelines
from both to flat point decompositions.
"""

from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Mapping, NamedTuple

from .decomposition import (
    PointDecomposition,
    RootedTree,
    SimplifiedPointDecomposition,
    SubBag,
    _Index,
)
from .errors import InvalidInputError, SizeLimitError
from .graphs import mim_cut
from .hypergraph import Hypergraph, Point, beta_cover_number, incidence_graph, restrict_hypergraph
from .util import sorted_ids

COVERWIDTH_EXHAUSTIVE_LIMIT = 8
ORACLE_EDGE_LIMIT = 16

KINDS = {"vertex": "v", "edge": "e"}


@dataclass(frozen=True)
class BranchDecomposition:
    """Binary rooted tree whose leaves map to incidence-graph vertices.

    ``leaves`` maps a leaf to ``(kind, id)`` with kind ``"vertex"`` or ``"edge"``.
    """

    tree: RootedTree
    leaves: Mapping

    def __post_init__(self):
        leaves = {l: (k, i) for l, (k, i) in self.leaves.items()}
        object.__setattr__(self, "leaves", leaves)
        tree = self.tree
        for t in tree.nodes:
            n = len(tree.children(t))
            if n not in (0, 2):
                raise InvalidInputError(f"node {t!r} has {n} children; expected 0 or 2")
        real = {t for t in tree.nodes if tree.is_leaf(t)}
        if set(leaves) != real:
            raise InvalidInputError("leaf map does not match the leaves of the tree")
        for l, (k, _) in leaves.items():
            if k not in KINDS:
                raise InvalidInputError(f"leaf {l!r} has unknown kind {k!r}")
        if len(set(leaves.values())) != len(leaves):
            raise InvalidInputError("two leaves map to the same incidence vertex")

    def incidence_vertex(self, leaf):
        k, i = self.leaves[leaf]
        return (KINDS[k], i)

    def below(self, t) -> frozenset:
        """``V_t``: incidence vertices of the leaves under t."""
        out = set()
        stack = [t]
        while stack:
            x = stack.pop()
            if self.tree.is_leaf(x):
                out.add(self.incidence_vertex(x))
            stack.extend(self.tree.children(x))
        return frozenset(out)


def check_branch(h: Hypergraph, bd: BranchDecomposition):
    want = incidence_graph(h).vertices
    got = {bd.incidence_vertex(l) for l in bd.leaves}
    if got != want:
        raise InvalidInputError("branch decomposition leaves do not match the incidence graph")


def mim_width_of_branch(h: Hypergraph, bd: BranchDecomposition) -> int:
    """Largest induced matching across the cut of any tree node."""
    check_branch(h, bd)
    g = incidence_graph(h)
    allv = g.vertices
    best = 0
    for t in sorted_ids(bd.tree.nodes):
        vt = bd.below(t)
        best = max(best, mim_cut(g, vt, allv - vt))
    return best


def cut_points(h: Hypergraph, bd: BranchDecomposition, t) -> frozenset:
    """``C_t``: points (v, e) with exactly one of v, e below t."""
    vt = bd.below(t)
    return frozenset(
        Point(v, e) for e in h.edge_ids() for v in h[e] if (("v", v) in vt) != (("e", e) in vt)
    )


def build_simplified_from_branch(h: Hypergraph, bd: BranchDecomposition) -> SimplifiedPointDecomposition:
    """Bags ``C_t`` at leaves and ``C_t ∪ (C_{t1} ∩ C_{t2})`` at internal nodes."""
    check_branch(h, bd)
    cuts = {t: cut_points(h, bd, t) for t in bd.tree.nodes}
    bags = {}
    for t in bd.tree.nodes:
        kids = bd.tree.children(t)
        if kids:
            a, b = kids
            bags[t] = cuts[t] | (cuts[a] & cuts[b])
        else:
            bags[t] = cuts[t]
    return SimplifiedPointDecomposition(bd.tree, bags)


def width_of_spd(h: Hypergraph, spd) -> int:
    return max(
        (beta_cover_number(restrict_hypergraph(h, spd.bags[t])) for t in spd.tree.nodes),
        default=0,
    )


# -------------------------------------------------------------- flattening


def consistent_subbags(spd, h: Hypergraph, s1, s2, k: int = None, mode: str = "fast") -> bool:
    """Whether a single subhypergraph induces S1 at t and S2 at t' (t' the parent of t).

    Fast mode looks for witnesses H1, H2 of at most 2k edges each with
    ``V(H1|B_t) = S1``, ``V(H1|B_t') ⊆ S2``, ``V(H2|B_t') = S2`` and
    ``V(H2|B_t) ⊆ S1``. Oracle mode tries every subhypergraph.
    """
    s1 = SubBag(s1[0], frozenset(s1[1]))
    s2 = SubBag(s2[0], frozenset(s2[1]))
    idx = _Index(h, {s1.node: spd.bags[s1.node], s2.node: spd.bags[s2.node]})
    m1, m2 = idx.mask(s1.vertices), idx.mask(s2.vertices)
    if m1 < 0 or m2 < 0:
        return False
    r1 = idx.rmask[s1.node]
    r2 = idx.rmask[s2.node]
    m = len(idx.eids)
    if mode == "oracle":
        if m > ORACLE_EDGE_LIMIT:
            raise SizeLimitError("consistent_subbags oracle edges", m, ORACLE_EDGE_LIMIT)
        for em in range(1 << m):
            if idx.subset_mask(s1.node, em) == m1 and idx.subset_mask(s2.node, em) == m2:
                return True
        return False
    if mode != "fast":
        raise ValueError(f"unknown mode {mode!r}")
    if k is None:
        k = max(_bag_width(h, spd, s1.node), _bag_width(h, spd, s2.node))
    # edges usable in either witness never leave S1 at t or S2 at t'
    usable = [j for j in range(m) if (r1[j] or r2[j]) and not r1[j] & ~m1 and not r2[j] & ~m2]

    def witness(target: list, want: int) -> bool:
        if want == 0:
            return True
        cand = [j for j in usable if target[j]]
        for size in range(1, min(2 * k, len(cand)) + 1):
            for combo in combinations(cand, size):
                acc = 0
                for j in combo:
                    acc |= target[j]
                if acc == want:
                    return True
        return False

    return witness(r1, m1) and witness(r2, m2)


def _bag_width(h, spd, t) -> int:
    return beta_cover_number(restrict_hypergraph(h, spd.bags[t]))


def flatten(spd, h: Hypergraph, k: int = None, mode: str = "fast") -> PointDecomposition:
    """Flat point decomposition: arcs join consistent child/parent sub-bags."""
    idx = _Index(h, spd.bags)
    if k is None:
        k = width_of_spd(h, spd)
    lattices = {t: sorted(idx.lattice(t)) for t in spd.tree.nodes}
    arcs = set()
    for t in sorted_ids(spd.tree.nodes):
        if t == spd.tree.root:
            continue
        p = spd.tree.parent[t]
        for a in lattices[t]:
            for b in lattices[p]:
                sa = SubBag(t, idx.verts(a))
                sb = SubBag(p, idx.verts(b))
                if consistent_subbags(spd, h, sa, sb, k, mode):
                    arcs.add((sa, sb))
    return PointDecomposition(spd.tree, spd.bags, frozenset(arcs))


# -------------------------------------------------------------- coverwidth


def reachable_edges_cover(h: Hypergraph, order, x: str) -> frozenset:
    """``H^x``: edges reachable from x by walks through vertices <= x."""
    rank = {v: i for i, v in enumerate(order)}
    if x not in rank:
        raise InvalidInputError(f"unknown vertex {x!r}")
    bound = rank[x]
    seen_v = {x}
    queue = deque([x])
    edges = set()
    while queue:
        y = queue.popleft()
        for e in h.edges_containing(y):
            edges.add(e)
            for z in h[e]:
                if rank[z] <= bound and z not in seen_v:
                    seen_v.add(z)
                    queue.append(z)
    return frozenset(edges)


def upper_part(h: Hypergraph, order, x: str) -> frozenset:
    """``H^x[>= x]`` as a collapsed set of vertex sets."""
    rank = {v: i for i, v in enumerate(order)}
    hx = reachable_edges_cover(h, order, x)
    out = set()
    for e in hx:
        s = frozenset(v for v in h[e] if rank[v] >= rank[x])
        if s:
            out.add(s)
    return frozenset(out)


def coverwidth_of_order(h: Hypergraph, order, _cache: dict = None) -> int:
    order = list(order)
    if sorted(order) != sorted(h.vertices):
        raise InvalidInputError("order is not a permutation of the vertices")
    best = 0
    for x in order:
        part = upper_part(h, order, x)
        if _cache is not None:
            w = _cache.get(part)
            if w is None:
                w = _cache[part] = beta_cover_number(part)
        else:
            w = beta_cover_number(part)
        best = max(best, w)
    return best


def coverwidth_exhaustive(h: Hypergraph, limit: int = COVERWIDTH_EXHAUSTIVE_LIMIT):
    """Minimum coverwidth over all orderings; returns ``(width, order)``."""
    vs = sorted(h.vertices)
    if len(vs) > limit:
        raise SizeLimitError("coverwidth_exhaustive vertices", len(vs), limit)
    cache = {}
    best = None
    for perm in permutations(vs):
        w = coverwidth_of_order(h, perm, cache)
        if best is None or w < best[0]:
            best = (w, list(perm))
    if best is None:
        return 0, []
    return best


def build_spd_from_order(h: Hypergraph, order) -> SimplifiedPointDecomposition:
    """Tree on t_x rooted at the last vertex; t_x hangs below the next vertex of H^x[>= x]."""
    order = list(order)
    if sorted(order) != sorted(h.vertices):
        raise InvalidInputError("order is not a permutation of the vertices")
    if not order:
        raise InvalidInputError("empty hypergraph has no order-based decomposition")
    rank = {v: i for i, v in enumerate(order)}
    xmax = order[-1]
    parent = {}
    bags = {}
    for x in order:
        hx = reachable_edges_cover(h, order, x)
        bags[f"x:{x}"] = frozenset(
            Point(y, e) for e in hx for y in h[e] if rank[y] >= rank[x]
        )
        if x == xmax:
            continue
        above = {v for e in hx for v in h[e] if rank[v] > rank[x]}
        y = min(above, key=rank.get) if above else xmax
        parent[f"x:{x}"] = f"x:{y}"
    return SimplifiedPointDecomposition(RootedTree(f"x:{xmax}", parent), bags)


# ---------------------------------------------------------------- H_n family


class HnFamily(NamedTuple):
    hypergraph: Hypergraph
    branch: BranchDecomposition
    collapsed: bool


def gen_hn(n: int) -> HnFamily:
    """H_n with edges ``X ∪ {y}`` and ``Y ∪ {x}``, and its path-like branch decomposition.

    For n = 1 both edges equal {x1, y1}; only ``ex1`` is kept and the leaf
    of ``ey1`` is spliced out, with ``collapsed`` set.
    """
    if n < 1:
        raise InvalidInputError("n must be positive")
    xs = [f"x{i}" for i in range(1, n + 1)]
    ys = [f"y{i}" for i in range(1, n + 1)]
    edges = {f"ex{i}": ys + [f"x{i}"] for i in range(1, n + 1)}
    edges.update({f"ey{i}": xs + [f"y{i}"] for i in range(1, n + 1)})

    path = []
    for i in range(1, n + 1):
        path += [f"t{i}.1", f"t{i}.2"]
    for i in range(1, n + 1):
        path += [f"s{i}.1", f"s{i}.2"]
    parent = {path[j + 1]: path[j] for j in range(len(path) - 1)}
    leaves = {}
    for i in range(1, n + 1):
        parent[f"t'{i}.1"] = f"t{i}.1"
        parent[f"t'{i}.2"] = f"t{i}.2"
        leaves[f"t'{i}.1"] = ("vertex", f"x{i}")
        leaves[f"t'{i}.2"] = ("edge", f"ex{i}")
    for i in range(1, n):
        parent[f"s'{i}.1"] = f"s{i}.1"
        parent[f"s'{i}.2"] = f"s{i}.2"
        leaves[f"s'{i}.1"] = ("vertex", f"y{i}")
        leaves[f"s'{i}.2"] = ("edge", f"ey{i}")
    parent[f"s'{n}.1"] = f"s{n}.1"
    leaves[f"s'{n}.1"] = ("vertex", f"y{n}")
    leaves[f"s{n}.2"] = ("edge", f"ey{n}")

    collapsed = n == 1
    if collapsed:
        del edges["ey1"]
        # s1.2 was the ey1 leaf; s1.1 is left with one child, so splice it out
        del leaves["s1.2"]
        del parent["s1.2"]
        del parent["s'1.1"]
        del parent["s1.1"]
        parent["s'1.1"] = "t1.2"
    h = Hypergraph(edges)
    bd = BranchDecomposition(RootedTree(path[0], parent), leaves)
    return HnFamily(h, bd, collapsed)
