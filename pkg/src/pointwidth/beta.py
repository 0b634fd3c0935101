"""beta-elimination orders and the width-1 point decomposition built from them."""

from collections import deque

from .decomposition import PointDecomposition, RootedTree, SubBag
from .errors import InvalidInputError
from .hypergraph import Hypergraph, Point

ROOT = "bot"


def node_of(x: str) -> str:
    return f"x:{x}"


def is_beta_order(h: Hypergraph, order) -> bool:
    """For each x and edges e, e' through x, their parts at or after x are nested."""
    order = list(order)
    if sorted(order) != sorted(h.vertices) or len(set(order)) != len(order):
        return False
    rank = {v: i for i, v in enumerate(order)}
    for x in order:
        tails = [frozenset(v for v in h[e] if rank[v] >= rank[x]) for e in h.edges_containing(x)]
        for i, a in enumerate(tails):
            for b in tails[i + 1:]:
                if not (a <= b or b <= a):
                    return False
    return True


def beta_elimination_order(h: Hypergraph):
    """A beta-elimination order, or None when H is not beta-acyclic.

    Repeatedly removes the least vertex whose incident edges, restricted
    to the remaining vertices, form an inclusion chain. Removed vertices
    come first in the order.
    """
    remaining = set(h.vertices)
    edges = [h[e] for e in h.edge_ids()]
    order = []
    while remaining:
        pick = None
        for x in sorted(remaining):
            parts = sorted((e & remaining for e in edges if x in e), key=len)
            if all(a <= b for a, b in zip(parts, parts[1:])):
                pick = x
                break
        if pick is None:
            return None
        order.append(pick)
        remaining.discard(pick)
    if not is_beta_order(h, order):  # pragma: no cover - guards the greedy
        raise AssertionError("greedy elimination produced an invalid order")
    return order


def _check_order(h: Hypergraph, order):
    if not is_beta_order(h, order):
        raise InvalidInputError("not a beta-elimination order of the hypergraph")


def edge_order(h: Hypergraph, order) -> list[str]:
    """Edges sorted so that e1 < e2 iff the largest vertex of e1 Δ e2 lies in e2."""
    rank = {v: i for i, v in enumerate(order)}
    return sorted(h.edge_ids(), key=lambda e: sum(1 << rank[v] for v in h[e]))


def reachable_edges(h: Hypergraph, order, eorder, x: str, e: str) -> frozenset:
    """``H^x_e``: edges reachable from e through vertices <= x and edges <= e."""
    rank = {v: i for i, v in enumerate(order)}
    erank = {f: i for i, f in enumerate(eorder)}
    if x not in rank:
        raise InvalidInputError(f"unknown vertex {x!r}")
    h[e]
    bound_v, bound_e = rank[x], erank[e]
    seen = {e}
    queue = deque([e])
    while queue:
        f = queue.popleft()
        for y in h[f]:
            if rank[y] > bound_v:
                continue
            for g in h.edges_containing(y):
                if g not in seen and erank[g] <= bound_e:
                    seen.add(g)
                    queue.append(g)
    return frozenset(seen)


def build_beta_pd(h: Hypergraph, order=None) -> PointDecomposition:
    """Width-1 point decomposition on the path t_{x_n} -> ... -> t_{x_1}, rooted at ``bot``."""
    if order is None:
        order = beta_elimination_order(h)
        if order is None:
            raise InvalidInputError("hypergraph is not beta-acyclic")
    order = list(order)
    _check_order(h, order)
    rank = {v: i for i, v in enumerate(order)}
    eorder = edge_order(h, order)

    parent = {}
    for i, x in enumerate(order):
        parent[node_of(x)] = node_of(order[i + 1]) if i + 1 < len(order) else ROOT
    tree = RootedTree(ROOT, parent)

    bags = {ROOT: frozenset()}
    for x in order:
        bags[node_of(x)] = frozenset(
            Point(y, e) for e in h.edges_containing(x) for y in h[e] if rank[y] >= rank[x]
        )

    def tail(e, x):
        return frozenset(v for v in h[e] if rank[v] >= rank[x])

    # nonempty sub-bags of t_x with the edges realising them
    witnesses = {}
    for x in order:
        w = {}
        for e in h.edges_containing(x):
            w.setdefault(tail(e, x), set()).add(e)
        witnesses[x] = w

    reach = {}
    for y in order:
        for f in h.edge_ids():
            reach[(y, f)] = reachable_edges(h, order, eorder, y, f)

    arcs = set()
    bot = SubBag(ROOT, frozenset())
    for i, x in enumerate(order):
        for sx, es in witnesses[x].items():
            if len(sx) == 1:
                arcs.add((SubBag(node_of(x), sx), bot))
                limit = None
            else:
                limit = min(rank[v] for v in sx if v != x)
            for y in order[i + 1:]:
                if limit is not None and rank[y] > limit:
                    break
                for sy, fs in witnesses[y].items():
                    if any(e in reach[(y, f)] for e in es for f in fs):
                        arcs.add((SubBag(node_of(x), sx), SubBag(node_of(y), sy)))
    return PointDecomposition(tree, bags, frozenset(arcs))
