"""Graph subroutines: induced matchings, distance-2 independent sets,
chordality recognition and weighted independent sets on chordal graphs.

Vertices may be any hashable value accepted by :func:`pointwidth.util.order_key`;
iteration order is always the sorted order, so results are reproducible.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Hashable, Iterable, Mapping

from .errors import InvalidInputError, NotChordalError, SizeLimitError
from .util import order_key, sorted_ids

MIM_EDGE_LIMIT = 64
ALPHA2_VERTEX_LIMIT = 64
BRUTE_MWIS_LIMIT = 20


class Graph:
    """Finite simple undirected graph."""

    def __init__(self, vertices: Iterable[Hashable] = (), edges: Iterable[Iterable] = ()):
        adj = {v: set() for v in vertices}
        for edge in edges:
            u, v = tuple(edge)
            if u == v:
                raise InvalidInputError(f"self-loop at {u!r}")
            if u not in adj or v not in adj:
                raise InvalidInputError(f"edge {{{u!r}, {v!r}}} references unknown vertex")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}

    @property
    def vertices(self) -> frozenset:
        return frozenset(self._adj)

    @property
    def edges(self) -> frozenset:
        return frozenset(frozenset((u, v)) for u, ns in self._adj.items() for v in ns)

    def neighbors(self, v) -> frozenset:
        return self._adj[v]

    def adjacent(self, u, v) -> bool:
        return v in self._adj[u]

    def sorted_vertices(self) -> list:
        return sorted_ids(self._adj)

    def sorted_edges(self) -> list[tuple]:
        pairs = [tuple(sorted_ids(e)) for e in self.edges]
        return sorted(pairs, key=order_key)

    def induced(self, xs: Iterable) -> "Graph":
        keep = set(xs) & set(self._adj)
        return Graph(keep, (e for e in self.edges if e <= keep))

    def line_graph(self) -> "Graph":
        es = [frozenset(e) for e in self.sorted_edges()]
        return Graph(es, ((e, f) for e, f in combinations(es, 2) if e & f))

    def cut(self, left: Iterable, right: Iterable) -> "Graph":
        """Bipartite graph G[left, right] of edges crossing the two sides."""
        left, right = set(left), set(right)
        if left & right:
            raise InvalidInputError("cut sides overlap")
        return Graph(
            left | right,
            ((u, v) for u in left for v in self._adj[u] if v in right),
        )

    def __len__(self):
        return len(self._adj)

    def __contains__(self, v):
        return v in self._adj

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __repr__(self):
        return f"Graph({len(self._adj)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class WeightedGraph:
    graph: Graph
    weight: Mapping

    def __post_init__(self):
        for v in self.graph.vertices:
            if v not in self.weight:
                raise InvalidInputError(f"vertex {v!r} has no weight")
            if Fraction(self.weight[v]) < 0:
                raise InvalidInputError(f"vertex {v!r} has negative weight")


def _max_independent_bits(conflicts: list[int]) -> int:
    """Size of a maximum independent set of the graph given by bit adjacency."""
    n = len(conflicts)
    best = 0

    def rec(cand: int, size: int):
        nonlocal best
        while cand:
            # vertices with no remaining conflicts are always taken
            free = 0
            c = cand
            while c:
                low = c & -c
                i = low.bit_length() - 1
                if not conflicts[i] & cand:
                    free |= low
                c ^= low
            if not free:
                break
            size += free.bit_count()
            cand &= ~free
        if not cand:
            best = max(best, size)
            return
        if size + cand.bit_count() <= best:
            return
        # branch on the vertex of largest remaining degree
        pick, deg = -1, -1
        c = cand
        while c:
            low = c & -c
            i = low.bit_length() - 1
            d = (conflicts[i] & cand).bit_count()
            if d > deg:
                pick, deg = i, d
            c ^= low
        bit = 1 << pick
        rec(cand & ~conflicts[pick] & ~bit, size + 1)
        rec(cand & ~bit, size)

    rec((1 << n) - 1, 0)
    return best


def max_induced_matching(g: Graph, limit: int = MIM_EDGE_LIMIT) -> int:
    """Maximum size of an induced matching, by branch and bound over edges."""
    edges = g.sorted_edges()
    if len(edges) > limit:
        raise SizeLimitError("max_induced_matching edges", len(edges), limit)
    closed = [g.neighbors(u) | g.neighbors(v) | {u, v} for u, v in edges]
    conflicts = []
    for i, (u, v) in enumerate(edges):
        mask = 0
        for j, (a, b) in enumerate(edges):
            if i != j and (a in closed[i] or b in closed[i]):
                mask |= 1 << j
        conflicts.append(mask)
    return _max_independent_bits(conflicts)


def mim_cut(g: Graph, left: Iterable, right: Iterable, limit: int = MIM_EDGE_LIMIT) -> int:
    """Maximum induced matching of the bipartite cut graph G[left, right]."""
    return max_induced_matching(g.cut(left, right), limit=limit)


def distance2_independent_max(g: Graph, limit: int = ALPHA2_VERTEX_LIMIT) -> int:
    """Largest vertex set with pairwise distance greater than two."""
    vs = g.sorted_vertices()
    if len(vs) > limit:
        raise SizeLimitError("distance2_independent_max vertices", len(vs), limit)
    index = {v: i for i, v in enumerate(vs)}
    conflicts = []
    for v in vs:
        ball = set(g.neighbors(v))
        for u in g.neighbors(v):
            ball |= g.neighbors(u)
        ball.discard(v)
        mask = 0
        for u in ball:
            mask |= 1 << index[u]
        conflicts.append(mask)
    return _max_independent_bits(conflicts)


def is_peo(g: Graph, order) -> bool:
    """Every vertex's later neighbours form a clique."""
    order = list(order)
    if len(order) != len(g) or set(order) != g.vertices:
        return False
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in g.neighbors(v) if pos[u] > pos[v]]
        for a, b in combinations(later, 2):
            if not g.adjacent(a, b):
                return False
    return True


def find_chordless_cycle(g: Graph):
    """Return a chordless cycle of length >= 4 as a vertex list, or None."""
    for v in g.sorted_vertices():
        nv = g.neighbors(v)
        for a, b in combinations(sorted_ids(nv), 2):
            if g.adjacent(a, b):
                continue
            blocked = (nv | {v}) - {a, b}
            # shortest a-b path avoiding N[v] is chordless
            prev = {a: None}
            queue = deque([a])
            while queue and b not in prev:
                x = queue.popleft()
                for y in sorted_ids(g.neighbors(x)):
                    if y in blocked or y in prev:
                        continue
                    prev[y] = x
                    queue.append(y)
            if b in prev:
                path = []
                x = b
                while x is not None:
                    path.append(x)
                    x = prev[x]
                return [v] + path[::-1]
    return None


def mcs_order(g: Graph) -> list:
    """Maximum cardinality search visiting order, ties to the least vertex."""
    weight = {v: 0 for v in g.vertices}
    visited = []
    seen = set()
    for _ in range(len(g)):
        v = min(
            (u for u in weight if u not in seen),
            key=lambda u: (-weight[u], order_key(u)),
        )
        visited.append(v)
        seen.add(v)
        for u in g.neighbors(v):
            if u not in seen:
                weight[u] += 1
    return visited


def peo(g: Graph) -> list:
    """Perfect elimination ordering (simplicial vertex first).

    Raises NotChordalError carrying a chordless cycle if none exists.
    """
    order = mcs_order(g)[::-1]
    if is_peo(g, order):
        return order
    cycle = find_chordless_cycle(g)
    if cycle is None:  # pragma: no cover - would mean MCS itself is broken
        raise AssertionError("MCS order failed on a chordal graph")
    raise NotChordalError(cycle)


def chordal_mwis(wg: WeightedGraph, order=None):
    """Maximum-weight independent set of a chordal graph along a PEO.

    Two passes over the ordering: forward, each vertex with positive
    residual weight is marked and its residual is subtracted from its later
    neighbours; backward, marked vertices are taken greedily when no
    neighbour has been taken yet.

    Returns ``(weight, frozenset)``.
    """
    g = wg.graph
    if order is None:
        order = peo(g)
    order = list(order)
    if not is_peo(g, order):
        raise InvalidInputError("ordering is not a perfect elimination ordering")
    pos = {v: i for i, v in enumerate(order)}
    residual = {v: Fraction(wg.weight[v]) for v in order}
    marked = []
    for v in order:
        r = residual[v]
        if r > 0:
            marked.append(v)
            for u in g.neighbors(v):
                if pos[u] > pos[v]:
                    residual[u] = max(Fraction(0), residual[u] - r)
    chosen = set()
    for v in reversed(marked):
        if not (g.neighbors(v) & chosen):
            chosen.add(v)
    total = sum((Fraction(wg.weight[v]) for v in chosen), Fraction(0))
    return total, frozenset(chosen)


def brute_mwis(wg: WeightedGraph, limit: int = BRUTE_MWIS_LIMIT):
    """Exact maximum-weight independent set by enumerating all subsets.

    Ties go to the lexicographically least sorted vertex tuple.
    """
    g = wg.graph
    vs = g.sorted_vertices()
    if len(vs) > limit:
        raise SizeLimitError("brute_mwis vertices", len(vs), limit)
    n = len(vs)
    nbr = [0] * n
    index = {v: i for i, v in enumerate(vs)}
    for i, v in enumerate(vs):
        for u in g.neighbors(v):
            nbr[i] |= 1 << index[u]
    weights = [Fraction(wg.weight[v]) for v in vs]
    best_w, best_key, best_mask = Fraction(-1), None, 0
    for mask in range(1 << n):
        m, ok, w = mask, True, Fraction(0)
        while m:
            low = m & -m
            i = low.bit_length() - 1
            if nbr[i] & mask:
                ok = False
                break
            w += weights[i]
            m ^= low
        if not ok:
            continue
        if w > best_w or (w == best_w and _mask_key(mask, n) < best_key):
            best_w, best_key, best_mask = w, _mask_key(mask, n), mask
    return best_w, frozenset(vs[i] for i in range(n) if best_mask >> i & 1)


def _mask_key(mask: int, n: int) -> tuple:
    return tuple(i for i in range(n) if mask >> i & 1)
