"""Hypergraphs with named edges, points, restrictions and cover numbers."""

from itertools import combinations
from typing import Iterable, Mapping, NamedTuple

from .errors import InvalidInputError, SizeLimitError
from .graphs import Graph, distance2_independent_max, max_induced_matching
from .util import sorted_ids

COVER_SEARCH_LIMIT = 20
SUBHYPERGRAPH_SEARCH_LIMIT = 12
BETA_CN_MIM_LIMIT = 160


class Point(NamedTuple):
    vertex: str
    edge: str


class Hypergraph:
    """A finite set of nonempty vertex sets, each carrying a string id.

    Two ids may not name the same vertex set.
    """

    def __init__(self, edges: Mapping[str, Iterable[str]] = None):
        built = {}
        seen = {}
        for eid, vs in (edges or {}).items():
            if not isinstance(eid, str):
                raise InvalidInputError(f"edge id {eid!r} is not a string")
            vs = list(vs)
            fs = frozenset(vs)
            if len(fs) != len(vs):
                raise InvalidInputError(f"edge {eid!r} lists a vertex twice")
            if not fs:
                raise InvalidInputError(f"edge {eid!r} is empty")
            for v in fs:
                if not isinstance(v, str):
                    raise InvalidInputError(f"vertex {v!r} of edge {eid!r} is not a string")
            if fs in seen:
                raise InvalidInputError(f"edges {seen[fs]!r} and {eid!r} have the same vertex set")
            seen[fs] = eid
            built[eid] = fs
        self._edges = built

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[str]], prefix: str = "e") -> "Hypergraph":
        """Name distinct nonempty sets ``e0, e1, ...`` in sorted order."""
        uniq = sorted({frozenset(s) for s in sets if s}, key=lambda s: (len(s), sorted(s)))
        return cls({f"{prefix}{i}": s for i, s in enumerate(uniq)})

    @property
    def edges(self) -> dict:
        return dict(self._edges)

    def edge_ids(self) -> list[str]:
        return sorted(self._edges)

    def __getitem__(self, eid: str) -> frozenset:
        try:
            return self._edges[eid]
        except KeyError:
            raise InvalidInputError(f"unknown edge id {eid!r}") from None

    def __contains__(self, eid) -> bool:
        return eid in self._edges

    def __iter__(self):
        return iter(self.edge_ids())

    def __len__(self):
        return len(self._edges)

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self._edges == other._edges

    def __hash__(self):
        return hash(frozenset(self._edges.items()))

    def __repr__(self):
        body = ", ".join(f"{e}: {sorted(self._edges[e])}" for e in self.edge_ids())
        return f"Hypergraph({{{body}}})"

    @property
    def vertices(self) -> frozenset:
        out = set()
        for vs in self._edges.values():
            out |= vs
        return frozenset(out)

    @property
    def points(self) -> frozenset:
        return frozenset(Point(v, e) for e, vs in self._edges.items() for v in vs)

    def set_view(self) -> frozenset:
        return frozenset(self._edges.values())

    def sub(self, eids: Iterable[str]) -> "Hypergraph":
        """Subhypergraph on the given edge ids."""
        return Hypergraph({e: self[e] for e in eids})

    def edges_containing(self, v: str) -> list[str]:
        return [e for e in self.edge_ids() if v in self._edges[e]]


def restrict_edge(h: Hypergraph, e: str, points: Iterable) -> frozenset:
    """``e|_P``: vertices v of e with (v, e) in P."""
    vs = h[e]
    return frozenset(p[0] for p in points if p[1] == e and p[0] in vs)


def restrict_hypergraph(h: Hypergraph, points: Iterable) -> dict:
    """``H|_P`` keyed by edge id; edges with empty restriction are dropped."""
    out = {}
    for p in points:
        v, e = p
        if e not in h or v not in h[e]:
            raise InvalidInputError(f"{tuple(p)!r} is not a point of the hypergraph")
        out.setdefault(e, set()).add(v)
    return {e: frozenset(out[e]) for e in sorted(out)}


def restricted_vertices(h: Hypergraph, eids: Iterable[str], points: Iterable) -> frozenset:
    """``V(H'|_P)`` for the subhypergraph H' given by edge ids."""
    eids = set(eids)
    return frozenset(p[0] for p in points if p[1] in eids and p[0] in h[p[1]])


def induced(h: Hypergraph, xs: Iterable[str]) -> Hypergraph:
    """``H[X]``: nonempty intersections with X, duplicates collapsed.

    A collapsed set keeps the least id among the edges producing it.
    """
    xs = frozenset(xs)
    out = {}
    for e in h.edge_ids():
        s = h[e] & xs
        if s and s not in out:
            out[s] = e
    return Hypergraph({e: s for s, e in out.items()})


def _as_sets(h) -> list[frozenset]:
    """Collapsed, sorted list of nonempty vertex sets."""
    if isinstance(h, Hypergraph):
        sets = h.set_view()
    elif isinstance(h, Mapping):
        sets = {frozenset(s) for s in h.values()}
    else:
        sets = {frozenset(s) for s in h}
    return sorted((s for s in sets if s), key=lambda s: (len(s), sorted(s)))


def cover_number(h, limit: int = COVER_SEARCH_LIMIT) -> int:
    """Edge cover number rho(H), by subsets in increasing size."""
    sets = _as_sets(h)
    if len(sets) > limit:
        raise SizeLimitError("cover_number edges", len(sets), limit)
    universe = frozenset().union(*sets) if sets else frozenset()
    # drop sets strictly contained in another; they never help a minimum cover
    maximal = [s for s in sets if not any(s < t for t in sets)]
    for k in range(len(maximal) + 1):
        for combo in combinations(maximal, k):
            if frozenset().union(*combo) == universe:
                return k
    raise AssertionError("unreachable: all edges cover the vertex set")


def beta_cover_number(h, method: str = "mim", limit: int = None) -> int:
    """beta-cn(H): the largest cover number of a subhypergraph.

    ``method`` is ``"mim"`` (induced matching of the incidence graph),
    ``"alpha2"`` (distance-2 independence in the point graph) or
    ``"exhaustive"`` (cover number of every subhypergraph).
    """
    sets = _as_sets(h)
    if method == "mim":
        g = _incidence_of_sets(sets)
        return max_induced_matching(g, limit=limit or BETA_CN_MIM_LIMIT)
    if method == "alpha2":
        g = _point_graph_of_sets(sets)
        return distance2_independent_max(g, limit=limit or BETA_CN_MIM_LIMIT)
    if method == "exhaustive":
        lim = limit or SUBHYPERGRAPH_SEARCH_LIMIT
        if len(sets) > lim:
            raise SizeLimitError("beta_cover_number subhypergraphs", len(sets), lim)
        best = 0
        for mask in range(1 << len(sets)):
            sub = [s for i, s in enumerate(sets) if mask >> i & 1]
            if len(sub) > best:
                best = max(best, cover_number(sub))
        return best
    raise ValueError(f"unknown method {method!r}")


def _incidence_of_sets(sets: list[frozenset]) -> Graph:
    verts = set()
    for s in sets:
        verts |= s
    nodes = [("v", v) for v in verts] + [("e", i) for i in range(len(sets))]
    return Graph(nodes, ((("v", v), ("e", i)) for i, s in enumerate(sets) for v in s))


def _point_graph_of_sets(sets: list[frozenset]) -> Graph:
    pts = [(v, i) for i, s in enumerate(sets) for v in s]
    return Graph(pts, ((p, q) for p, q in combinations(pts, 2) if p[0] == q[0] or p[1] == q[1]))


def incidence_graph(h: Hypergraph) -> Graph:
    """Bipartite graph on ``('v', x)`` and ``('e', id)`` with x in e."""
    nodes = [("v", v) for v in h.vertices] + [("e", e) for e in h.edge_ids()]
    return Graph(nodes, ((("v", v), ("e", e)) for e in h.edge_ids() for v in h[e]))


def point_graph(h: Hypergraph) -> Graph:
    """Points of H, adjacent when they share a vertex or an edge."""
    pts = sorted_ids(h.points)
    return Graph(
        pts,
        ((p, q) for p, q in combinations(pts, 2) if p.vertex == q.vertex or p.edge == q.edge),
    )
