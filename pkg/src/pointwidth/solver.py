"""Dynamic programming over point decompositions.

Assignments are dicts; inside cell tables they are frozen as sorted
``(variable, value)`` tuples so they can serve as keys.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .decomposition import (
    SubBag,
    _Index,
    check_decomposable,
    width_of_pd,
)
from .errors import InvalidDecompositionError, NotChordalError, SizeLimitError
from .graphs import Graph, WeightedGraph, chordal_mwis, peo
from .hypergraph import Hypergraph, Point
from .maxcsp import MaxCspInstance, hypergraph_of, join, project, support
from .util import order_key, sorted_ids

PARTIAL_REALISATION_LIMIT = 10**5


def freeze(psi) -> tuple:
    return tuple(sorted(psi.items()))


def _sb_key(s: SubBag):
    return s.key()


def guards(h: Hypergraph, pd, s, k: int = None) -> list[frozenset]:
    """Inclusion-minimal edge sets whose restriction to the bag has vertex set S."""
    s = SubBag(s[0], frozenset(s[1]))
    bag = pd.bags[s.node]
    if not s.vertices:
        return [frozenset()]
    cand = []
    for e in h.edge_ids():
        r = frozenset(p.vertex for p in bag if p.edge == e)
        if r and r <= s.vertices:
            cand.append((e, r))
    limit = len(cand) if k is None else min(k, len(cand))
    out = []
    for size in range(1, limit + 1):
        for combo in combinations(cand, size):
            union = frozenset().union(*(r for _, r in combo))
            if union != s.vertices:
                continue
            minimal = all(
                frozenset().union(*(r for j, (_, r) in enumerate(combo) if j != i)) != s.vertices
                for i in range(size)
            )
            if minimal:
                out.append(frozenset(e for e, _ in combo))
    return out


def valid_assignments(inst: MaxCspInstance, h: Hypergraph, pd, s, k: int = None) -> list[dict]:
    """s-valid assignments: those on S satisfying at least one guard of s."""
    s = SubBag(s[0], frozenset(s[1]))
    rows = set()
    variables = tuple(sorted(s.vertices))
    for g in guards(h, pd, s, k):
        rels = [project(support(inst, e), s.vertices & h[e]) for e in sorted(g)]
        r = join(*rels)
        rows |= r.rows
    return [dict(zip(variables, row)) for row in sorted(rows)]


@dataclass
class CellTable:
    """``val(s, psi)`` for every sub-bag s and s-valid psi, with back-pointers."""

    values: dict = field(default_factory=dict)
    choice: dict = field(default_factory=dict)
    subbags: dict = field(default_factory=dict)
    valid: dict = field(default_factory=dict)
    graphs: int = 0

    def cells(self, s: SubBag) -> dict:
        return {psi: self.values[(s, psi)] for psi in self.valid[s]}


class _Local:
    """Sum of f_e over edges contained in a vertex set, cached per edge list."""

    def __init__(self, inst: MaxCspInstance):
        self.cons = [(tuple(c.scope), frozenset(c.scope), c.table) for _, c in sorted(inst.constraints.items())]
        self._inside = {}

    def inside(self, vs: frozenset) -> list:
        got = self._inside.get(vs)
        if got is None:
            got = [(sc, tb) for sc, fs, tb in self.cons if fs <= vs]
            self._inside[vs] = got
        return got

    def value(self, vs: frozenset, psi: dict) -> Fraction:
        total = Fraction(0)
        for sc, tb in self.inside(vs):
            v = tb.get(tuple(psi[x] for x in sc))
            if v is not None:
                total += v
        return total


def _structural_checks(h: Hypergraph, pd, k: int):
    pts = h.points
    for t in sorted_ids(pd.tree.nodes):
        if not pd.bags[t] <= pts:
            raise InvalidDecompositionError(f"bag of {t!r} holds non-points")
    idx = _Index(h, pd.bags)
    for a, b in pd.arcs:
        for s in (a, b):
            m = idx.mask(s.vertices)
            if m < 0 or not idx.is_member(s.node, m):
                raise InvalidDecompositionError(
                    f"arc endpoint ({s.node!r}, {sorted(s.vertices)!r}) is not a sub-bag"
                )
    for e in h.edge_ids():
        full = frozenset(Point(v, e) for v in h[e])
        if not any(full <= pd.bags[t] for t in pd.tree.nodes):
            raise InvalidDecompositionError(f"no bag contains all points of edge {e!r}")
    bad = check_decomposable(pd)
    if bad is not None:
        raise InvalidDecompositionError(f"T-structure is not decomposable at {bad!r}")
    w = width_of_pd(h, pd)
    if w > k:
        raise InvalidDecompositionError(f"decomposition has width {w} > {k}")


def compute_cells(inst: MaxCspInstance, pd, k: int = None, check: bool = True, on_graph=None) -> CellTable:
    """Fill ``val(s, psi)`` bottom-up over the tree.

    ``on_graph(s, psi, graph)`` is called with every per-cell graph.
    """
    h = hypergraph_of(inst)
    if k is None:
        k = width_of_pd(h, pd)
    if check:
        _structural_checks(h, pd, k)
    idx = _Index(h, pd.bags)
    table = CellTable()
    local = _Local(inst)
    inc = pd.in_arcs()
    arcset = pd.arcs
    for t in pd.tree.postorder():
        sbs = sorted((SubBag(t, idx.verts(m)) for m in idx.bounded_lattice(t, k)), key=_sb_key)
        table.subbags[t] = sbs
        for s in sbs:
            psis = [freeze(p) for p in valid_assignments(inst, h, pd, s, k)]
            table.valid[s] = psis
            preds = sorted(inc.get(s, ()), key=_sb_key)
            # best val(s', psi') grouped by the restriction to S ∩ S'
            best = {}
            for sp in preds:
                shared = s.vertices & sp.vertices
                groups = {}
                for psi2 in table.valid.get(sp, ()):
                    key = tuple(kv for kv in psi2 if kv[0] in shared)
                    v = table.values[(sp, psi2)]
                    cur = groups.get(key)
                    if cur is None or v > cur[0]:
                        groups[key] = (v, psi2)
                best[sp] = (shared, groups)
            for psi in psis:
                d = dict(psi)
                base = local.value(s.vertices, d)
                verts, weight, arg = [], {}, {}
                for sp in preds:
                    shared, groups = best[sp]
                    hit = groups.get(tuple(kv for kv in psi if kv[0] in shared))
                    if hit is None:
                        continue
                    w = hit[0] - local.value(shared, d)
                    verts.append(sp)
                    weight[sp] = w
                    arg[sp] = hit[1]
                g = Graph(
                    verts,
                    (
                        (a, b)
                        for a, b in combinations(verts, 2)
                        if a.node == b.node or (a, b) in arcset or (b, a) in arcset
                    ),
                )
                if on_graph is not None:
                    on_graph(s, psi, g)
                table.graphs += 1
                try:
                    order = peo(g)
                except NotChordalError as exc:
                    raise InvalidDecompositionError(
                        f"cell graph of ({s.node!r}, {sorted(s.vertices)!r}) is not chordal: {exc.cycle!r}"
                    ) from exc
                total, chosen = chordal_mwis(WeightedGraph(g, weight), order)
                table.values[(s, psi)] = base + total
                table.choice[(s, psi)] = tuple(
                    (sp, arg[sp]) for sp in sorted(chosen, key=_sb_key)
                )
    return table


def _traceback(table: CellTable, s: SubBag, psi: tuple, out: dict, members: list):
    members.append((s, psi))
    for x, v in psi:
        if out.setdefault(x, v) != v:
            raise InvalidDecompositionError(f"traceback conflict on variable {x!r}")
    for sp, psi2 in table.choice[(s, psi)]:
        _traceback(table, sp, psi2, out, members)


def solve(inst: MaxCspInstance, pd, k: int = None, witness: bool = False, check: bool = True):
    """Optimum of ``inst`` using the point decomposition ``pd``.

    Runs only fast structural checks (bags, arc endpoints, condition (i),
    decomposability, width); full validity is the caller's concern.
    Returns ``(opt, assignment or None)``.
    """
    table = compute_cells(inst, pd, k=k, check=check)
    root = pd.tree.root
    best = None
    for s in table.subbags[root]:
        for psi in table.valid[s]:
            v = table.values[(s, psi)]
            if best is None or v > best[0]:
                best = (v, s, psi)
    if best is None:
        raise InvalidDecompositionError("no valid assignment at any root sub-bag")
    opt = best[0]
    if not witness:
        return opt, None
    out = {}
    _traceback(table, best[1], best[2], out, [])
    full = {x: out.get(x, inst.domain[0]) for x in inst.variables}
    return opt, full


# ------------------------------------------------------ partial realisations


def glue(phi: dict) -> dict:
    """Union of the assignments of a consistent map sub-bag -> assignment."""
    out = {}
    for s in sorted(phi, key=_sb_key):
        for x, v in phi[s]:
            if out.setdefault(x, v) != v:
                raise InvalidDecompositionError(f"assignments disagree on {x!r}")
    return out


def tvalue(inst: MaxCspInstance, phi: dict) -> Fraction:
    """Value of a consistent assignment to a partial realisation."""
    psi = glue(phi)
    vs = [s.vertices for s in phi]
    total = Fraction(0)
    for _, c in sorted(inst.constraints.items()):
        scope = frozenset(c.scope)
        if any(scope <= S for S in vs):
            total += c.value(tuple(psi[x] for x in c.scope))
    return total


def enumerate_partial_realisations(inst: MaxCspInstance, pd, k: int = None, limit: int = PARTIAL_REALISATION_LIMIT):
    """Yield ``(sub_bags, parent, phi)`` for every partial realisation and consistent assignment.

    ``parent`` maps each non-sink sub-bag to its parent sub-bag in T_{A'};
    ``phi`` maps each sub-bag to a frozen s-valid assignment.
    """
    h = hypergraph_of(inst)
    if k is None:
        k = width_of_pd(h, pd)
    idx = _Index(h, pd.bags)
    tree = pd.tree
    sbs = {t: sorted((SubBag(t, idx.verts(m)) for m in idx.bounded_lattice(t, k)), key=_sb_key) for t in tree.nodes}
    valid = {s: [freeze(p) for p in valid_assignments(inst, h, pd, s, k)] for t in sbs for s in sbs[t]}
    out = pd.out_arcs()
    reaches_root = {}
    for t in sorted(tree.nodes, key=tree.depth):
        for s in sbs[t]:
            reaches_root[s] = t == tree.root or any(reaches_root.get(b, False) for b in out.get(s, ()))
    count = 0
    for t in tree.preorder():
        sub_order = [u for u in tree.preorder() if u == t or tree.below(u, t)]
        for sink in sbs[t]:
            if not reaches_root[sink]:
                continue
            for members, parent in _subtree_realisations(tree, sub_order, sbs, out, sink):
                for phi in _consistent(members, parent, valid):
                    count += 1
                    if count > limit:
                        raise SizeLimitError("enumerate_partial_realisations", count, limit)
                    yield frozenset(members), dict(parent), phi


def _subtree_realisations(tree, order, sbs, out, sink):
    chosen = {order[0]: sink}
    parent = {}

    def rec(i):
        if i == len(order):
            yield list(chosen.values()), dict(parent)
            return
        t = order[i]
        yield from rec(i + 1)
        for s in sbs[t]:
            targets = [b for b in out.get(s, ()) if chosen.get(b.node) == b]
            if not targets:
                continue
            chosen[t] = s
            parent[s] = max(targets, key=lambda b: tree.depth(b.node))
            yield from rec(i + 1)
            del chosen[t]
            del parent[s]

    yield from rec(1)


def _consistent(members, parent, valid):
    """Consistent assignments: tree-adjacent sub-bags agree on their overlap."""
    order = sorted(members, key=lambda s: len([p for p in _chain(s, parent)]))
    phi = {}

    def rec(i):
        if i == len(order):
            yield dict(phi)
            return
        s = order[i]
        p = parent.get(s)
        for psi in valid[s]:
            if p is not None:
                shared = s.vertices & p.vertices
                a = {kv for kv in psi if kv[0] in shared}
                b = {kv for kv in phi[p] if kv[0] in shared}
                if a != b:
                    continue
            phi[s] = psi
            yield from rec(i + 1)
            del phi[s]

    yield from rec(0)


def _chain(s, parent):
    while s in parent:
        s = parent[s]
        yield s
