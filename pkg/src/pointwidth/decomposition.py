"""Point decompositions, simplified point decompositions and their validation.

A sub-bag of node t is a pair (t, S) where S is the vertex set of some
subhypergraph restricted to the bag of t. Equivalently, S is a union of
restricted edges ``e|_{B_t}``; the lattice of these unions is enumerated by
union closure.

Internally vertex sets are handled as bitmasks over the sorted vertex list
of the hypergraph.
"""

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple

from .errors import InvalidDecompositionError, InvalidInputError, SizeLimitError
from .hypergraph import Hypergraph, Point, beta_cover_number, restrict_hypergraph
from .util import order_key, sorted_ids

EXHAUSTIVE_SUBBAG_LIMIT = 20
REALISATION_PRODUCT_LIMIT = 10**6
# DFS steps allowed when exhaustively walking realisations
REALISATION_STEP_LIMIT = 2 * 10**6
REALISATION_SAMPLES = 10**4
STATE_LIMIT = 10**6
FAST_SUBSET_LIMIT = 4096
SPD_DEGREE_LIMIT = 20


class RootedTree:
    """Rooted tree given by a root and a child -> parent map."""

    def __init__(self, root, parent: Mapping = None):
        parent = dict(parent or {})
        if root in parent:
            raise InvalidInputError(f"root {root!r} has a parent")
        nodes = {root} | set(parent) | set(parent.values())
        for t in nodes:
            seen = {t}
            x = t
            while x != root:
                if x not in parent:
                    raise InvalidInputError(f"node {x!r} is a second root")
                x = parent[x]
                if x in seen:
                    raise InvalidInputError(f"parent map has a cycle through {x!r}")
                seen.add(x)
        self.root = root
        self.parent = parent
        self._nodes = frozenset(nodes)
        kids = {t: [] for t in nodes}
        for c, p in parent.items():
            kids[p].append(c)
        self._children = {t: tuple(sorted_ids(cs)) for t, cs in kids.items()}
        self._depth = {}
        for t in nodes:
            d, x = 0, t
            while x != root:
                x = parent[x]
                d += 1
            self._depth[t] = d

    @property
    def nodes(self) -> frozenset:
        return self._nodes

    def children(self, t) -> tuple:
        return self._children[t]

    def is_leaf(self, t) -> bool:
        return not self._children[t]

    def depth(self, t) -> int:
        return self._depth[t]

    def ancestors(self, t) -> list:
        """Strict ancestors, nearest first."""
        out = []
        while t != self.root:
            t = self.parent[t]
            out.append(t)
        return out

    def below(self, a, b) -> bool:
        """``a <_T b``: a is a strict descendant of b."""
        return a != b and b in self.ancestors(a)

    def adjacent(self, a, b) -> bool:
        return self.parent.get(a) == b or self.parent.get(b) == a

    def preorder(self) -> list:
        out, stack = [], [self.root]
        while stack:
            t = stack.pop()
            out.append(t)
            stack.extend(reversed(self._children[t]))
        return out

    def postorder(self) -> list:
        out = []

        def visit(t):
            for c in self._children[t]:
                visit(c)
            out.append(t)

        visit(self.root)
        return out

    def edges(self) -> list[tuple]:
        return sorted(self.parent.items(), key=order_key)

    def is_connected_subset(self, xs) -> bool:
        xs = set(xs)
        if not xs:
            return True
        tops = [t for t in xs if t == self.root or self.parent[t] not in xs]
        return len(tops) == 1

    def __eq__(self, other):
        if not isinstance(other, RootedTree):
            return NotImplemented
        return self.root == other.root and self.parent == other.parent

    def __repr__(self):
        return f"RootedTree(root={self.root!r}, {len(self._nodes)} nodes)"


class SubBag(NamedTuple):
    node: str
    vertices: frozenset

    def key(self):
        return (order_key(self.node), tuple(sorted(self.vertices)))


def subbag(node, vertices: Iterable = ()) -> SubBag:
    return SubBag(node, frozenset(vertices))


def _sorted_subbags(xs):
    return sorted(xs, key=SubBag.key)


@dataclass(frozen=True)
class PointDecomposition:
    tree: RootedTree
    bags: Mapping
    arcs: frozenset = frozenset()

    def __post_init__(self):
        bags = {t: frozenset(Point(*p) for p in self.bags.get(t, ())) for t in self.tree.nodes}
        extra = set(self.bags) - set(self.tree.nodes)
        if extra:
            raise InvalidInputError(f"bags for unknown nodes {sorted_ids(extra)!r}")
        object.__setattr__(self, "bags", bags)
        arcs = frozenset(
            (subbag(a[0], a[1]), subbag(b[0], b[1])) for a, b in self.arcs
        )
        for a, b in arcs:
            for s in (a, b):
                if s.node not in self.tree.nodes:
                    raise InvalidInputError(f"arc endpoint at unknown node {s.node!r}")
            if not self.tree.below(a.node, b.node):
                raise InvalidInputError(
                    f"arc {tuple(a)!r} -> {tuple(b)!r} does not go to a strict ancestor"
                )
        object.__setattr__(self, "arcs", arcs)

    def out_arcs(self) -> dict:
        out = {}
        for a, b in self.arcs:
            out.setdefault(a, set()).add(b)
        return out

    def in_arcs(self) -> dict:
        inc = {}
        for a, b in self.arcs:
            inc.setdefault(b, set()).add(a)
        return inc

    def sorted_arcs(self) -> list:
        return sorted(self.arcs, key=lambda ab: (ab[0].key(), ab[1].key()))


@dataclass(frozen=True)
class SimplifiedPointDecomposition:
    tree: RootedTree
    bags: Mapping

    def __post_init__(self):
        extra = set(self.bags) - set(self.tree.nodes)
        if extra:
            raise InvalidInputError(f"bags for unknown nodes {sorted_ids(extra)!r}")
        bags = {t: frozenset(Point(*p) for p in self.bags.get(t, ())) for t in self.tree.nodes}
        object.__setattr__(self, "bags", bags)


@dataclass(frozen=True)
class Realisation:
    sub_bags: frozenset
    arcs: frozenset

    @property
    def sinks(self) -> list:
        has_out = {a for a, _ in self.arcs}
        return _sorted_subbags(s for s in self.sub_bags if s not in has_out)


@dataclass
class ValidationReport:
    ok: bool = True
    complete: bool = True
    violations: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def fail(self, msg: str):
        self.ok = False
        self.violations.append(msg)

    @property
    def status(self) -> str:
        if not self.ok:
            return "invalid"
        return "valid" if self.complete else "partially validated"

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "status": self.status,
            "complete": self.complete,
            "violations": list(self.violations),
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------- sub-bags


class _Index:
    """Bitmask view of a hypergraph against a family of bags."""

    def __init__(self, h: Hypergraph, bags: Mapping):
        self.h = h
        self.vlist = sorted(h.vertices)
        self.vbit = {v: 1 << i for i, v in enumerate(self.vlist)}
        self.eids = h.edge_ids()
        self.nodes = sorted_ids(bags)
        self.rmask = {}
        for t in self.nodes:
            row = []
            for e in self.eids:
                m = 0
                for p in bags[t]:
                    if p[1] == e:
                        m |= self.vbit[p[0]]
                row.append(m)
            self.rmask[t] = row

    def mask(self, vs) -> int:
        m = 0
        for v in vs:
            if v not in self.vbit:
                return -1
            m |= self.vbit[v]
        return m

    def verts(self, m: int) -> frozenset:
        return frozenset(v for v in self.vlist if m & self.vbit[v])

    def distinct_restrictions(self, t) -> list[int]:
        return sorted({m for m in self.rmask[t] if m})

    def lattice(self, t) -> set:
        out = {0}
        for r in self.distinct_restrictions(t):
            out |= {x | r for x in out}
        return out

    def bounded_lattice(self, t, k: int) -> set:
        rs = self.distinct_restrictions(t)
        out = {0}
        for size in range(1, min(k, len(rs)) + 1):
            for combo in combinations(rs, size):
                m = 0
                for r in combo:
                    m |= r
                out.add(m)
        return out

    def is_member(self, t, m: int) -> bool:
        acc = 0
        for r in self.rmask[t]:
            if r and r & ~m == 0:
                acc |= r
        return acc == m

    def subset_mask(self, t, edge_mask: int) -> int:
        acc = 0
        row = self.rmask[t]
        while edge_mask:
            low = edge_mask & -edge_mask
            acc |= row[low.bit_length() - 1]
            edge_mask ^= low
        return acc


def enumerate_subbags(h: Hypergraph, pd, t, k: int = None, mode: str = None) -> set:
    """All sub-bags (t, S) of node t.

    ``mode`` is ``"bounded"`` (unions of at most k restricted edges; the
    default when k is given), ``"closure"`` (union closure; the default
    otherwise) or ``"exhaustive"`` (every subset of edges).
    """
    idx = _Index(h, {t: pd.bags[t]})
    if mode is None:
        mode = "bounded" if k is not None else "closure"
    if mode == "bounded":
        if k is None:
            raise ValueError("bounded mode needs k")
        masks = idx.bounded_lattice(t, k)
    elif mode == "closure":
        masks = idx.lattice(t)
    elif mode == "exhaustive":
        m = len(idx.eids)
        if m > EXHAUSTIVE_SUBBAG_LIMIT:
            raise SizeLimitError("enumerate_subbags exhaustive edges", m, EXHAUSTIVE_SUBBAG_LIMIT)
        masks = {idx.subset_mask(t, em) for em in range(1 << m)}
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return {SubBag(t, idx.verts(m)) for m in masks}


def is_subbag(h: Hypergraph, pd, s) -> bool:
    s = subbag(*s)
    if s.node not in pd.tree.nodes:
        return False
    idx = _Index(h, {s.node: pd.bags[s.node]})
    m = idx.mask(s.vertices)
    return m >= 0 and idx.is_member(s.node, m)


# ---------------------------------------------------------- decomposability


def reach_nodes(pd) -> dict:
    """For each arc endpoint s, the nodes owning a sub-bag with a path to s."""
    inc = pd.in_arcs()
    ends = {a for a, _ in pd.arcs} | {b for _, b in pd.arcs}
    out = {}
    for s in sorted(ends, key=lambda s: (-pd.tree.depth(s.node), s.key())):
        r = {s.node}
        for p in inc.get(s, ()):
            r |= out[p]
        out[s] = r
    return out


def check_decomposable(pd):
    """None if the T-structure is decomposable, else a violating ``(s, s1, s2)``."""
    reach = reach_nodes(pd)
    inc = pd.in_arcs()
    arcs = pd.arcs
    for s in _sorted_subbags(inc):
        for s1, s2 in combinations(_sorted_subbags(inc[s]), 2):
            if s1.node == s2.node:
                continue
            if not reach[s1] & reach[s2]:
                continue
            if (s1, s2) not in arcs and (s2, s1) not in arcs:
                return (s, s1, s2)
    return None


# ------------------------------------------------------------- realisations


def _induced_arcs(pd, xs) -> frozenset:
    xs = set(xs)
    return frozenset((a, b) for a, b in pd.arcs if a in xs and b in xs)


def _components(xs, arcs) -> list[set]:
    parent = {x: x for x in xs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in arcs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups = {}
    for x in xs:
        groups.setdefault(find(x), set()).add(x)
    return list(groups.values())


def restrict_tstructure(pd, h: Hypergraph, hp: Iterable[str]) -> Realisation:
    """``A[H']_∅`` for the subhypergraph with edge ids ``hp``."""
    hp = set(hp)
    for e in hp:
        h[e]
    xs = set()
    for t in pd.tree.nodes:
        xs.add(SubBag(t, frozenset(p.vertex for p in pd.bags[t] if p.edge in hp)))
    arcs = _induced_arcs(pd, xs)
    keep = set()
    for comp in _components(xs, arcs):
        if any(s.node == pd.tree.root or s.vertices for s in comp):
            keep |= comp
    return Realisation(frozenset(keep), _induced_arcs(pd, keep))


def is_realisation(pd, xs) -> bool:
    xs = {subbag(*s) for s in xs}
    if not xs:
        return False
    nodes = [s.node for s in xs]
    if len(set(nodes)) != len(nodes):
        return False
    arcs = _induced_arcs(pd, xs)
    sinks = xs - {a for a, _ in arcs}
    return len(sinks) == 1 and next(iter(sinks)).node == pd.tree.root


def is_partial_realisation(pd, xs) -> bool:
    xs = {subbag(*s) for s in xs}
    if not xs:
        return False
    nodes = [s.node for s in xs]
    if len(set(nodes)) != len(nodes):
        return False
    arcs = _induced_arcs(pd, xs)
    sinks = xs - {a for a, _ in arcs}
    if len(sinks) != 1:
        return False
    sink = next(iter(sinks))
    out = pd.out_arcs()
    seen, stack = {sink}, [sink]
    while stack:
        s = stack.pop()
        if s.node == pd.tree.root:
            return True
        for b in out.get(s, ()):
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return False


def tree_of(pd, xs) -> RootedTree:
    """``T_{A'}``: each node's parent is the deepest target of its out-arcs."""
    xs = {subbag(*s) for s in xs}
    by_node = {s.node: s for s in xs}
    if len(by_node) != len(xs):
        raise InvalidDecompositionError("two sub-bags of the same node")
    arcs = _induced_arcs(pd, xs)
    targets = {}
    for a, b in arcs:
        targets.setdefault(a.node, set()).add(b.node)
    roots = [t for t in by_node if t not in targets]
    if len(roots) != 1:
        raise InvalidDecompositionError(f"expected one sink, found {len(roots)}")
    parent = {}
    for t, ts in targets.items():
        best = max(ts, key=pd.tree.depth)
        for u in ts:
            if u != best and not pd.tree.below(best, u):
                raise InvalidDecompositionError(f"targets of {t!r} are not a chain")
        parent[t] = best
    return RootedTree(roots[0], parent)


def connectivity_violation(pd, xs):
    """First vertex whose sub-bag nodes are disconnected in ``tree_of``, or None."""
    xs = {subbag(*s) for s in xs}
    tree = tree_of(pd, xs)
    by_node = {s.node: s for s in xs}
    for v in sorted(set().union(*(s.vertices for s in xs))):
        if not tree.is_connected_subset(t for t, s in by_node.items() if v in s.vertices):
            return v
    return None


# --------------------------------------------------------------- validation


class _Compiled:
    """Sub-bag lattices and arcs of a pd as bitmasks, for the validators."""

    def __init__(self, h: Hypergraph, pd):
        self.idx = idx = _Index(h, pd.bags)
        self.tree = pd.tree
        self.order = pd.tree.preorder()
        self.pos = {t: i for i, t in enumerate(self.order)}
        self.lattice = {t: sorted(idx.lattice(t)) for t in self.order}
        self.out = {}
        for a, b in pd.arcs:
            ma, mb = idx.mask(a.vertices), idx.mask(b.vertices)
            self.out.setdefault((a.node, ma), []).append((b.node, mb))
        self.depth = {t: pd.tree.depth(t) for t in self.order}

    def eligible(self, t, chosen: dict) -> list[tuple]:
        """Sub-bags of t with an out-arc to a chosen sub-bag, with their T_{A'} parent."""
        out = []
        for m in self.lattice[t]:
            best = None
            for (u, mu) in self.out.get((t, m), ()):
                if chosen.get(u) == mu and (best is None or self.depth[u] > self.depth[best]):
                    best = u
            if best is not None:
                out.append((m, best))
        return out


def _check_state(c: _Compiled, state: dict):
    """Condition (ii) for one assignment node -> mask; returns an error or None."""
    root = c.tree.root
    nodes = c.order
    arcs = []
    for t in nodes:
        for (u, mu) in c.out.get((t, state[t]), ()):
            if state[u] == mu:
                arcs.append((t, u))
    comps = _components(nodes, arcs)
    has_out = {a for a, _ in arcs}
    for comp in comps:
        if not any(t == root or state[t] for t in comp):
            continue
        for t in comp:
            if t != root and t not in has_out:
                return t
    return None


def _realisation_from_state(c: _Compiled, state: dict) -> dict:
    """``A[H']_∅`` as node -> (mask, T_{A'} parent)."""
    root = c.tree.root
    arcs = []
    for t in c.order:
        for (u, mu) in c.out.get((t, state[t]), ()):
            if state[u] == mu:
                arcs.append((t, u))
    keep = set()
    for comp in _components(c.order, arcs):
        if any(t == root or state[t] for t in comp):
            keep |= comp
    chosen = {}
    for t in c.order:
        if t not in keep:
            continue
        targets = [u for a, u in arcs if a == t and u in keep]
        parent = max(targets, key=lambda u: c.depth[u]) if targets else None
        chosen[t] = (state[t], parent)
    return chosen


def _tops_violation(c: _Compiled, chosen: dict):
    """Vertex mask entering the realisation at two separate tops, or 0."""
    seen = 0
    for t in c.order:
        if t not in chosen:
            continue
        m, parent = chosen[t]
        top = m & ~chosen[parent][0] if parent is not None else m
        if top & seen:
            return top & seen
        seen |= top
    return 0


def _enumerate_states(c: _Compiled, limit: int):
    """Distinct node -> mask tuples over all subhypergraphs, by incremental OR."""
    nodes = c.order
    width = max(1, len(c.idx.vlist))
    edge_words = []
    for j in range(len(c.idx.eids)):
        w = 0
        for i, t in enumerate(nodes):
            w |= c.idx.rmask[t][j] << (i * width)
        edge_words.append(w)
    states = {0}
    for w in edge_words:
        states |= {s | w for s in states}
        if len(states) > limit:
            raise SizeLimitError("validate_pd subhypergraph states", len(states), limit)
    full = (1 << width) - 1
    for s in sorted(states):
        yield {t: (s >> (i * width)) & full for i, t in enumerate(nodes)}


def _sample_states(c: _Compiled, rng: random.Random, count: int):
    m = len(c.idx.eids)
    for _ in range(count):
        em = rng.getrandbits(m) if m else 0
        yield {t: c.idx.subset_mask(t, em) for t in c.order}


def validate_pd(h: Hypergraph, pd, mode: str = "exhaustive", seed: int = 0) -> ValidationReport:
    """Check that ``pd`` is a point decomposition of ``h``.

    Exhaustive mode checks condition (ii) on every subhypergraph and
    condition (iii) on every realisation when the depth-first walk over
    realisations finishes within ``REALISATION_STEP_LIMIT`` steps; otherwise
    it falls back to the ``A[H']_∅`` family plus random realisations and marks
    the report incomplete. Fast mode always samples.
    """
    if mode not in ("fast", "exhaustive"):
        raise ValueError(f"unknown mode {mode!r}")
    rep = ValidationReport()
    pts = h.points
    for t in sorted_ids(pd.tree.nodes):
        bad = pd.bags[t] - pts
        if bad:
            rep.fail(f"bag of {t!r} holds non-points {sorted_ids(bad)!r}")
    if not rep.ok:
        return rep
    c = _Compiled(h, pd)
    for a, b in pd.sorted_arcs():
        for s in (a, b):
            m = c.idx.mask(s.vertices)
            if m < 0 or not c.idx.is_member(s.node, m):
                rep.fail(f"arc endpoint ({s.node!r}, {sorted(s.vertices)!r}) is not a sub-bag")
    if not rep.ok:
        return rep
    bad = check_decomposable(pd)
    if bad is not None:
        s, s1, s2 = bad
        rep.fail(
            "not decomposable: arcs into "
            f"({s.node!r}, {sorted(s.vertices)!r}) from ({s1.node!r}, {sorted(s1.vertices)!r}) "
            f"and ({s2.node!r}, {sorted(s2.vertices)!r}) are incomparable"
        )
    for e in h.edge_ids():
        full = frozenset(Point(v, e) for v in h[e])
        if not any(full <= pd.bags[t] for t in pd.tree.nodes):
            rep.fail(f"condition (i): no bag contains all points of edge {e!r}")

    rng = random.Random(seed)
    m = len(h)
    if mode == "exhaustive":
        try:
            states = list(_enumerate_states(c, STATE_LIMIT))
        except SizeLimitError as exc:
            rep.complete = False
            rep.notes.append(f"condition (ii) sampled: {exc}")
            states = list(_sample_states(c, rng, REALISATION_SAMPLES))
    else:
        rep.complete = False
        if m <= 12 and (1 << m) <= FAST_SUBSET_LIMIT:
            states = list(_enumerate_states(c, STATE_LIMIT))
        else:
            states = list(_sample_states(c, rng, FAST_SUBSET_LIMIT))
            rep.notes.append("condition (ii) sampled over subhypergraphs")

    for st in states:
        bad_t = _check_state(c, st)
        if bad_t is not None:
            desc = {t: sorted(c.idx.verts(st[t])) for t in c.order}
            rep.fail(f"condition (ii): A[H']_∅ has a second sink at {bad_t!r} for sub-bags {desc!r}")
            break
        real = _realisation_from_state(c, st)
        top = _tops_violation(c, real)
        if top:
            rep.fail(
                f"condition (iii): vertices {sorted(c.idx.verts(top))!r} disconnected "
                "in an A[H']_∅ realisation"
            )
            break
    if not rep.ok:
        return rep

    exhausted = False
    if mode == "exhaustive":
        try:
            found = _all_realisations_connected(c, REALISATION_STEP_LIMIT)
            exhausted = True
        except SizeLimitError as exc:
            rep.complete = False
            rep.notes.append(f"condition (iii) sampled: {exc}")
    if not exhausted:
        found = _sampled_realisations_connected(c, rng, REALISATION_SAMPLES)
    if found:
        rep.fail(found)
    return rep


def _describe(c: _Compiled, chosen: dict) -> str:
    parts = [f"({t!r}, {sorted(c.idx.verts(m))!r})" for t, (m, _) in chosen.items()]
    return "{" + ", ".join(parts) + "}"


def _all_realisations_connected(c: _Compiled, limit: int):
    """Depth-first over realisations in preorder; reports the first violation."""
    order = c.order
    root = c.tree.root
    chosen = {}
    masks = {}
    steps = 0

    def rec(i: int, seen: int):
        nonlocal steps
        steps += 1
        if steps > limit:
            raise SizeLimitError("validate_pd realisation walk steps", steps, limit)
        if i == len(order):
            return None
        t = order[i]
        if t == root:
            options = [(m, None) for m in c.lattice[t]]
        else:
            options = [(None, None)] + c.eligible(t, masks)
        for m, parent in options:
            if m is None:
                err = rec(i + 1, seen)
            else:
                top = m & ~masks[parent] if parent is not None else m
                chosen[t] = (m, parent)
                masks[t] = m
                if top & seen:
                    err = (
                        f"condition (iii): vertices {sorted(c.idx.verts(top & seen))!r} "
                        f"disconnected in realisation {_describe(c, chosen)}"
                    )
                else:
                    err = rec(i + 1, seen | top)
                del chosen[t]
                del masks[t]
            if err:
                return err
        return None

    return rec(0, 0)


def _sampled_realisations_connected(c: _Compiled, rng: random.Random, count: int):
    root = c.tree.root
    for _ in range(count):
        chosen, masks, seen = {}, {}, 0
        for t in c.order:
            if t == root:
                lat = c.lattice[t]
                opt = (lat[rng.randrange(len(lat))], None)
            else:
                opts = c.eligible(t, masks)
                k = rng.randrange(len(opts) + 1)
                if k == len(opts):
                    continue
                opt = opts[k]
            m, parent = opt
            top = m & ~masks[parent] if parent is not None else m
            chosen[t] = opt
            masks[t] = m
            if top & seen:
                return (
                    f"condition (iii): vertices {sorted(c.idx.verts(top & seen))!r} "
                    f"disconnected in realisation {_describe(c, chosen)}"
                )
            seen |= top
    return None


def enumerate_realisations(h: Hypergraph, pd, limit: int = REALISATION_PRODUCT_LIMIT):
    """Yield every realisation as a frozenset of sub-bags."""
    c = _Compiled(h, pd)
    order = c.order
    root = c.tree.root
    masks = {}
    count = 0

    def rec(i):
        nonlocal count
        if i == len(order):
            count += 1
            if count > limit:
                raise SizeLimitError("enumerate_realisations", count, limit)
            yield frozenset(SubBag(t, c.idx.verts(m)) for t, m in masks.items())
            return
        t = order[i]
        if t == root:
            options = list(c.lattice[t])
        else:
            options = [None] + [m for m, _ in c.eligible(t, masks)]
        for m in options:
            if m is None:
                yield from rec(i + 1)
            else:
                masks[t] = m
                yield from rec(i + 1)
                del masks[t]

    yield from rec(0)


# ---------------------------------------------------------------- measures


def width_of_pd(h: Hypergraph, pd) -> int:
    """Largest beta cover number of a restricted bag."""
    return max(
        (beta_cover_number(restrict_hypergraph(h, pd.bags[t])) for t in pd.tree.nodes),
        default=0,
    )


def is_flat(pd) -> bool:
    return all(pd.tree.adjacent(a.node, b.node) for a, b in pd.arcs)


def validate_spd(h: Hypergraph, spd) -> ValidationReport:
    """Check conditions (1) and (2) of a simplified point decomposition.

    Condition (2) only depends on the edges containing v, so for each vertex
    the search runs over subsets of its incident edges. Single points and
    pairs are checked first as a fast necessary filter.
    """
    rep = ValidationReport()
    pts = h.points
    tree = spd.tree
    for t in sorted_ids(tree.nodes):
        bad = spd.bags[t] - pts
        if bad:
            rep.fail(f"bag of {t!r} holds non-points {sorted_ids(bad)!r}")
    if not rep.ok:
        return rep
    for e in h.edge_ids():
        full = frozenset(Point(v, e) for v in h[e])
        if not any(full <= spd.bags[t] for t in tree.nodes):
            rep.fail(f"condition (1): no bag contains all points of edge {e!r}")
    nodes = sorted_ids(tree.nodes)
    nbit = {t: 1 << i for i, t in enumerate(nodes)}
    parent_bit = {t: (nbit[tree.parent[t]] if t != tree.root else 0) for t in nodes}

    def connected(mask: int) -> bool:
        if not mask:
            return True
        tops = 0
        for t in nodes:
            if mask & nbit[t] and not mask & parent_bit[t]:
                tops += 1
                if tops > 1:
                    return False
        return True

    for v in sorted(h.vertices):
        es = h.edges_containing(v)
        if len(es) > SPD_DEGREE_LIMIT:
            raise SizeLimitError("validate_spd vertex degree", len(es), SPD_DEGREE_LIMIT)
        occ = []
        for e in es:
            m = 0
            for t in nodes:
                if Point(v, e) in spd.bags[t]:
                    m |= nbit[t]
            occ.append(m)
        bad = None
        for i, m in enumerate(occ):
            if not connected(m):
                bad = [es[i]]
                break
        if bad is None:
            for i, j in combinations(range(len(occ)), 2):
                if not connected(occ[i] | occ[j]):
                    bad = [es[i], es[j]]
                    break
        if bad is None:
            seen = {0}
            for m in occ:
                seen |= {x | m for x in seen}
            for m in sorted(seen):
                if not connected(m):
                    chosen = [e for e, o in zip(es, occ) if o & ~m == 0 and o]
                    bad = chosen
                    break
        if bad is not None:
            rep.fail(f"condition (2): vertex {v!r} disconnected for edges {bad!r}")
    return rep
