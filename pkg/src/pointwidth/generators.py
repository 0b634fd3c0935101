"""Seeded generators for hypergraphs, instances, decompositions and graphs,
plus exhaustive enumerations used by the acceptance corpus.

All random generators take a :class:`random.Random` so corpora are
reproducible from a single seed.
"""

import random
from fractions import Fraction
from itertools import combinations, permutations, product

import numpy as np

from .beta import beta_elimination_order
from .decomposition import RootedTree
from .graphs import Graph
from .hypergraph import Hypergraph
from .maxcsp import Constraint, MaxCspInstance
from .mim import BranchDecomposition


def _vname(i: int) -> str:
    return f"v{i}"


def random_hypergraph(rng: random.Random, n_vertices: int, n_edges: int, max_edge_size: int = None) -> Hypergraph:
    """Up to ``n_edges`` distinct random edges over ``v0 .. v{n-1}``."""
    vs = [_vname(i) for i in range(n_vertices)]
    max_edge_size = max_edge_size or n_vertices
    sets = set()
    tries = 0
    while len(sets) < n_edges and tries < 50 * n_edges + 50:
        tries += 1
        size = rng.randint(1, max_edge_size)
        sets.add(frozenset(rng.sample(vs, size)))
    return Hypergraph({f"e{i}": sorted(s) for i, s in enumerate(sorted(sets, key=sorted))})


def random_beta_acyclic(rng: random.Random, max_vertices: int = 6, max_edges: int = 5) -> Hypergraph:
    """Random beta-acyclic hypergraph built against a hidden random elimination order."""
    n = rng.randint(1, max_vertices)
    m = rng.randint(1, max_edges)
    vs = [_vname(i) for i in range(n)]
    order = vs[:]
    rng.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    edges = []
    for _ in range(40 * m):
        if len(edges) == m:
            break
        size = rng.randint(1, n)
        e = frozenset(rng.sample(vs, size))
        if e in edges:
            continue
        if _keeps_order(edges, e, rank):
            edges.append(e)
    return Hypergraph({f"e{i}": sorted(e) for i, e in enumerate(edges)})


def _keeps_order(edges, new, rank) -> bool:
    for x in new:
        tail = frozenset(v for v in new if rank[v] >= rank[x])
        for e in edges:
            if x in e:
                other = frozenset(v for v in e if rank[v] >= rank[x])
                if not (tail <= other or other <= tail):
                    return False
    return True


_ROW_LIST_LIMIT = 4096


def random_instance(
    rng: random.Random,
    h: Hypergraph,
    domain_size: int = 2,
    max_table: int = 8,
    extra_variables: int = 0,
) -> MaxCspInstance:
    """Random positive tables on every edge of ``h``; values are small rationals."""
    domain = tuple(str(i) for i in range(domain_size))
    variables = sorted(h.vertices) + [f"z{i}" for i in range(extra_variables)]
    cons = {}
    for e in h.edge_ids():
        scope = tuple(sorted(h[e]))
        total = domain_size ** len(scope)
        size = rng.randint(0, min(max_table, total))
        if total <= _ROW_LIST_LIMIT:
            picked = rng.sample(list(product(domain, repeat=len(scope))), size)
        else:
            # the full row list would not fit; draw distinct rows directly
            seen = set()
            picked = []
            while len(picked) < size:
                row = tuple(rng.choice(domain) for _ in scope)
                if row not in seen:
                    seen.add(row)
                    picked.append(row)
        table = {}
        for row in picked:
            table[row] = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        cons[e] = Constraint(scope, table)
    return MaxCspInstance(tuple(variables), domain, cons)


def random_branch_decomposition(rng: random.Random, h: Hypergraph) -> BranchDecomposition:
    """Random binary tree over the incidence vertices, built by random merges."""
    items = [("vertex", v) for v in sorted(h.vertices)] + [("edge", e) for e in h.edge_ids()]
    leaves = {}
    parent = {}
    pool = []
    for i, item in enumerate(items):
        name = f"l{i}"
        leaves[name] = item
        pool.append(name)
    counter = 0
    while len(pool) > 1:
        a, b = rng.sample(pool, 2)
        pool.remove(a)
        pool.remove(b)
        node = f"n{counter}"
        counter += 1
        parent[a] = node
        parent[b] = node
        pool.append(node)
    return BranchDecomposition(RootedTree(pool[0], parent), leaves)


def random_order(rng: random.Random, h: Hypergraph) -> list:
    vs = sorted(h.vertices)
    rng.shuffle(vs)
    return vs


def random_chordal_graph(rng: random.Random, n: int, p: float = 0.3) -> Graph:
    """Random graph made chordal by the elimination game on a random order."""
    vs = list(range(n))
    adj = {v: set() for v in vs}
    for a, b in combinations(vs, 2):
        if rng.random() < p:
            adj[a].add(b)
            adj[b].add(a)
    order = vs[:]
    rng.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in adj[v] if pos[u] > pos[v]]
        for a, b in combinations(later, 2):
            adj[a].add(b)
            adj[b].add(a)
    return Graph(vs, ((a, b) for a in vs for b in adj[a] if a < b))


def random_nonchordal_graph(rng: random.Random, n: int, p: float = 0.3, hole: int = None):
    """Random graph with a planted chordless cycle of length >= 4.

    Returns ``(graph, hole_vertices)``.
    """
    if n < 4:
        raise ValueError("need at least four vertices")
    hole = hole or rng.randint(4, n)
    vs = list(range(n))
    cyc = rng.sample(vs, hole)
    in_cycle = set(cyc)
    edges = set()
    for a, b in combinations(vs, 2):
        if a in in_cycle and b in in_cycle:
            continue
        if rng.random() < p:
            edges.add((a, b))
    for i in range(hole):
        a, b = cyc[i], cyc[(i + 1) % hole]
        edges.add((min(a, b), max(a, b)))
    return Graph(vs, edges), cyc


def random_weights(rng: random.Random, g: Graph, zero_prob: float = 0.15) -> dict:
    out = {}
    for v in g.sorted_vertices():
        if rng.random() < zero_prob:
            out[v] = Fraction(0)
        else:
            out[v] = Fraction(rng.randint(1, 20), rng.randint(1, 5))
    return out


# --------------------------------------------------------------- enumeration


def _beta_masks(n: int) -> list[int]:
    """Hypergraphs on {0..n-1} for which the identity order is a beta-elimination order.

    Each hypergraph is a bitmask over the nonempty vertex subsets, where
    subset s occupies bit s - 1.
    """
    suffix = [((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)]
    bymin = {i: [s for s in range(1, 1 << n) if s & -s == 1 << i] for i in range(n)}
    out = []

    def compatible(edges, new):
        for j in range(n):
            if new >> j & 1:
                a = new & suffix[j]
                for e in edges:
                    if e >> j & 1:
                        b = e & suffix[j]
                        if a & b != a and a & b != b:
                            return False
        return True

    def rec(i, edges):
        if i < 0:
            mask = 0
            for e in edges:
                mask |= 1 << (e - 1)
            out.append(mask)
            return
        cands = bymin[i]

        def pick(k, cur):
            if k == len(cands):
                rec(i - 1, cur)
                return
            pick(k + 1, cur)
            if compatible(cur, cands[k]):
                pick(k + 1, cur + [cands[k]])

        pick(0, edges)

    rec(n - 1, [])
    return out


def _canonical(masks: np.ndarray, n: int) -> np.ndarray:
    """Least image of each subset-bitmask under all vertex permutations."""
    nsub = (1 << n) - 1
    best = None
    for perm in permutations(range(n)):
        img = np.zeros_like(masks)
        for s in range(1, nsub + 1):
            t = 0
            for j in range(n):
                if s >> j & 1:
                    t |= 1 << perm[j]
            img |= ((masks >> np.int64(s - 1)) & np.int64(1)) << np.int64(t - 1)
        best = img if best is None else np.minimum(best, img)
    return best


def enumerate_beta_acyclic(max_vertices: int = 5) -> list[Hypergraph]:
    """One representative per isomorphism class of beta-acyclic hypergraphs
    whose vertex set is ``v0 .. v{n-1}`` with 1 <= n <= ``max_vertices``.

    Every beta-acyclic hypergraph is isomorphic to one where the identity
    order eliminates, so generating those and canonicalising is exhaustive.
    """
    out = []
    for n in range(1, max_vertices + 1):
        full = (1 << n) - 1
        masks = [m for m in _beta_masks(n) if _covered(m, n) == full]
        if not masks:
            continue
        canon = np.unique(_canonical(np.array(masks, dtype=np.int64), n))
        for m in canon.tolist():
            sets = [s for s in range(1, full + 1) if m >> (s - 1) & 1]
            out.append(
                Hypergraph(
                    {
                        f"e{i}": [_vname(j) for j in range(n) if s >> j & 1]
                        for i, s in enumerate(sets)
                    }
                )
            )
    return out


def _covered(mask: int, n: int) -> int:
    acc = 0
    s = 1
    while mask:
        if mask & 1:
            acc |= s
        mask >>= 1
        s += 1
    return acc


def all_hypergraphs(max_vertices: int = 4, max_edges: int = 4) -> list[Hypergraph]:
    """Every hypergraph over ``v0 .. v{max_vertices-1}`` with at most ``max_edges`` edges."""
    vs = [_vname(i) for i in range(max_vertices)]
    subsets = [frozenset(c) for r in range(1, max_vertices + 1) for c in combinations(vs, r)]
    out = []
    for m in range(0, max_edges + 1):
        for combo in combinations(subsets, m):
            out.append(Hypergraph({f"e{i}": sorted(s) for i, s in enumerate(combo)}))
    return out


def beta_acyclic_filter(hs) -> list[Hypergraph]:
    return [h for h in hs if beta_elimination_order(h) is not None]
