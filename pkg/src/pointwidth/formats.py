"""JSON encoding of hypergraphs, instances and decompositions.

Every ``*_to_json`` output is canonical (sorted keys and lists), so
``dumps(load(dumps(x)))`` is byte-identical to ``dumps(x)``.
"""

import json
from fractions import Fraction

from .decomposition import (
    PointDecomposition,
    RootedTree,
    SimplifiedPointDecomposition,
    SubBag,
    _Index,
)
from .errors import InvalidInputError
from .hypergraph import Hypergraph, Point
from .maxcsp import Constraint, MaxCspInstance
from .mim import BranchDecomposition
from .util import format_fraction, order_key, parse_fraction, sorted_ids


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise InvalidInputError(f"duplicate key {k!r}")
        out[k] = v
    return out


def loads(text: str):
    try:
        return json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def read(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


def _need(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise InvalidInputError(f"missing field {key!r}")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise InvalidInputError(f"field {key!r} has the wrong type")
    return val


# ---------------------------------------------------------------- hypergraph


def hypergraph_to_json(h: Hypergraph) -> dict:
    return {"edges": {e: sorted(h[e]) for e in h.edge_ids()}}


def hypergraph_from_json(obj) -> Hypergraph:
    edges = _need(obj, "edges", dict)
    for e, vs in edges.items():
        if not isinstance(vs, list):
            raise InvalidInputError(f"edge {e!r} is not a list")
    return Hypergraph(edges)


# ------------------------------------------------------------------ instance


def instance_to_json(inst: MaxCspInstance) -> dict:
    cons = {}
    for e, c in sorted(inst.constraints.items()):
        rows = [{"tuple": list(r), "value": format_fraction(v)} for r, v in c.table.items()]
        rows.sort(key=lambda r: r["tuple"])
        cons[e] = {"scope": list(c.scope), "table": rows}
    return {"variables": list(inst.variables), "domain": list(inst.domain), "constraints": cons}


def instance_from_json(obj) -> MaxCspInstance:
    variables = _need(obj, "variables", list)
    domain = _need(obj, "domain", list)
    cons = {}
    for e, c in _need(obj, "constraints", dict).items():
        scope = _need(c, "scope", list)
        table = {}
        for row in _need(c, "table", list):
            tup = tuple(_need(row, "tuple", list))
            if tup in table:
                raise InvalidInputError(f"tuple {list(tup)!r} listed twice in {e!r}")
            try:
                table[tup] = parse_fraction(_need(row, "value"))
            except (ValueError, ZeroDivisionError) as exc:
                raise InvalidInputError(f"bad value in {e!r}: {exc}") from exc
        cons[e] = Constraint(tuple(scope), table)
    return MaxCspInstance(tuple(variables), tuple(domain), cons)


# ---------------------------------------------------------------------- tree


def tree_to_json(tree: RootedTree) -> dict:
    return {"root": tree.root, "parent": {c: p for c, p in sorted(tree.parent.items())}}


def tree_from_json(obj) -> RootedTree:
    root = _need(obj, "root", str)
    parent = _need(obj, "parent", dict)
    return RootedTree(root, parent)


# ------------------------------------------------------------ decompositions


def _bags_to_json(tree, bags) -> dict:
    return {t: sorted([p.vertex, p.edge] for p in bags[t]) for t in sorted_ids(tree.nodes)}


def _bags_from_json(obj) -> dict:
    bags = {}
    for t, pts in _need(obj, "bags", dict).items():
        out = set()
        for p in pts:
            if not (isinstance(p, list) and len(p) == 2):
                raise InvalidInputError(f"bad point {p!r} in bag {t!r}")
            out.add(Point(p[0], p[1]))
        if len(out) != len(pts):
            raise InvalidInputError(f"bag {t!r} lists a point twice")
        bags[t] = frozenset(out)
    return bags


def _subbag_to_json(s: SubBag) -> list:
    return [s.node, sorted(s.vertices)]


def pd_to_json(pd: PointDecomposition) -> dict:
    arcs = [[_subbag_to_json(a), _subbag_to_json(b)] for a, b in pd.sorted_arcs()]
    return {"tree": tree_to_json(pd.tree), "bags": _bags_to_json(pd.tree, pd.bags), "arcs": arcs}


def pd_from_json(obj, h: Hypergraph = None) -> PointDecomposition:
    """Load a point decomposition; with ``h`` every arc endpoint is checked to be a sub-bag."""
    tree = tree_from_json(_need(obj, "tree", dict))
    bags = _bags_from_json(obj)
    arcs = []
    for arc in _need(obj, "arcs", list):
        if not (isinstance(arc, list) and len(arc) == 2):
            raise InvalidInputError(f"bad arc {arc!r}")
        ends = []
        for s in arc:
            if not (isinstance(s, list) and len(s) == 2 and isinstance(s[1], list)):
                raise InvalidInputError(f"bad sub-bag {s!r}")
            if len(set(s[1])) != len(s[1]):
                raise InvalidInputError(f"sub-bag {s!r} repeats a vertex")
            ends.append(SubBag(s[0], frozenset(s[1])))
        arcs.append(tuple(ends))
    if len(set(arcs)) != len(arcs):
        raise InvalidInputError("an arc is listed twice")
    pd = PointDecomposition(tree, bags, frozenset(arcs))
    if h is not None:
        pts = h.points
        for t in sorted_ids(tree.nodes):
            if not pd.bags[t] <= pts:
                raise InvalidInputError(f"bag {t!r} holds points not in the hypergraph")
        idx = _Index(h, pd.bags)
        for a, b in pd.arcs:
            for s in (a, b):
                m = idx.mask(s.vertices)
                if m < 0 or not idx.is_member(s.node, m):
                    raise InvalidInputError(
                        f"({s.node!r}, {sorted(s.vertices)!r}) is not a sub-bag of its node"
                    )
    return pd


def spd_to_json(spd: SimplifiedPointDecomposition) -> dict:
    return {"tree": tree_to_json(spd.tree), "bags": _bags_to_json(spd.tree, spd.bags)}


def spd_from_json(obj, h: Hypergraph = None) -> SimplifiedPointDecomposition:
    tree = tree_from_json(_need(obj, "tree", dict))
    spd = SimplifiedPointDecomposition(tree, _bags_from_json(obj))
    if h is not None:
        pts = h.points
        for t in sorted_ids(tree.nodes):
            if not spd.bags[t] <= pts:
                raise InvalidInputError(f"bag {t!r} holds points not in the hypergraph")
    return spd


def branch_to_json(bd: BranchDecomposition) -> dict:
    leaves = {l: {"kind": k, "id": i} for l, (k, i) in sorted(bd.leaves.items(), key=lambda kv: order_key(kv[0]))}
    return {"tree": tree_to_json(bd.tree), "leaves": leaves}


def branch_from_json(obj) -> BranchDecomposition:
    tree = tree_from_json(_need(obj, "tree", dict))
    leaves = {}
    for l, spec in _need(obj, "leaves", dict).items():
        leaves[l] = (_need(spec, "kind", str), _need(spec, "id", str))
    return BranchDecomposition(tree, leaves)


def opt_to_json(value: Fraction, witness: dict = None) -> dict:
    out = {"opt": format_fraction(value)}
    if witness is not None:
        out["witness"] = {x: witness[x] for x in sorted(witness)}
    return out
