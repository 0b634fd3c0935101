from fractions import Fraction
from itertools import product

import pytest

from pointwidth.decomposition import PointDecomposition, RootedTree, SubBag
from pointwidth.hypergraph import Hypergraph, Point
from pointwidth.maxcsp import Constraint, MaxCspInstance

# Running example: one big edge plus three spokes through x0.
EXAMPLE_EDGES = {
    "e": ["x0", "x1", "x2", "x3"],
    "e1": ["x0", "x1"],
    "e2": ["x0", "x2"],
    "e3": ["x0", "x3"],
}

# Path t4 - t3 - t2 - t1 - t0, rooted at t0.
EXAMPLE_PARENT = {"t4": "t3", "t3": "t2", "t2": "t1", "t1": "t0"}

EXAMPLE_BAGS = {
    "t0": [],
    "t1": [("x3", "e"), ("x3", "e3")],
    "t2": [("x0", "e"), ("x3", "e"), ("x0", "e1"), ("x0", "e2"), ("x0", "e3"), ("x3", "e3")],
    "t3": [("x0", "e"), ("x2", "e"), ("x3", "e"), ("x0", "e2"), ("x2", "e2")],
    "t4": [("x0", "e"), ("x1", "e"), ("x2", "e"), ("x3", "e"), ("x0", "e1"), ("x1", "e1")],
}

EXAMPLE_ARCS = [
    (("t1", ["x3"]), ("t0", [])),
    (("t2", ["x0"]), ("t0", [])),
    (("t2", ["x0"]), ("t1", ["x3"])),
    (("t2", ["x0", "x3"]), ("t1", ["x3"])),
    (("t3", ["x0", "x2"]), ("t2", ["x0"])),
    (("t3", ["x0", "x2"]), ("t2", ["x0", "x3"])),
    (("t3", ["x0", "x2", "x3"]), ("t2", ["x0", "x3"])),
    (("t4", ["x0", "x1"]), ("t3", ["x0", "x2", "x3"])),
    (("t4", ["x0", "x1"]), ("t2", ["x0"])),
    (("t4", ["x0", "x1"]), ("t2", ["x0", "x3"])),
    (("t4", ["x0", "x1", "x2", "x3"]), ("t3", ["x0", "x2", "x3"])),
]


def sb(node, vs=()):
    return SubBag(node, frozenset(vs))


@pytest.fixture
def example_h():
    return Hypergraph(EXAMPLE_EDGES)


@pytest.fixture
def example_pd():
    return example_decomposition()


def example_decomposition():
    bags = {t: frozenset(Point(v, e) for v, e in pts) for t, pts in EXAMPLE_BAGS.items()}
    arcs = frozenset((sb(*a), sb(*b)) for a, b in EXAMPLE_ARCS)
    return PointDecomposition(RootedTree("t0", EXAMPLE_PARENT), bags, arcs)


def ones_instance(h, domain=("0", "1")):
    """Every tuple of every edge has value 1."""
    cons = {}
    for e in h.edge_ids():
        scope = tuple(sorted(h[e]))
        cons[e] = Constraint(scope, {row: Fraction(1) for row in product(domain, repeat=len(scope))})
    return MaxCspInstance(tuple(sorted(h.vertices)), tuple(domain), cons)


# ------------------------------------------------------- acceptance summary

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
