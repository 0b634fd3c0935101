"""Finite-valued Max-CSP instances in positive representation.

Assignments are plain dicts from variable to domain value. Sets of
assignments over a common variable set are stored as a :class:`Relation`
whose rows are tuples ordered by the sorted variable list.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, NamedTuple

from .errors import InvalidInputError, SizeLimitError
from .hypergraph import Hypergraph

BRUTE_FORCE_LIMIT = 10**7


@dataclass(frozen=True)
class Constraint:
    scope: tuple
    table: Mapping = field(default_factory=dict)

    def value(self, row: tuple) -> Fraction:
        return self.table.get(row, Fraction(0))


@dataclass(frozen=True)
class MaxCspInstance:
    variables: tuple
    domain: tuple
    constraints: Mapping

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "domain", tuple(self.domain))
        if len(set(self.variables)) != len(self.variables):
            raise InvalidInputError("variables are not distinct")
        if len(set(self.domain)) != len(self.domain):
            raise InvalidInputError("domain values are not distinct")
        if not self.domain:
            raise InvalidInputError("domain is empty")
        xs = set(self.variables)
        dom = set(self.domain)
        scopes = {}
        fixed = {}
        for eid in sorted(self.constraints):
            c = self.constraints[eid]
            scope = tuple(c.scope)
            if not scope:
                raise InvalidInputError(f"constraint {eid!r} has an empty scope")
            if len(set(scope)) != len(scope):
                raise InvalidInputError(f"scope of {eid!r} repeats a variable")
            if not set(scope) <= xs:
                raise InvalidInputError(f"scope of {eid!r} uses unknown variables")
            key = frozenset(scope)
            if key in scopes:
                raise InvalidInputError(f"constraints {scopes[key]!r} and {eid!r} share a scope")
            scopes[key] = eid
            table = {}
            for row, val in c.table.items():
                row = tuple(row)
                if len(row) != len(scope) or not set(row) <= dom:
                    raise InvalidInputError(f"bad tuple {row!r} in {eid!r}")
                val = Fraction(val)
                if val <= 0:
                    raise InvalidInputError(f"non-positive value for {row!r} in {eid!r}")
                if row in table:
                    raise InvalidInputError(f"tuple {row!r} listed twice in {eid!r}")
                table[row] = val
            fixed[eid] = Constraint(scope, table)
        object.__setattr__(self, "constraints", fixed)

    def size(self) -> int:
        return sum(len(c.scope) * (1 + len(c.table)) for c in self.constraints.values())


class Relation(NamedTuple):
    """Rows over ``variables`` (a sorted tuple)."""

    variables: tuple
    rows: frozenset

    def assignments(self) -> list[dict]:
        return [dict(zip(self.variables, r)) for r in sorted(self.rows)]


def relation(variables: Iterable, assignments: Iterable[Mapping]) -> Relation:
    vs = tuple(sorted(variables))
    return Relation(vs, frozenset(tuple(a[v] for v in vs) for a in assignments))


def project(r: Relation, variables: Iterable) -> Relation:
    keep = tuple(sorted(set(variables) & set(r.variables)))
    idx = [r.variables.index(v) for v in keep]
    return Relation(keep, frozenset(tuple(row[i] for i in idx) for row in r.rows))


def join(*rels: Relation) -> Relation:
    """All assignments on the union of variables whose restrictions lie in every input."""
    if not rels:
        return Relation((), frozenset({()}))
    acc = rels[0]
    for r in rels[1:]:
        acc = _join2(acc, r)
    return acc


def _join2(a: Relation, b: Relation) -> Relation:
    shared = [v for v in a.variables if v in b.variables]
    out_vars = tuple(sorted(set(a.variables) | set(b.variables)))
    ai = [a.variables.index(v) for v in shared]
    bi = [b.variables.index(v) for v in shared]
    index = {}
    for row in b.rows:
        index.setdefault(tuple(row[i] for i in bi), []).append(row)
    rows = set()
    for ra in a.rows:
        for rb in index.get(tuple(ra[i] for i in ai), ()):
            merged = dict(zip(a.variables, ra))
            merged.update(zip(b.variables, rb))
            rows.add(tuple(merged[v] for v in out_vars))
    return Relation(out_vars, frozenset(rows))


def hypergraph_of(inst: MaxCspInstance) -> Hypergraph:
    return Hypergraph({e: c.scope for e, c in inst.constraints.items()})


def support(inst: MaxCspInstance, e: str) -> Relation:
    """``R_e`` as a relation over the sorted scope."""
    try:
        c = inst.constraints[e]
    except KeyError:
        raise InvalidInputError(f"unknown constraint {e!r}") from None
    return relation(c.scope, (dict(zip(c.scope, row)) for row in c.table))


def value_of(inst: MaxCspInstance, psi: Mapping) -> Fraction:
    missing = [x for x in inst.variables if x not in psi]
    if missing:
        raise InvalidInputError(f"assignment misses variables {missing!r}")
    return partial_value(inst, psi)


def partial_value(inst: MaxCspInstance, psi: Mapping) -> Fraction:
    """Sum of the constraints whose scope is fully assigned by ``psi``."""
    total = Fraction(0)
    for c in inst.constraints.values():
        if all(x in psi for x in c.scope):
            total += c.value(tuple(psi[x] for x in c.scope))
    return total


def satisfies(inst: MaxCspInstance, psi: Mapping, e: str) -> bool:
    """``psi`` restricted to its overlap with e lies in the projected support of e.

    With no overlap this holds iff the support is nonempty.
    """
    c = inst.constraints.get(e)
    if c is None:
        raise InvalidInputError(f"unknown constraint {e!r}")
    idx = [i for i, x in enumerate(c.scope) if x in psi]
    want = tuple(psi[c.scope[i]] for i in idx)
    return any(tuple(row[i] for i in idx) == want for row in c.table)


def brute_force_opt(inst: MaxCspInstance, limit: int = BRUTE_FORCE_LIMIT):
    """Exact optimum by enumerating all assignments.

    Ties go to the first assignment in product order over ``variables``
    and ``domain``. Returns ``(value, assignment)``.
    """
    n = len(inst.variables)
    size = len(inst.domain) ** n
    if size > limit:
        raise SizeLimitError("brute_force_opt assignments", size, limit)
    pos = {x: i for i, x in enumerate(inst.variables)}
    compiled = [([pos[x] for x in c.scope], c.table) for c in inst.constraints.values()]
    zero = Fraction(0)
    best, best_row = None, None
    for row in product(inst.domain, repeat=n):
        total = zero
        for idx, table in compiled:
            v = table.get(tuple(row[i] for i in idx))
            if v is not None:
                total += v
        if best is None or total > best:
            best, best_row = total, row
    return best, dict(zip(inst.variables, best_row))
