"""Vertex assignments satisfying the edge conditions, and their algebra.

A spline assigns a ring element to every vertex so that across each edge
the difference of endpoint values lies in the ideal generated by the edge
label.  The `Spline` type re-verifies on construction, so holding one is
proof of validity; anything unverified travels as a `PartialAssignment`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Union

from . import intlinalg
from .graphs import EdgeLabeledGraph, GraphError
from .rings import (
    INTEGERS,
    INTEGERS_MOD,
    POLYNOMIAL,
    PrincipalIdeal,
    RingElement,
    RingMismatchError,
    UnsupportedRingError,
    exact_divide,
    ideal_member,
    merge_int_congruence,
    merge_poly_congruence,
    ring_lcm,
)


class SplineError(Exception):
    pass


class NotASplineError(SplineError):
    def __init__(self, violations):
        self.violations = violations
        lines = ", ".join(f"{u}-{v}" for u, v, _ in violations)
        super().__init__(f"edge conditions fail at: {lines}")


Violation = tuple[str, str, RingElement]  # (u, v, difference)


def verify(graph: EdgeLabeledGraph, values: Mapping[str, RingElement]) -> tuple[bool, list[Violation]]:
    """Check every edge condition; returns (ok, violated edges with differences)."""
    missing = [v for v in graph.vertices if v not in values]
    if missing:
        raise SplineError(f"missing values at vertices: {missing}")
    for v in graph.vertices:
        if values[v].ring != graph.ring:
            raise RingMismatchError(f"value at {v!r} lives in {values[v].ring}, not {graph.ring}")
    violations: list[Violation] = []
    for u, v, label in graph.edges:
        diff = values[u] - values[v]
        if not ideal_member(diff, PrincipalIdeal(label)):
            violations.append((u, v, diff))
    return not violations, violations


class Spline:
    """A verified spline; immutable by convention."""

    def __init__(self, graph: EdgeLabeledGraph, values: Mapping[str, RingElement]):
        ok, violations = verify(graph, values)
        if not ok:
            raise NotASplineError(violations)
        self.graph = graph
        self.values = dict(values)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def constant(graph: EdgeLabeledGraph, c: RingElement) -> "Spline":
        return Spline(graph, {v: c for v in graph.vertices})

    @staticmethod
    def zero(graph: EdgeLabeledGraph) -> "Spline":
        return Spline.constant(graph, graph.ring.zero())

    @staticmethod
    def ones(graph: EdgeLabeledGraph) -> "Spline":
        return Spline.constant(graph, graph.ring.one())

    # -- algebra ----------------------------------------------------------

    def _check(self, other: "Spline") -> None:
        if self.graph != other.graph:
            raise SplineError("splines live on different graphs")

    def __add__(self, other: "Spline") -> "Spline":
        self._check(other)
        return Spline(self.graph, {v: self.values[v] + other.values[v] for v in self.graph.vertices})

    def __sub__(self, other: "Spline") -> "Spline":
        self._check(other)
        return Spline(self.graph, {v: self.values[v] - other.values[v] for v in self.graph.vertices})

    def __mul__(self, other: "Spline") -> "Spline":
        self._check(other)
        return Spline(self.graph, {v: self.values[v] * other.values[v] for v in self.graph.vertices})

    def scale(self, c: RingElement) -> "Spline":
        return Spline(self.graph, {v: self.values[v] * c for v in self.graph.vertices})

    def __neg__(self) -> "Spline":
        return Spline(self.graph, {v: -self.values[v] for v in self.graph.vertices})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Spline) and self.graph == other.graph and self.values == other.values

    def is_zero(self) -> bool:
        return all(val.is_zero() for val in self.values.values())

    def support(self) -> list[str]:
        return [v for v in self.graph.vertices if not self.values[v].is_zero()]

    def __repr__(self) -> str:
        body = ", ".join(f"{v}: {self.values[v]}" for v in self.graph.vertices)
        return f"<spline {body}>"


def spline_arith(p: Spline, q: Spline, op: str) -> Spline:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    raise SplineError(f"unknown op {op!r}")


def restrict(p: Spline, sub: EdgeLabeledGraph) -> Spline:
    """Forget the vertices outside an induced subgraph."""
    for v in sub.vertices:
        if not p.graph.has_vertex(v):
            raise GraphError(f"vertex {v!r} does not come from the ambient graph")
    for u, v, label in sub.edges:
        if not p.graph.has_edge(u, v) or p.graph.label(u, v) != label:
            raise GraphError(f"edge {u!r}-{v!r} is not inherited from the ambient graph")
    return Spline(sub, {v: p.values[v] for v in sub.vertices})


def vertex_kernel_generator(graph: EdgeLabeledGraph, v: str) -> RingElement:
    """Generator of the values a spline supported only at v may take.

    That set is the intersection of the incident edge ideals, so the lcm
    of the incident labels; an isolated vertex is unconstrained (unit).
    """
    if not graph.ring.is_pid:
        raise UnsupportedRingError("vertex kernels need a PID ring")
    if not graph.has_vertex(v):
        raise GraphError(f"unknown vertex {v!r}")
    gen = graph.ring.one()
    for u, w, label in graph.edges_at(v):
        gen = ring_lcm(gen, label)
    return gen


# ----------------------------------------------------------------------
# extension (completing a partial assignment)
# ----------------------------------------------------------------------

@dataclass
class PartialAssignment:
    graph: EdgeLabeledGraph
    values: dict[str, RingElement]

    def __post_init__(self) -> None:
        for v, val in self.values.items():
            if not self.graph.has_vertex(v):
                raise GraphError(f"unknown vertex {v!r}")
            if val.ring != self.graph.ring:
                raise RingMismatchError(f"value at {v!r} lives in the wrong ring")

    def unknowns(self) -> list[str]:
        return [v for v in self.graph.vertices if v not in self.values]


Constraint = tuple[str, str, RingElement, RingElement]
# (known vertex, unknown vertex, modulus label, required residue)


@dataclass
class NoExtension:
    """Negative result of extend, with a conflicting pair when one is local."""

    reason: str
    conflict: Optional[tuple[Constraint, Constraint]] = None

    def __bool__(self) -> bool:
        return False


def extend(graph: EdgeLabeledGraph, partial: PartialAssignment) -> Union[Spline, NoExtension]:
    """Complete a partial assignment to a spline, canonically, or say why not.

    Over Z and Z/m every system is solved exactly; the returned values are
    the lexicographically least nonnegative solution in vertex order, so
    each solved vertex carries the least nonnegative value consistent with
    the choices made before it.  Over polynomial rings only single-unknown
    extension is offered.
    """
    if partial.graph != graph:
        raise SplineError("partial assignment belongs to a different graph")
    kind = graph.ring.kind
    unknowns = partial.unknowns()

    # known-known edges must already agree
    for u, v, label in graph.edges:
        if u in partial.values and v in partial.values:
            if not ideal_member(partial.values[u] - partial.values[v], PrincipalIdeal(label)):
                c1 = (u, v, label, partial.values[u])
                c2 = (v, u, label, partial.values[v])
                return NoExtension(f"assigned vertices {u!r}, {v!r} already violate their edge", (c1, c2))

    if not unknowns:
        return Spline(graph, dict(partial.values))

    if kind in (INTEGERS, INTEGERS_MOD):
        return _extend_integers(graph, partial, unknowns)
    if kind == POLYNOMIAL:
        if len(unknowns) > 1:
            raise UnsupportedRingError(
                "extension over polynomial rings is offered for a single unknown vertex"
            )
        return _extend_poly_single(graph, partial, unknowns[0])
    raise UnsupportedRingError(f"extension is not offered over {graph.ring}")


def _modulus_int(graph: EdgeLabeledGraph, label: RingElement) -> int:
    if graph.ring.kind == INTEGERS:
        return abs(label.value)
    return math.gcd(label.value, graph.ring.modulus)


def _extend_integers(
    graph: EdgeLabeledGraph, partial: PartialAssignment, unknowns: list[str]
) -> Union[Spline, NoExtension]:
    ring = graph.ring
    pos = {v: i for i, v in enumerate(unknowns)}
    rows: list[list[int]] = []
    rhs: list[int] = []
    moduli: list[int] = []
    local: dict[str, list[Constraint]] = {v: [] for v in unknowns}
    for u, v, label in graph.edges:
        m = _modulus_int(graph, label)
        if u in pos and v in pos:
            row = [0] * len(unknowns)
            row[pos[u]], row[pos[v]] = 1, -1
            rows.append(row)
            rhs.append(0)
            moduli.append(m)
        elif u in pos or v in pos:
            unknown, known = (u, v) if u in pos else (v, u)
            row = [0] * len(unknowns)
            row[pos[unknown]] = 1
            rows.append(row)
            rhs.append(partial.values[known].value)
            moduli.append(m)
            local[unknown].append((known, unknown, label, partial.values[known]))

    # a conflicting pair at a single vertex is the canonical certificate;
    # pairwise compatibility implies vertex-local solvability over Z
    for v in unknowns:
        seen: list[tuple[Constraint, int, int]] = []
        for constraint in local[v]:
            known, _, label, value = constraint
            m = _modulus_int(graph, label)
            r = value.value % m if m else value.value
            for earlier, er, em in seen:
                if merge_int_congruence(er, em, r, m) is None:
                    return NoExtension(
                        f"vertex {v!r} receives conflicting congruences from "
                        f"{earlier[0]!r} and {known!r}",
                        (earlier, constraint),
                    )
            seen.append((constraint, r, m))

    # full lattice solve: x + slacks, one slack per congruence row
    nvars = len(unknowns)
    nrows = len(rows)
    full_rows = []
    for i, row in enumerate(rows):
        slack = [0] * nrows
        slack[i] = moduli[i]
        full_rows.append(row + slack)
    solved = intlinalg.solve_with_kernel(full_rows, rhs)
    if solved is None:
        return NoExtension("the congruence system has no solution (non-local conflict)")
    particular, kernel = solved
    x = particular[:nvars]
    lattice = [k[:nvars] for k in kernel]
    # values may be shifted vertexwise by the lcm of everything (or by the
    # modulus over Z/m), which makes the projected lattice full rank
    wrap = graph.ring.modulus if ring.kind == INTEGERS_MOD else math.lcm(*(m or 1 for m in moduli), 1)
    for i in range(nvars):
        unit = [0] * nvars
        unit[i] = wrap
        lattice.append(unit)
    x = intlinalg.reduce_lex_least(x, lattice)
    values = dict(partial.values)
    for v, val in zip(unknowns, x):
        values[v] = ring.from_int(val)
    return Spline(graph, values)


def _extend_poly_single(
    graph: EdgeLabeledGraph, partial: PartialAssignment, unknown: str
) -> Union[Spline, NoExtension]:
    ring = graph.ring
    constraints: list[Constraint] = []
    for u, w, label in graph.edges_at(unknown):
        known = w if u == unknown else u
        if known in partial.values:
            constraints.append((known, unknown, label, partial.values[known]))
    if not constraints:
        values = dict(partial.values)
        values[unknown] = ring.zero()
        return Spline(graph, values)

    if len(ring.variables) == 1:
        residue, modulus = constraints[0][3], constraints[0][2]
        for constraint in constraints[1:]:
            merged = merge_poly_congruence(residue, modulus, constraint[3], constraint[2])
            if merged is None:
                return NoExtension(
                    f"vertex {unknown!r} receives conflicting polynomial congruences",
                    (constraints[0], constraint),
                )
            residue, modulus = merged
        values = dict(partial.values)
        values[unknown] = residue
        return Spline(graph, values)

    solution = _bounded_multivariate_solve(ring, constraints)
    if solution is None:
        return NoExtension(
            f"no multivariate solution at {unknown!r} within the degree bound",
            (constraints[0], constraints[-1]) if len(constraints) > 1 else None,
        )
    values = dict(partial.values)
    values[unknown] = solution
    return Spline(graph, values)


def _bounded_multivariate_solve(ring, constraints: list[Constraint]) -> Optional[RingElement]:
    """Search for x with x = a_i mod l_i by linear algebra up to a degree bound.

    Multivariate congruences have no division algorithm, so this solves for
    the coefficients of x and of the cofactors q_i in x - a_i = q_i * l_i,
    with deg(x) bounded by max deg(a_i) + max deg(l_i).  Complete within the
    bound; honest failure outside it.
    """
    from fractions import Fraction
    from .rings import RingElement as _RE, _canon

    bound = max(max(c[3].degree() for c in constraints), 0) + max(c[2].degree() for c in constraints)
    monos = _monomials(len(ring.variables), bound)
    mono_index = {m: i for i, m in enumerate(monos)}
    cols: list[dict[int, Fraction]] = []  # one column per unknown coefficient
    col_meta: list[tuple[str, int, tuple[int, ...]]] = []
    n_eq_rows = len(constraints) * len(monos)

    def row_of(ci: int, mono: tuple[int, ...]) -> int:
        return ci * len(monos) + mono_index[mono]

    # columns for x's coefficients: x appears in every constraint
    for mono in monos:
        col: dict[int, Fraction] = {}
        for ci in range(len(constraints)):
            col[row_of(ci, mono)] = Fraction(1)
        cols.append(col)
        col_meta.append(("x", -1, mono))
    # columns for each cofactor q_i (degree bounded so q_i*l_i fits)
    for ci, (_, _, label, _) in enumerate(constraints):
        qdeg = bound - label.degree()
        for mono in _monomials(len(ring.variables), max(qdeg, 0)):
            col = {}
            for le, lc in label.value:
                prod = tuple(a + b for a, b in zip(mono, le))
                if sum(prod) <= bound:
                    col[row_of(ci, prod)] = -lc
            cols.append(col)
            col_meta.append(("q", ci, mono))
    rhs = [Fraction(0)] * n_eq_rows
    for ci, (_, _, _, value) in enumerate(constraints):
        for e, c in value.value:
            rhs[row_of(ci, e)] = c
    matrix = [[col.get(r, Fraction(0)) for col in cols] for r in range(n_eq_rows)]
    solution = intlinalg.rational_solve(matrix, rhs)
    if solution is None:
        return None
    terms = {}
    for coeff, (kind, _, mono) in zip(solution, col_meta):
        if kind == "x" and coeff != 0:
            terms[mono] = coeff
    return _RE(ring, _canon(terms, ring.max_degree))


def _monomials(nvars: int, cap: int) -> list[tuple[int, ...]]:
    from .rings import _monomials_up_to

    return _monomials_up_to(nvars, cap)
