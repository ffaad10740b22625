"""Flow-up bases over effective PIDs via vertex elimination.

The algorithm removes the highest-ranked vertex at a time: its neighbors
get new edges labeled by ideal sums (gcd), parallel edges collapse by
intersection (lcm), and once a tree remains the explicit subtree basis
applies.  Unwinding, the eliminated vertex contributes the kernel class
carrying the lcm of its incident labels, and every existing element lifts
across it.  A lift first tries the constant extension by the element's
leading value and otherwise takes the least nonnegative congruence
solution; the lift is always solvable because each reduced graph's spline
ring is a quotient of the original one.

An independent integer-lattice oracle (Hermite normal form of the
congruence lattice) cross-checks the span, and a brute-force enumerator
measures ranks over Z/m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from . import intlinalg
from .graphs import (
    DirectedGraph,
    EdgeLabeledGraph,
    GraphError,
    LabeledMultigraph,
    collapse_multiedges,
)
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
    ring_gcd,
    ring_lcm,
)
from .splines import Spline, vertex_kernel_generator


class BasisError(Exception):
    pass


class FlowUpBasis:
    """Ordered basis elements, one per vertex, triangular in the given order.

    The order is a solve order: every element vanishes at the leading
    vertices of all elements placed before it, so expansion coefficients
    come from successive exact divisions.
    """

    def __init__(self, graph: EdgeLabeledGraph, elements: Sequence[tuple[str, Spline]]):
        self.graph = graph
        self.elements = tuple(elements)
        leads = [lead for lead, _ in self.elements]
        if sorted(leads) != sorted(set(leads)):
            raise BasisError("leading vertices must be distinct")
        if len(self.elements) != len(graph.vertices):
            raise BasisError(
                f"{len(self.elements)} elements for {len(graph.vertices)} vertices"
            )
        for i, (lead, spline) in enumerate(self.elements):
            if spline.graph != graph:
                raise BasisError(f"element {i} lives on a different graph")
            if spline.values[lead].is_zero():
                raise BasisError(f"element {i} vanishes at its leading vertex {lead!r}")
            for j in range(i):
                earlier_lead = self.elements[j][0]
                if not spline.values[earlier_lead].is_zero():
                    raise BasisError(
                        f"element {i} (leading {lead!r}) is nonzero at the earlier "
                        f"leading vertex {earlier_lead!r}"
                    )

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leading_vertices(self) -> list[str]:
        return [lead for lead, _ in self.elements]

    def element(self, lead: str) -> Spline:
        for cand, spline in self.elements:
            if cand == lead:
                return spline
        raise BasisError(f"no element with leading vertex {lead!r}")

    def leading_value(self, lead: str) -> RingElement:
        return self.element(lead).values[lead]

    def solve(self, p: Spline) -> Optional[list[RingElement]]:
        """Expansion coefficients of p in solve order, or None if not in the span."""
        if p.graph != self.graph:
            raise RingMismatchError("spline lives on a different graph")
        residual = {v: p.values[v] for v in self.graph.vertices}
        coeffs: list[RingElement] = []
        for lead, spline in self.elements:
            q = exact_divide(residual[lead], spline.values[lead])
            if q is None:
                return None
            coeffs.append(q)
            if not q.is_zero():
                for v in self.graph.vertices:
                    residual[v] = residual[v] - q * spline.values[v]
        if any(not val.is_zero() for val in residual.values()):
            return None
        return coeffs


@dataclass
class TraceStep:
    """One elimination: what was removed and what the reduced graphs look like."""

    vertex: str
    multigraph: LabeledMultigraph
    collapsed: EdgeLabeledGraph
    kernel_generator: RingElement
    lifted: dict[str, RingElement] = field(default_factory=dict)


@dataclass
class EliminationTrace:
    steps: list[TraceStep]
    final_graph: EdgeLabeledGraph
    root: str

    def to_doc(self) -> list:
        from .graphs import graph_to_doc

        doc = []
        for step in self.steps:
            doc.append(
                {
                    "eliminated": step.vertex,
                    "multigraph": graph_to_doc(step.multigraph),
                    "collapsed": graph_to_doc(step.collapsed),
                    "kernel_generator": str(step.kernel_generator),
                    "lifted": {lead: str(val) for lead, val in sorted(step.lifted.items())},
                }
            )
        doc.append({"final": graph_to_doc(self.final_graph), "root": self.root})
        return doc


def _require_effective_pid(graph: EdgeLabeledGraph, what: str) -> None:
    kind = graph.ring.kind
    if kind == INTEGERS or (kind == POLYNOMIAL and len(graph.ring.variables) == 1):
        return
    if kind == INTEGERS_MOD:
        raise UnsupportedRingError(
            f"{what} over Z/m is delegated to the enumeration oracle (zmod_rank)"
        )
    raise UnsupportedRingError(f"{what} needs Z or a univariate polynomial ring, not {graph.ring}")


# ----------------------------------------------------------------------
# tree base case
# ----------------------------------------------------------------------

def tree_basis(tree: EdgeLabeledGraph, root: Optional[str] = None) -> FlowUpBasis:
    """Explicit flow-up basis of a tree: root gets all-ones, any other vertex
    gets its parent-edge generator across its whole subtree.

    >>> from graphsplines.rings import integers
    >>> from graphsplines.graphs import build_graph
    >>> g = build_graph(integers(), ["a", "b", "c"], [("a", "b", "2"), ("b", "c", "3")])
    >>> [[str(s.values[v]) for v in g.vertices] for _, s in tree_basis(g, "a")]
    [['1', '1', '1'], ['0', '2', '2'], ['0', '0', '3']]
    """
    _require_effective_pid(tree, "tree bases")
    if not tree.is_tree():
        raise GraphError("tree_basis needs a connected acyclic graph")
    if root is None:
        root = tree.vertices[0]
    if not tree.has_vertex(root):
        raise GraphError(f"unknown root {root!r}")

    parent: dict[str, tuple[str, RingElement]] = {}
    order = [root]
    seen = {root}
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for w in tree.neighbors(v):
            if w not in seen:
                seen.add(w)
                parent[w] = (v, tree.label(v, w))
                order.append(w)

    subtree: dict[str, set[str]] = {v: {v} for v in tree.vertices}
    for v in reversed(order):
        if v in parent:
            subtree[parent[v][0]] |= subtree[v]

    zero = tree.ring.zero()
    elements: list[tuple[str, Spline]] = [(root, Spline.ones(tree))]
    for v in order[1:]:
        gen = parent[v][1]
        values = {u: (gen if u in subtree[v] else zero) for u in tree.vertices}
        elements.append((v, Spline(tree, values)))
    return FlowUpBasis(tree, elements)


# ----------------------------------------------------------------------
# vertex elimination
# ----------------------------------------------------------------------

def eliminate_vertex(
    graph: EdgeLabeledGraph, v: str
) -> tuple[LabeledMultigraph, EdgeLabeledGraph]:
    """Remove v: neighbors of v get new edges labeled by the gcd of the two
    labels toward v (ideal sum); the collapsed simple graph merges parallel
    edges by lcm (ideal intersection)."""
    _require_effective_pid(graph, "vertex elimination")
    if not graph.has_vertex(v):
        raise GraphError(f"unknown vertex {v!r}")
    neighbors = graph.neighbors(v)
    if not neighbors:
        raise GraphError(f"vertex {v!r} is isolated; eliminate only attached vertices")
    rest = [u for u in graph.vertices if u != v]
    edges = [e for e in graph.edges if v not in (e[0], e[1])]
    toward = {u: graph.label(u, v) for u in neighbors}
    for i, u in enumerate(neighbors):
        for w in neighbors[i + 1:]:
            edges.append((u, w, ring_gcd(toward[u], toward[w])))
    multi = LabeledMultigraph(graph.ring, rest, edges)
    return multi, collapse_multiedges(multi)


def _merge_congruences(ring, pairs):
    """Fold (residue, modulus) RingElement pairs; None on conflict."""
    if ring.kind == INTEGERS:
        acc = (0, 1)
        for r, m in pairs:
            acc = merge_int_congruence(acc[0], acc[1], r.value, abs(m.value))
            if acc is None:
                return None
        return ring.from_int(acc[0])
    acc_r, acc_m = ring.zero(), ring.one()
    for r, m in pairs:
        merged = merge_poly_congruence(acc_r, acc_m, r, m)
        if merged is None:
            return None
        acc_r, acc_m = merged
    return acc_r


def lift(basis_v: FlowUpBasis, graph: EdgeLabeledGraph, v: str) -> list[Spline]:
    """Extend every element of a reduced-graph basis back across v.

    Tries the constant extension by the element's own leading value first
    (which reproduces the published small examples), then the least
    nonnegative solution of the incident congruence system.  Solvability is
    asserted: the reduced ring is a quotient, so a failure is a bug here.
    """
    _require_effective_pid(graph, "lifting")
    incident = [(u if w == v else w, label) for u, w, label in graph.edges_at(v)]
    lifted = []
    for lead, spline in basis_v.elements:
        candidate = spline.values[lead]
        if all(
            ideal_member(candidate - spline.values[u], PrincipalIdeal(label))
            for u, label in incident
        ):
            value = candidate
        else:
            pairs = [(spline.values[u], label) for u, label in incident]
            value = _merge_congruences(graph.ring, pairs)
            assert value is not None, "lift is guaranteed solvable; congruences conflicted"
        values = dict(spline.values)
        values[v] = value
        lifted.append(Spline(graph, values))
    return lifted


def flow_up_basis(
    graph: EdgeLabeledGraph,
    orientation: Optional[Union[Mapping[str, int], Sequence[str]]] = None,
) -> tuple[FlowUpBasis, EliminationTrace]:
    """Flow-up basis of a connected graph over Z or Q[t], plus the full trace.

    Elimination removes the highest-ranked remaining vertex (vertex-list
    order by default) until a tree remains, then applies the tree formula
    rooted at the lowest vertex and lifts everything back up.
    """
    _require_effective_pid(graph, "flow-up bases")
    if not graph.is_connected():
        raise GraphError("graph is disconnected; run flow_up_basis per component")
    ranking = _as_ranking(graph, orientation)

    stages: list[tuple[EdgeLabeledGraph, str, LabeledMultigraph, EdgeLabeledGraph]] = []
    current = graph
    while not current.is_tree():
        v = max(current.vertices, key=lambda u: (ranking[u], u))
        multi, collapsed = eliminate_vertex(current, v)
        stages.append((current, v, multi, collapsed))
        current = collapsed

    root = min(current.vertices, key=lambda u: (ranking[u], u))
    elements = list(tree_basis(current, root).elements)

    steps: list[TraceStep] = []
    final_graph = current
    for stage_graph, v, multi, collapsed in reversed(stages):
        gen = vertex_kernel_generator(stage_graph, v)
        lifted = lift(FlowUpBasis(collapsed, elements), stage_graph, v)
        step = TraceStep(v, multi, collapsed, gen, {})
        for (lead, _), spline in zip(elements, lifted):
            step.lifted[lead] = spline.values[v]
        new_elements = [(lead, spline) for (lead, _), spline in zip(elements, lifted)]
        kernel_values = {u: stage_graph.ring.zero() for u in stage_graph.vertices}
        kernel_values[v] = gen
        new_elements.append((v, Spline(stage_graph, kernel_values)))
        elements = new_elements
        steps.append(step)

    # steps were produced while unwinding; present them in elimination order
    steps.reverse()
    basis = FlowUpBasis(graph, elements)
    return basis, EliminationTrace(steps, final_graph, root)


def _as_ranking(
    graph: EdgeLabeledGraph, orientation: Optional[Union[Mapping[str, int], Sequence[str]]]
) -> dict[str, int]:
    if orientation is None:
        return {v: i for i, v in enumerate(graph.vertices)}
    if isinstance(orientation, Mapping):
        ranking = dict(orientation)
    else:
        ranking = {v: i for i, v in enumerate(orientation)}
    missing = [v for v in graph.vertices if v not in ranking]
    if missing:
        raise GraphError(f"orientation misses vertices: {missing}")
    return ranking


# ----------------------------------------------------------------------
# integer-lattice oracle
# ----------------------------------------------------------------------

def hnf_spline_lattice(
    graph: EdgeLabeledGraph,
    orientation: Optional[Union[Mapping[str, int], Sequence[str]]] = None,
    max_vertices: int = 24,
) -> FlowUpBasis:
    """Triangular basis of the spline lattice straight from its congruences.

    Independent of the elimination algorithm: the splines over Z are the
    integer points p with p_u - p_v divisible by each edge label, a
    full-rank lattice whose Hermite normal form (vertices ordered by the
    orientation) is triangular with one leading vertex per row.  The same
    echelon reduction over Q[t] serves univariate polynomial graphs.
    """
    kind = graph.ring.kind
    if kind not in (INTEGERS, POLYNOMIAL) or (kind == POLYNOMIAL and len(graph.ring.variables) != 1):
        raise UnsupportedRingError("the lattice oracle needs Z or a univariate polynomial ring")
    if len(graph.vertices) > max_vertices:
        raise GraphError(f"graph exceeds the oracle bound of {max_vertices} vertices")
    ranking = _as_ranking(graph, orientation)
    order = sorted(graph.vertices, key=lambda v: (ranking[v], v))
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)

    if kind == INTEGERS:
        rows = []
        for i, (u, v, label) in enumerate(graph.edges):
            row = [0] * (n + len(graph.edges))
            row[pos[u]], row[pos[v]] = 1, -1
            row[n + i] = -abs(label.value)
            rows.append(row)
        if rows:
            kernel = intlinalg.kernel_basis(rows, n + len(graph.edges))
            projected = [k[:n] for k in kernel]
        else:
            projected = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        h = intlinalg.hnf_rows(projected, n)
        assert len(h) == n, "spline lattice must be full rank"
        elements = []
        for i, row in enumerate(h):
            values = {order[j]: graph.ring.from_int(row[j]) for j in range(n)}
            elements.append((order[i], Spline(graph, values)))
        return FlowUpBasis(graph, elements)

    return _poly_lattice_basis(graph, order)


def _poly_lattice_basis(graph: EdgeLabeledGraph, order: list[str]) -> FlowUpBasis:
    """Echelon basis over Q[t], mirroring the integer HNF construction.

    The spline module is the projection to the vertex coordinates of the
    kernel of (p, s) -> (p_u - p_v - s_e * label_e); both the kernel and
    the final triangular basis come from Euclidean row echelon reduction.
    """
    ring = graph.ring
    n = len(order)
    num_edges = len(graph.edges)
    pos = {v: i for i, v in enumerate(order)}
    zero, one = ring.zero(), ring.one()

    nvars = n + num_edges
    columns: list[list[RingElement]] = [[zero] * num_edges for _ in range(nvars)]
    for k, (u, v, label) in enumerate(graph.edges):
        columns[pos[u]][k] = one
        columns[pos[v]][k] = -one
        columns[n + k][k] = -label
    stacked = [
        columns[i] + [one if j == i else zero for j in range(nvars)] for i in range(nvars)
    ]
    reduced = _euclid_echelon(stacked, num_edges)
    projected = [
        row[num_edges:num_edges + n]
        for row in reduced
        if all(x.is_zero() for x in row[:num_edges])
    ]
    basis_rows = [r for r in _euclid_echelon(projected, n) if not all(x.is_zero() for x in r)]
    if len(basis_rows) != n:
        raise BasisError("polynomial spline lattice is not full rank")
    elements = []
    for i, row in enumerate(basis_rows):
        pivot = row[i]
        monic = [(x * _inverse_leading(pivot)) for x in row]
        values = {order[j]: monic[j] for j in range(n)}
        elements.append((order[i], Spline(graph, values)))
    return FlowUpBasis(graph, elements)


def _inverse_leading(p: RingElement) -> RingElement:
    return p.ring.from_fraction(1 / p.leading_coefficient())


def _euclid_echelon(rows: list[list[RingElement]], ncols: int) -> list[list[RingElement]]:
    """Row echelon form over Q[t] restricted to the first ncols columns.

    Whole rows are combined, so trailing columns ride along; rows whose
    first ncols entries are all zero sink to the bottom.
    """
    work = [list(r) for r in rows]
    pivot_row = 0
    for col in range(ncols):
        while True:
            live = [i for i in range(pivot_row, len(work)) if not work[i][col].is_zero()]
            if len(live) <= 1:
                break
            live.sort(key=lambda i: work[i][col].degree())
            base = live[0]
            for other in live[1:]:
                q, _ = _divmod_elem(work[other][col], work[base][col])
                if not q.is_zero():
                    work[other] = [a - q * b for a, b in zip(work[other], work[base])]
        live = [i for i in range(pivot_row, len(work)) if not work[i][col].is_zero()]
        if not live:
            continue
        i = live[0]
        work[i], work[pivot_row] = work[pivot_row], work[i]
        pivot_row += 1
    zero_head = [r for r in work if all(x.is_zero() for x in r[:ncols])]
    nonzero_head = [r for r in work if not all(x.is_zero() for x in r[:ncols])]
    return nonzero_head + zero_head


def _divmod_elem(a: RingElement, b: RingElement) -> tuple[RingElement, RingElement]:
    from .rings import _pdivmod_uni

    q, r = _pdivmod_uni(a.value, b.value)
    return RingElement(a.ring, q), RingElement(a.ring, r)


# ----------------------------------------------------------------------
# span comparison and Z/m rank
# ----------------------------------------------------------------------

def same_span(a: FlowUpBasis, b: FlowUpBasis) -> bool:
    """Do the two bases generate the same module (triangular solves both ways)?"""
    if a.graph != b.graph:
        raise RingMismatchError("bases live on different graphs")
    kind = a.graph.ring.kind
    if kind not in (INTEGERS, POLYNOMIAL):
        raise UnsupportedRingError("span comparison needs Z or a polynomial ring")
    for _, spline in b.elements:
        if a.solve(spline) is None:
            return False
    for _, spline in a.elements:
        if b.solve(spline) is None:
            return False
    return True


def zmod_rank(graph: EdgeLabeledGraph, max_states: int = 200_000) -> int:
    """Minimum number of generators of the spline group over Z/m, by enumeration.

    Enumerates all assignments, filters splines, and reads the invariant
    factors of the resulting subgroup of (Z/m)^V off a Smith normal form.
    """
    ring = graph.ring
    if ring.kind != INTEGERS_MOD:
        raise UnsupportedRingError("zmod_rank needs an integers-mod-m ring")
    m = ring.modulus
    n = len(graph.vertices)
    if m ** n > max_states:
        raise GraphError(f"{m}^{n} assignments exceed the enumeration bound {max_states}")
    edges = [(graph.index(u), graph.index(v), math.gcd(label.value, m)) for u, v, label in graph.edges]
    members: list[list[int]] = []
    assignment = [0] * n

    def rec(i: int) -> None:
        if i == n:
            members.append(list(assignment))
            return
        for val in range(m):
            assignment[i] = val
            ok = True
            for iu, iv, mod in edges:
                if iu < i and iv < i:
                    continue
                if max(iu, iv) == i:
                    if (assignment[iu] - assignment[iv]) % (mod or m) != 0:
                        ok = False
                        break
            if ok:
                rec(i + 1)
        assignment[i] = 0

    rec(0)
    # lattice of lifts, which always contains m * Z^n
    rows = members + [[m if i == j else 0 for j in range(n)] for i in range(n)]
    h = intlinalg.hnf_rows(rows, n)
    assert len(h) == n
    # express m*e_i in the HNF basis by forward substitution (exact)
    relation = []
    for i in range(n):
        target = [m if j == i else 0 for j in range(n)]
        coeffs = [0] * n
        for k in range(n):
            q, r = divmod(target[k], h[k][k])
            assert r == 0
            coeffs[k] = q
            if q:
                target = [t - q * hk for t, hk in zip(target, h[k])]
        relation.append(coeffs)
    invariants = intlinalg.smith_invariants(relation)
    return sum(1 for d in invariants if d > 1)
