"""Finite edge-labeled graphs, orientations, and structural operations.

Vertices are opaque strings; an edge is an unordered pair with a ring
element generating the ideal attached to it.  Labels must be nonzero
except over rings with zero divisors (Z/m, truncated polynomials), where
a zero label encodes the zero ideal, i.e. forced equality across the
edge.  Bruhat-type graphs may carry a permutation per vertex so group
actions need no name parsing.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Optional, Sequence, Union

from .permutations import Permutation
from .rings import (
    RingDescriptor,
    RingElement,
    ring_gcd,
    ring_lcm,
    parse_element,
    integers,
    integers_mod,
    polynomial_ring,
    truncated_polynomial_ring,
    INTEGERS,
    INTEGERS_MOD,
    POLYNOMIAL,
    TRUNCATED,
    UnsupportedRingError,
)


class GraphError(Exception):
    pass


class GraphValidationError(GraphError):
    """Carries every violation found while building a graph."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


class DocumentError(GraphError):
    """A JSON document did not match the schema; message carries the field path."""


Edge = tuple[str, str, RingElement]


class _BaseGraph:
    """Shared storage for simple graphs and multigraphs."""

    def __init__(
        self,
        ring: RingDescriptor,
        vertices: Sequence[str],
        edges: Sequence[Edge],
        vertex_permutations: Optional[Mapping[str, Permutation]] = None,
    ):
        self.ring = ring
        self.vertices = tuple(vertices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        normalized = []
        for u, v, label in edges:
            if self._index.get(u, 0) > self._index.get(v, 0):
                u, v = v, u
            normalized.append((u, v, label))
        normalized.sort(key=lambda e: (self._index.get(e[0], -1), self._index.get(e[1], -1)))
        self.edges = tuple(normalized)
        self.vertex_permutations = dict(vertex_permutations) if vertex_permutations else None

    def index(self, v: str) -> int:
        return self._index[v]

    def has_vertex(self, v: str) -> bool:
        return v in self._index

    def edges_at(self, v: str) -> list[Edge]:
        return [e for e in self.edges if v in (e[0], e[1])]

    def neighbors(self, v: str) -> list[str]:
        seen = []
        for u, w, _ in self.edges:
            other = w if u == v else u if w == v else None
            if other is not None and other not in seen:
                seen.append(other)
        return seen

    def permutation(self, v: str) -> Permutation:
        if not self.vertex_permutations or v not in self.vertex_permutations:
            raise GraphError(f"vertex {v!r} carries no permutation metadata")
        return self.vertex_permutations[v]

    def __eq__(self, other: object) -> bool:
        return (
            type(self) is type(other)
            and self.ring == other.ring
            and self.vertices == other.vertices
            and self.edges == other.edges
            and self.vertex_permutations == other.vertex_permutations
        )

    def __repr__(self) -> str:
        return f"<{type(self).__name__} |V|={len(self.vertices)} |E|={len(self.edges)} over {self.ring}>"


class EdgeLabeledGraph(_BaseGraph):
    """A simple loop-free graph with one nonzero ring label per edge."""

    def label(self, u: str, v: str) -> RingElement:
        for a, b, lab in self.edges:
            if {a, b} == {u, v}:
                return lab
        raise GraphError(f"no edge between {u!r} and {v!r}")

    def has_edge(self, u: str, v: str) -> bool:
        return any({a, b} == {u, v} for a, b, _ in self.edges)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        frontier = [self.vertices[0]]
        while frontier:
            v = frontier.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == len(self.vertices)

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == len(self.vertices) - 1


class LabeledMultigraph(_BaseGraph):
    """Transient multigraph: parallel edges allowed, loops still excluded."""

    def parallel_labels(self, u: str, v: str) -> list[RingElement]:
        return [lab for a, b, lab in self.edges if {a, b} == {u, v}]


def _validate_edges(
    ring: RingDescriptor,
    vertices: Sequence[str],
    edges: Iterable[tuple[str, str, Union[RingElement, str]]],
    allow_parallel: bool,
) -> tuple[list[Edge], list[str]]:
    violations: list[str] = []
    names = list(vertices)
    if len(set(names)) != len(names):
        violations.append("duplicate vertex names")
    index = {v: i for i, v in enumerate(names)}
    out: list[Edge] = []
    seen_pairs: set[frozenset] = set()
    for k, (u, v, label) in enumerate(edges):
        if u not in index:
            violations.append(f"edge {k}: unknown vertex {u!r}")
            continue
        if v not in index:
            violations.append(f"edge {k}: unknown vertex {v!r}")
            continue
        if u == v:
            violations.append(f"edge {k}: loop at {u!r}")
            continue
        if isinstance(label, str):
            try:
                label = parse_element(ring, label)
            except Exception as exc:
                violations.append(f"edge {k}: label does not parse: {exc}")
                continue
        if label.ring != ring:
            violations.append(f"edge {k}: label lives in {label.ring}, not {ring}")
            continue
        if label.is_zero() and not ring.has_zero_divisors:
            violations.append(f"edge {k}: zero label between {u!r} and {v!r}")
            continue
        pair = frozenset((u, v))
        if not allow_parallel and pair in seen_pairs:
            violations.append(f"edge {k}: duplicate edge between {u!r} and {v!r}")
            continue
        seen_pairs.add(pair)
        out.append((u, v, label))
    return out, violations


def build_graph(
    ring: RingDescriptor,
    vertices: Sequence[str],
    edges: Iterable[tuple[str, str, Union[RingElement, str]]],
    vertex_permutations: Optional[Mapping[str, Permutation]] = None,
) -> EdgeLabeledGraph:
    """Validate and build; raises GraphValidationError listing all violations."""
    out, violations = _validate_edges(ring, vertices, edges, allow_parallel=False)
    if vertex_permutations is not None:
        for v in vertex_permutations:
            if v not in vertices:
                violations.append(f"permutation metadata for unknown vertex {v!r}")
    if violations:
        raise GraphValidationError(violations)
    return EdgeLabeledGraph(ring, vertices, out, vertex_permutations)


def build_multigraph(
    ring: RingDescriptor,
    vertices: Sequence[str],
    edges: Iterable[tuple[str, str, Union[RingElement, str]]],
) -> LabeledMultigraph:
    out, violations = _validate_edges(ring, vertices, edges, allow_parallel=True)
    if violations:
        raise GraphValidationError(violations)
    return LabeledMultigraph(ring, vertices, out)


# ----------------------------------------------------------------------
# directions
# ----------------------------------------------------------------------

class DirectedGraph:
    """An edge-labeled graph with an acyclic direction on every edge."""

    def __init__(self, graph: EdgeLabeledGraph, tails: Sequence[str]):
        if len(tails) != len(graph.edges):
            raise GraphError("one tail per edge required")
        for (u, v, _), tail in zip(graph.edges, tails):
            if tail not in (u, v):
                raise GraphError(f"tail {tail!r} is not an endpoint of edge {u!r}-{v!r}")
        self.graph = graph
        self.tails = tuple(tails)
        cycle = self._find_cycle()
        if cycle:
            raise GraphError(f"direction induces a cycle through {' -> '.join(cycle)}")

    def directed_edges(self) -> list[tuple[str, str, RingElement]]:
        out = []
        for (u, v, lab), tail in zip(self.graph.edges, self.tails):
            head = v if tail == u else u
            out.append((tail, head, lab))
        return out

    def out_degree(self, v: str) -> int:
        return sum(1 for tail, _, _ in self.directed_edges() if tail == v)

    def successors(self, v: str) -> list[str]:
        return [head for tail, head, _ in self.directed_edges() if tail == v]

    def reachable_from(self, v: str) -> set[str]:
        seen = {v}
        frontier = [v]
        while frontier:
            u = frontier.pop()
            for w in self.successors(u):
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return seen

    def _find_cycle(self) -> Optional[list[str]]:
        color: dict[str, int] = {}
        stack_path: list[str] = []

        def dfs(v: str) -> Optional[list[str]]:
            color[v] = 1
            stack_path.append(v)
            for w in self.successors(v):
                if color.get(w, 0) == 1:
                    return stack_path[stack_path.index(w):] + [w]
                if color.get(w, 0) == 0:
                    found = dfs(w)
                    if found:
                        return found
            color[v] = 2
            stack_path.pop()
            return None

        for v in self.graph.vertices:
            if color.get(v, 0) == 0:
                found = dfs(v)
                if found:
                    return found
        return None


def orient(
    graph: EdgeLabeledGraph, ranking: Union[Mapping[str, int], Sequence[str]]
) -> DirectedGraph:
    """Direct every edge from lower to higher rank; adjacent ties are errors."""
    if not isinstance(ranking, Mapping):
        ranking = {v: i for i, v in enumerate(ranking)}
    missing = [v for v in graph.vertices if v not in ranking]
    if missing:
        raise GraphError(f"ranking misses vertices: {missing}")
    tails = []
    for u, v, _ in graph.edges:
        if ranking[u] == ranking[v]:
            raise GraphError(f"adjacent vertices {u!r} and {v!r} share rank {ranking[u]}")
        tails.append(u if ranking[u] < ranking[v] else v)
    return DirectedGraph(graph, tails)


def index_ranking(graph: EdgeLabeledGraph) -> dict[str, int]:
    """Rank vertices by their position in the vertex list."""
    return {v: i for i, v in enumerate(graph.vertices)}


def length_ranking(graph: _BaseGraph) -> dict[str, int]:
    """Rank vertices by the Coxeter length of their attached permutations."""
    if not graph.vertex_permutations:
        raise GraphError("length ranking needs permutation metadata")
    return {v: graph.permutation(v).length() for v in graph.vertices}


def is_palais_smale(dg: DirectedGraph) -> tuple[bool, Optional[tuple[str, str]]]:
    """Out-degrees must strictly drop along every directed edge.

    Returns (True, None) or (False, witness_edge) for the first violating
    edge in canonical edge order.
    """
    degrees = {v: dg.out_degree(v) for v in dg.graph.vertices}
    for tail, head, _ in dg.directed_edges():
        if degrees[tail] <= degrees[head]:
            return False, (tail, head)
    return True, None


# ----------------------------------------------------------------------
# structural operations
# ----------------------------------------------------------------------

def power_labels(graph: EdgeLabeledGraph, r: int) -> EdgeLabeledGraph:
    """Replace every label l by l^(r+1) (smoothness-order relabeling)."""
    if not graph.ring.is_polynomial_kind:
        raise UnsupportedRingError("power_labels needs a polynomial-kind ring")
    if r < 0:
        raise GraphError("r must be nonnegative")
    edges = [(u, v, lab ** (r + 1)) for u, v, lab in graph.edges]
    return EdgeLabeledGraph(graph.ring, graph.vertices, edges, graph.vertex_permutations)


def delete_edges(graph: EdgeLabeledGraph, pairs: Iterable[tuple[str, str]]) -> EdgeLabeledGraph:
    """Drop the listed edges, keeping every vertex."""
    doomed = set()
    for u, v in pairs:
        if not graph.has_edge(u, v):
            raise GraphError(f"no edge between {u!r} and {v!r} to delete")
        doomed.add(frozenset((u, v)))
    edges = [e for e in graph.edges if frozenset((e[0], e[1])) not in doomed]
    return EdgeLabeledGraph(graph.ring, graph.vertices, edges, graph.vertex_permutations)


def induced_subgraph(graph: EdgeLabeledGraph, keep: Iterable[str]) -> EdgeLabeledGraph:
    keep = list(keep)
    if not keep:
        raise GraphError("induced subgraph needs a nonempty vertex subset")
    for v in keep:
        if not graph.has_vertex(v):
            raise GraphError(f"unknown vertex {v!r}")
    keep_set = set(keep)
    vertices = tuple(v for v in graph.vertices if v in keep_set)
    edges = [e for e in graph.edges if e[0] in keep_set and e[1] in keep_set]
    perms = None
    if graph.vertex_permutations:
        perms = {v: p for v, p in graph.vertex_permutations.items() if v in keep_set}
    return EdgeLabeledGraph(graph.ring, vertices, edges, perms)


def collapse_multiedges(multi: LabeledMultigraph) -> EdgeLabeledGraph:
    """Replace parallel edges by one edge labeled with the lcm of the labels."""
    if not multi.ring.is_pid:
        raise UnsupportedRingError("collapsing needs a PID ring")
    merged: dict[tuple[str, str], RingElement] = {}
    order: list[tuple[str, str]] = []
    for u, v, lab in multi.edges:
        key = (u, v)
        if key in merged:
            merged[key] = ring_lcm(merged[key], lab)
        else:
            merged[key] = lab
            order.append(key)
    edges = [(u, v, merged[(u, v)]) for u, v in order]
    return EdgeLabeledGraph(multi.ring, multi.vertices, edges, multi.vertex_permutations)


# ----------------------------------------------------------------------
# JSON documents
# ----------------------------------------------------------------------

def ring_to_doc(ring: RingDescriptor) -> dict:
    doc: dict = {"kind": ring.kind}
    if ring.kind == INTEGERS_MOD:
        doc["modulus"] = ring.modulus
    if ring.is_polynomial_kind:
        doc["variables"] = list(ring.variables)
    if ring.kind == TRUNCATED:
        doc["max_degree"] = ring.max_degree
    return doc


def ring_from_doc(doc: object) -> RingDescriptor:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise DocumentError("ring: expected an object with a 'kind' field")
    kind = doc["kind"]
    try:
        if kind == INTEGERS:
            return integers()
        if kind == INTEGERS_MOD:
            return integers_mod(int(doc["modulus"]))
        if kind == POLYNOMIAL:
            return polynomial_ring(*doc["variables"])
        if kind == TRUNCATED:
            return truncated_polynomial_ring(doc["variables"], int(doc["max_degree"]))
    except KeyError as exc:
        raise DocumentError(f"ring: missing field {exc}") from exc
    except Exception as exc:
        raise DocumentError(f"ring: {exc}") from exc
    raise DocumentError(f"ring.kind: unknown kind {kind!r}")


def graph_to_doc(graph: Union[EdgeLabeledGraph, DirectedGraph]) -> dict:
    direction = None
    if isinstance(graph, DirectedGraph):
        direction = {
            str(i): ("uv" if tail == u else "vu")
            for i, ((u, v, _), tail) in enumerate(zip(graph.graph.edges, graph.tails))
        }
        graph = graph.graph
    doc = {
        "ring": ring_to_doc(graph.ring),
        "vertices": list(graph.vertices),
        "edges": [{"u": u, "v": v, "label": str(lab)} for u, v, lab in graph.edges],
    }
    if graph.vertex_permutations:
        doc["perm_labels"] = {
            v: list(p.images) for v, p in sorted(graph.vertex_permutations.items())
        }
    if direction:
        doc["direction"] = direction
    return doc


def graph_from_doc(doc: object) -> Union[EdgeLabeledGraph, DirectedGraph]:
    if not isinstance(doc, dict):
        raise DocumentError("graph: expected a JSON object")
    for required in ("ring", "vertices", "edges"):
        if required not in doc:
            raise DocumentError(f"graph: missing field {required!r}")
    ring = ring_from_doc(doc["ring"])
    vertices = doc["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise DocumentError("vertices: expected a list of strings")
    edges = []
    for i, e in enumerate(doc["edges"]):
        if not isinstance(e, dict) or not {"u", "v", "label"} <= set(e):
            raise DocumentError(f"edges[{i}]: expected an object with u, v, label")
        edges.append((e["u"], e["v"], e["label"]))
    perms = None
    if "perm_labels" in doc and doc["perm_labels"] is not None:
        perms = {}
        for v, images in doc["perm_labels"].items():
            try:
                perms[v] = Permutation.from_one_line(images)
            except Exception as exc:
                raise DocumentError(f"perm_labels[{v!r}]: {exc}") from exc
    try:
        graph = build_graph(ring, vertices, edges, perms)
    except GraphValidationError as exc:
        raise DocumentError(f"edges: {exc}") from exc
    if "direction" in doc and doc["direction"] is not None:
        tails = []
        for i, (u, v, _) in enumerate(graph.edges):
            key = str(i)
            if key not in doc["direction"]:
                raise DocumentError(f"direction[{key!r}]: missing for edge {u!r}-{v!r}")
            sense = doc["direction"][key]
            if sense not in ("uv", "vu"):
                raise DocumentError(f"direction[{key!r}]: expected 'uv' or 'vu', got {sense!r}")
            tails.append(u if sense == "uv" else v)
        try:
            return DirectedGraph(graph, tails)
        except GraphError as exc:
            raise DocumentError(f"direction: {exc}") from exc
    return graph


def graph_to_json(graph: Union[EdgeLabeledGraph, DirectedGraph]) -> str:
    return json.dumps(graph_to_doc(graph), indent=2, sort_keys=True)


def graph_from_json(text: str) -> Union[EdgeLabeledGraph, DirectedGraph]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return graph_from_doc(doc)
