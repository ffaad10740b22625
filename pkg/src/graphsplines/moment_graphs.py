"""Generators for the named graph families and the Alfeld-split transport.

Conventions pinned by the worked small cases:

* projective space on n vertices: complete graph, edge (i, j) labeled
  ``t_j - t_i`` for i < j;
* Alfeld dual on n+1 vertices: complete graph over x_1..x_n, edge
  (F_i, F_j) labeled ``x_i - x_j`` for i < j <= n and ``x_i`` for
  j = n+1;
* the symmetric-group graph joins w and (ij)w with label ``t_j - t_i``;
* the Hessenberg subfamily joins w and w*(ij) whenever i < j <= h(i),
  labeling each edge the way the full graph labels that vertex pair.

Vertices of the symmetric-group families are named by one-line notation
and carry their permutations as metadata, listed by (length, canonical
reduced word) so layouts are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import Optional, Sequence

from .graphs import EdgeLabeledGraph, GraphError, build_graph
from .permutations import Permutation, symmetric_group
from .pid_basis import FlowUpBasis
from .rings import (
    RingDescriptor,
    RingElement,
    polynomial_ring,
    standard_variables,
    substitute,
)
from .splines import Spline

DEFAULT_MAX_VERTICES = 5040  # 7! keeps the factorial families at desk scale


class GeneratorError(GraphError):
    pass


def _check_size(count: int, max_vertices: int) -> None:
    if count > max_vertices:
        raise GeneratorError(f"{count} vertices exceed the configured bound {max_vertices}")


def projective_space(n: int) -> EdgeLabeledGraph:
    """Complete graph on n vertices with edge (i, j) labeled t_j - t_i."""
    if n < 2:
        raise GeneratorError("projective_space needs n >= 2")
    ring = polynomial_ring(*standard_variables("t", n))
    t = [ring.variable(v) for v in ring.variables]
    vertices = [f"v{i}" for i in range(1, n + 1)]
    edges = [(f"v{i}", f"v{j}", t[j - 1] - t[i - 1]) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return build_graph(ring, vertices, edges)


def alfeld_dual(n: int) -> EdgeLabeledGraph:
    """Dual graph of the cone over a simplex boundary: K_{n+1} over x_1..x_n."""
    if n < 1:
        raise GeneratorError("alfeld_dual needs n >= 1")
    ring = polynomial_ring(*standard_variables("x", n))
    x = [ring.variable(v) for v in ring.variables]
    vertices = [f"F{i}" for i in range(1, n + 2)]
    edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 2):
            label = x[i - 1] - x[j - 1] if j <= n else x[i - 1]
            edges.append((f"F{i}", f"F{j}", label))
    return build_graph(ring, vertices, edges)


def alfeld_transport(p: Spline) -> Spline:
    """Carry a spline on projective_space(n+1) over to alfeld_dual(n).

    The generator differences map by ``t_{i+1} - t_i -> x_i - x_{i+1}``
    (and ``x_n`` at the top), which extends to the whole ring as the
    substitution ``t_i -> -x_i`` for i <= n and ``t_{n+1} -> 0``.  Vertex
    v_i corresponds to facet F_i.
    """
    source = p.graph
    n = len(source.vertices) - 1
    if n < 1 or source != projective_space(n + 1):
        raise GeneratorError("alfeld_transport expects a spline on projective_space(n+1)")
    target = alfeld_dual(n)
    ring = target.ring
    images = [-(ring.variable(v)) for v in ring.variables] + [ring.zero()]
    values = {}
    for i, v in enumerate(source.vertices, start=1):
        values[f"F{i}"] = substitute(p.values[v], ring, images)
    return Spline(target, values)


def transport_label(label: RingElement, n: int) -> RingElement:
    """Apply the same substitution to a bare label of projective_space(n+1)."""
    ring = polynomial_ring(*standard_variables("x", n))
    images = [-(ring.variable(v)) for v in ring.variables] + [ring.zero()]
    return substitute(label, ring, images)


def _bruhat_label(ring: RingDescriptor, w: Permutation, u: Permutation) -> RingElement:
    """Label of the edge between w and u: t_j - t_i for the left transposition."""
    moved = u * w.inverse()
    changed = [i for i in range(1, w.n + 1) if moved(i) != i]
    if len(changed) != 2:
        raise GeneratorError(f"{w.one_line()} and {u.one_line()} do not differ by a transposition")
    i, j = min(changed), max(changed)
    t = [ring.variable(v) for v in ring.variables]
    return t[j - 1] - t[i - 1]


def bruhat_graph(n: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> EdgeLabeledGraph:
    """All of S_n, with w joined to (ij)w and labeled t_j - t_i."""
    if n < 2:
        raise GeneratorError("bruhat_graph needs n >= 2")
    _check_size(factorial(n), max_vertices)
    ring = polynomial_ring(*standard_variables("t", n))
    t = [ring.variable(v) for v in ring.variables]
    perms = symmetric_group(n)
    vertices = [w.one_line() for w in perms]
    metadata = {w.one_line(): w for w in perms}
    edges = []
    seen = set()
    for w in perms:
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                u = Permutation.transposition(i, j, n) * w
                pair = frozenset((w.one_line(), u.one_line()))
                if pair not in seen:
                    seen.add(pair)
                    edges.append((w.one_line(), u.one_line(), t[j - 1] - t[i - 1]))
    return build_graph(ring, vertices, edges, metadata)


@dataclass(frozen=True)
class HessenbergFunction:
    """Nondecreasing h with i <= h(i) <= n, parametrizing Bruhat subgraphs."""

    h: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.h)
        if n == 0:
            raise GeneratorError("empty Hessenberg function")
        for i, hi in enumerate(self.h, start=1):
            if not i <= hi <= n:
                raise GeneratorError(f"need i <= h(i) <= n, got h({i}) = {hi}")
        if any(a > b for a, b in zip(self.h, self.h[1:])):
            raise GeneratorError(f"h must be nondecreasing: {self.h}")

    @property
    def n(self) -> int:
        return len(self.h)


def hessenberg_graph(
    h: HessenbergFunction | Sequence[int], max_vertices: int = DEFAULT_MAX_VERTICES
) -> EdgeLabeledGraph:
    """Subgraph of the S_n graph joining w and w*(ij) whenever i < j <= h(i)."""
    if not isinstance(h, HessenbergFunction):
        h = HessenbergFunction(tuple(h))
    n = h.n
    if n < 2:
        raise GeneratorError("hessenberg_graph needs n >= 2")
    _check_size(factorial(n), max_vertices)
    ring = polynomial_ring(*standard_variables("t", n))
    perms = symmetric_group(n)
    vertices = [w.one_line() for w in perms]
    metadata = {w.one_line(): w for w in perms}
    edges = []
    seen = set()
    for w in perms:
        for i in range(1, n + 1):
            for j in range(i + 1, h.h[i - 1] + 1):
                u = w * Permutation.transposition(i, j, n)
                pair = frozenset((w.one_line(), u.one_line()))
                if pair not in seen:
                    seen.add(pair)
                    edges.append((w.one_line(), u.one_line(), _bruhat_label(ring, w, u)))
    return build_graph(ring, vertices, edges, metadata)


def johnson_grassmannian(k: int, n: int, max_vertices: int = DEFAULT_MAX_VERTICES) -> EdgeLabeledGraph:
    """k-subsets of {1..n}, adjacent when they share k-1 elements.

    The edge from A to B with A - B = {i}, B - A = {j}, i < j is labeled
    t_j - t_i (the usual convention; the small cases do not pin it).
    """
    if not 1 <= k < n:
        raise GeneratorError("johnson_grassmannian needs 1 <= k < n")
    _check_size(comb(n, k), max_vertices)
    ring = polynomial_ring(*standard_variables("t", n))
    t = [ring.variable(v) for v in ring.variables]

    def name(subset: tuple[int, ...]) -> str:
        return "{" + ",".join(str(i) for i in subset) + "}"

    subsets = list(combinations(range(1, n + 1), k))
    vertices = [name(s) for s in subsets]
    edges = []
    for a_idx in range(len(subsets)):
        for b_idx in range(a_idx + 1, len(subsets)):
            a, b = set(subsets[a_idx]), set(subsets[b_idx])
            if len(a & b) == k - 1:
                (i,) = a - b
                (j,) = b - a
                i, j = min(i, j), max(i, j)
                edges.append((vertices[a_idx], vertices[b_idx], t[j - 1] - t[i - 1]))
    return build_graph(ring, vertices, edges)


def projective_flow_up_basis(n: int) -> FlowUpBasis:
    """The classical flow-up basis on projective_space(n).

    Element k is supported on vertices k..n and takes the product of
    (t_j - t_i) over i < k at vertex j; successive differences pick up the
    edge label as a factor, so each element verifies by construction.
    """
    graph = projective_space(n)
    ring = graph.ring
    t = [ring.variable(v) for v in ring.variables]
    elements = []
    for k in range(1, n + 1):
        values = {}
        for j in range(1, n + 1):
            if j < k:
                values[f"v{j}"] = ring.zero()
            else:
                prod = ring.one()
                for i in range(1, k):
                    prod = prod * (t[j - 1] - t[i - 1])
                values[f"v{j}"] = prod
        elements.append((f"v{k}", Spline(graph, values)))
    return FlowUpBasis(graph, elements)
