"""Schubert classes on symmetric-group graphs and the S_n actions on splines.

The subword formula evaluates the restriction of the class for v at the
vertex w: fix a reduced word for w; over the position subsets of size
len(v) whose letters multiply to v in word order, sum the products of
prefix-permuted simple roots.  The root contributed by position j with
letter i is ``t_{i+1} - t_i`` and its prefix is the product of the
letters strictly before j; this is the unique reading consistent with
the small worked cases.

Actions on splines: right by v sends the value at w to the old value at
wv; left by v additionally permutes the variables,
``(v . p)_w = v(p_{v^{-1} w})``.  The degree-lowering operator here is
``(p - s_i . p) / (t_{i+1} - t_i)``, the sign that sends the class of v
to the class of s_i v when that is shorter and to zero otherwise.
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional, Sequence, Union

from .graphs import EdgeLabeledGraph, GraphError
from .moment_graphs import bruhat_graph
from .permutations import (
    Permutation,
    PermutationError,
    is_reduced,
    symmetric_group,
    word_to_permutation,
)
from .pid_basis import FlowUpBasis
from .rings import (
    RingDescriptor,
    RingElement,
    polynomial_ring,
    poly_permute,
    standard_variables,
    exact_divide,
)
from .splines import NotASplineError, Spline

# re-exported here because permutation combinatorics belongs to this surface
__all__ = [
    "Permutation",
    "reduced_word",
    "all_reduced_words",
    "billey",
    "schubert_class",
    "schubert_basis",
    "left_action",
    "right_action",
    "divided_difference",
    "orbit_class",
    "is_invariant",
    "ActionError",
    "DividedDifferenceError",
]


class ActionError(Exception):
    pass


class DividedDifferenceError(Exception):
    pass


def reduced_word(w: Permutation) -> tuple[int, ...]:
    """Canonical reduced word (smallest-descent rule); length = inversions."""
    return w.reduced_word()


def all_reduced_words(w: Permutation) -> tuple[tuple[int, ...], ...]:
    return w.all_reduced_words()


def billey(
    word: Sequence[int], v: Permutation, ring: Optional[RingDescriptor] = None
) -> RingElement:
    """Restriction of the class of v at the permutation spelled by the word.

    Zero when no size-len(v) subset of positions multiplies to v.  The
    value never depends on which reduced word was chosen.
    """
    n = v.n
    word = tuple(word)
    if not is_reduced(word, n):
        raise PermutationError(f"word {word} is not reduced in S_{n}")
    if ring is None:
        ring = polynomial_ring(*standard_variables("t", n))
    t = [ring.variable(name) for name in ring.variables]

    prefixes = [Permutation.identity(n)]
    for letter in word:
        prefixes.append(prefixes[-1] * Permutation.simple(letter, n))
    prepermuted_roots = [
        poly_permute(prefixes[j], t[word[j]] - t[word[j] - 1]) for j in range(len(word))
    ]

    target_length = v.length()
    total = ring.zero()
    for subset in combinations(range(len(word)), target_length):
        product = Permutation.identity(n)
        for j in subset:
            product = product * Permutation.simple(word[j], n)
        if product == v:
            term = ring.one()
            for j in subset:
                term = term * prepermuted_roots[j]
            total = total + term
    return total


def schubert_class(v: Permutation, n: Optional[int] = None, graph: Optional[EdgeLabeledGraph] = None) -> Spline:
    """The flow-up class of v as a verified spline on the S_n graph."""
    if graph is None:
        graph = bruhat_graph(n if n is not None else v.n)
    if not graph.vertex_permutations:
        raise GraphError("schubert classes need permutation metadata on the graph")
    ring = graph.ring
    values = {}
    for vertex in graph.vertices:
        w = graph.permutation(vertex)
        values[vertex] = billey(w.reduced_word(), v, ring)
    return Spline(graph, values)


def schubert_basis(n: int) -> FlowUpBasis:
    """All classes for S_n, ordered by (length, reduced word): a flow-up basis."""
    graph = bruhat_graph(n)
    elements = []
    for v in symmetric_group(n):
        elements.append((v.one_line(), schubert_class(v, graph=graph)))
    return FlowUpBasis(graph, elements)


# ----------------------------------------------------------------------
# the two S_n actions
# ----------------------------------------------------------------------

def _perm_index(graph: EdgeLabeledGraph) -> dict[tuple[int, ...], str]:
    if not graph.vertex_permutations:
        raise ActionError("the action needs permutation metadata on the graph")
    return {graph.permutation(v).images: v for v in graph.vertices}


def right_action(v: Permutation, p: Spline) -> Spline:
    """(v * p)_w = p_{wv}; needs the vertex set closed under right multiplication."""
    graph = p.graph
    index = _perm_index(graph)
    values = {}
    for vertex in graph.vertices:
        w = graph.permutation(vertex)
        target = (w * v).images
        if target not in index:
            raise ActionError(f"no vertex for {w.one_line()} * {v.one_line()}; graph not action-stable")
        values[vertex] = p.values[index[target]]
    try:
        return Spline(graph, values)
    except NotASplineError as exc:
        raise ActionError(f"graph is not stable under the right action of {v.one_line()}: {exc}")


def left_action(v: Permutation, p: Spline) -> Spline:
    """(v . p)_w = v(p_{v^{-1} w}): relabels vertices and permutes variables."""
    graph = p.graph
    index = _perm_index(graph)
    v_inv = v.inverse()
    values = {}
    for vertex in graph.vertices:
        w = graph.permutation(vertex)
        source = (v_inv * w).images
        if source not in index:
            raise ActionError(f"no vertex for {v_inv.one_line()} * {w.one_line()}; graph not action-stable")
        values[vertex] = poly_permute(v, p.values[index[source]])
    try:
        return Spline(graph, values)
    except NotASplineError as exc:
        raise ActionError(f"graph is not stable under the left action of {v.one_line()}: {exc}")


def divided_difference(i: int, p: Spline, side: str = "left") -> Spline:
    """Degree-lowering operator (p - s_i . p) / (t_{i+1} - t_i), vertexwise."""
    if side != "left":
        raise DividedDifferenceError("only the left divided difference is implemented")
    graph = p.graph
    ring = graph.ring
    nvars = len(ring.variables)
    if not 1 <= i <= nvars - 1:
        raise DividedDifferenceError(f"index {i} out of range for {nvars} variables")
    s_i = Permutation.simple(i, _metadata_n(graph))
    moved = left_action(s_i, p)
    root = ring.variable(ring.variables[i]) - ring.variable(ring.variables[i - 1])
    values = {}
    for vertex in graph.vertices:
        numerator = p.values[vertex] - moved.values[vertex]
        quotient = exact_divide(numerator, root)
        if quotient is None:
            raise DividedDifferenceError(
                f"numerator at {vertex!r} is not divisible by {root}; "
                "input is not a spline for this convention"
            )
        values[vertex] = quotient
    return Spline(graph, values)


def _metadata_n(graph: EdgeLabeledGraph) -> int:
    if not graph.vertex_permutations:
        raise ActionError("the action needs permutation metadata on the graph")
    return next(iter(graph.vertex_permutations.values())).n


def orbit_class(graph: EdgeLabeledGraph, seed: RingElement) -> Optional[Spline]:
    """Transport the seed around the vertices: value at w is w applied to seed.

    Returns the verified spline, or None when some edge condition fails
    (invalidity is an answer, not an error).
    """
    if not graph.vertex_permutations:
        raise GraphError("orbit classes need permutation metadata on the graph")
    if seed.ring != graph.ring:
        raise ActionError("seed must live in the graph's ring")
    values = {}
    for vertex in graph.vertices:
        values[vertex] = poly_permute(graph.permutation(vertex), seed)
    try:
        return Spline(graph, values)
    except NotASplineError:
        return None


def is_invariant(p: Spline) -> bool:
    """Fixed by the whole left action (checked on the simple reflections)."""
    n = _metadata_n(p.graph)
    for i in range(1, n):
        if left_action(Permutation.simple(i, n), p) != p:
            return False
    return True
