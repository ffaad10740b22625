"""Exact generalized splines on edge-labeled graphs.

Edge labels generate ideals; a spline assigns a ring element to every
vertex so that across each edge the difference of endpoint values lies in
the edge's ideal.  The package provides the ring kernel (integers,
integers mod m, exact multivariate polynomials, truncated polynomials),
graph generators for the classical families, spline verification and
arithmetic, flow-up bases over PIDs by vertex elimination with an
independent lattice oracle, the subword formula for Schubert classes,
symmetric-group actions with divided differences, congruence extension,
and structure-constant tables, all behind a JSON-speaking CLI.
"""

from .basis_algebra import ExpressError, StructureTable, express, structure_table
from .graphs import (
    DirectedGraph,
    DocumentError,
    EdgeLabeledGraph,
    GraphError,
    GraphValidationError,
    LabeledMultigraph,
    build_graph,
    build_multigraph,
    collapse_multiedges,
    delete_edges,
    graph_from_doc,
    graph_from_json,
    graph_to_doc,
    graph_to_json,
    index_ranking,
    induced_subgraph,
    is_palais_smale,
    length_ranking,
    orient,
    power_labels,
)
from .moment_graphs import (
    GeneratorError,
    HessenbergFunction,
    alfeld_dual,
    alfeld_transport,
    bruhat_graph,
    hessenberg_graph,
    johnson_grassmannian,
    projective_flow_up_basis,
    projective_space,
)
from .permutations import Permutation, PermutationError, symmetric_group
from .pid_basis import (
    BasisError,
    EliminationTrace,
    FlowUpBasis,
    TraceStep,
    eliminate_vertex,
    flow_up_basis,
    hnf_spline_lattice,
    lift,
    same_span,
    tree_basis,
    zmod_rank,
)
from .rings import (
    ElementParseError,
    PrincipalIdeal,
    RingDescriptor,
    RingElement,
    RingError,
    RingMismatchError,
    UnsupportedRingError,
    elem_arith,
    exact_divide,
    format_element,
    ideal_intersect,
    ideal_member,
    ideal_sum,
    integers,
    integers_mod,
    parse_element,
    poly_permute,
    polynomial_ring,
    ring_gcd,
    ring_lcm,
    standard_variables,
    substitute,
    truncated_polynomial_ring,
)
from .schubert import (
    ActionError,
    DividedDifferenceError,
    all_reduced_words,
    billey,
    divided_difference,
    is_invariant,
    left_action,
    orbit_class,
    reduced_word,
    right_action,
    schubert_basis,
    schubert_class,
)
from .splines import (
    NoExtension,
    NotASplineError,
    PartialAssignment,
    Spline,
    SplineError,
    extend,
    restrict,
    spline_arith,
    verify,
    vertex_kernel_generator,
)

__version__ = "0.1.0"
