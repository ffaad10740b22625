"""Command-line surface over JSON documents.

Exit codes: 0 success, 1 mathematical negative (failed verification, no
extension), 2 usage or document errors.  Every emitted document re-parses
through the same schema helpers; keys are sorted so outputs diff cleanly.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Optional

from . import basis_algebra, moment_graphs, pid_basis, schubert, splines
from .graphs import (
    DirectedGraph,
    DocumentError,
    EdgeLabeledGraph,
    GraphError,
    graph_from_doc,
    graph_to_doc,
    length_ranking,
)
from .permutations import Permutation, PermutationError
from .rings import RingError, parse_element
from .splines import NoExtension, PartialAssignment, Spline


class UsageError(Exception):
    pass


def _emit(doc: object, output: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if output is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(output))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".graphsplines-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, output)
    except BaseException:
        os.unlink(tmp)
        raise


def _load_json(path: str) -> object:
    try:
        with open(path) as handle:
            return json.load(handle)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _load_graph(path: str) -> EdgeLabeledGraph:
    graph = graph_from_doc(_load_json(path))
    if isinstance(graph, DirectedGraph):
        return graph.graph
    return graph


def _load_spline_doc(path: str, graph: Optional[EdgeLabeledGraph]) -> tuple[EdgeLabeledGraph, dict]:
    doc = _load_json(path)
    if not isinstance(doc, dict) or "values" not in doc:
        raise DocumentError(f"{path}: expected an object with a 'values' field")
    if graph is None:
        if "graph" not in doc:
            raise DocumentError(f"{path}: no graph argument and no 'graph' field")
        inline = doc["graph"]
        if isinstance(inline, str):
            base = os.path.dirname(os.path.abspath(path))
            graph = _load_graph(os.path.join(base, inline) if not os.path.isabs(inline) else inline)
        else:
            loaded = graph_from_doc(inline)
            graph = loaded.graph if isinstance(loaded, DirectedGraph) else loaded
    values = {}
    for vertex, text in doc["values"].items():
        if not graph.has_vertex(vertex):
            raise DocumentError(f"{path}: values[{vertex!r}]: unknown vertex")
        try:
            values[vertex] = parse_element(graph.ring, text)
        except RingError as exc:
            raise DocumentError(f"{path}: values[{vertex!r}]: {exc}") from exc
    return graph, values


def _spline_doc(spline: Spline) -> dict:
    return {
        "graph": graph_to_doc(spline.graph),
        "values": {v: str(spline.values[v]) for v in spline.graph.vertices},
    }


def _basis_doc(basis: pid_basis.FlowUpBasis) -> dict:
    return {
        "graph": graph_to_doc(basis.graph),
        "elements": [
            {"leading": lead, "values": {v: str(s.values[v]) for v in basis.graph.vertices}}
            for lead, s in basis.elements
        ],
    }


def _load_basis(path: str, graph: EdgeLabeledGraph) -> pid_basis.FlowUpBasis:
    doc = _load_json(path)
    if not isinstance(doc, dict) or "elements" not in doc:
        raise DocumentError(f"{path}: expected an object with an 'elements' field")
    elements = []
    for i, entry in enumerate(doc["elements"]):
        if "leading" not in entry or "values" not in entry:
            raise DocumentError(f"{path}: elements[{i}]: need 'leading' and 'values'")
        try:
            values = {v: parse_element(graph.ring, text) for v, text in entry["values"].items()}
            elements.append((entry["leading"], Spline(graph, values)))
        except (RingError, splines.SplineError) as exc:
            raise DocumentError(f"{path}: elements[{i}]: {exc}") from exc
    try:
        return pid_basis.FlowUpBasis(graph, elements)
    except pid_basis.BasisError as exc:
        raise DocumentError(f"{path}: {exc}") from exc


def _orientation(graph: EdgeLabeledGraph, spec_text: Optional[str]):
    if spec_text is None or spec_text == "index":
        return None
    if spec_text == "length":
        return length_ranking(graph)
    vertices = [v.strip() for v in spec_text.split(",") if v.strip()]
    if sorted(vertices) != sorted(graph.vertices):
        raise UsageError("--orientation list must name every vertex exactly once")
    return vertices


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def _cmd_gen(args: argparse.Namespace) -> int:
    family = args.family
    if family == "pn":
        graph = moment_graphs.projective_space(_require(args.n, "--n"))
    elif family == "alfeld":
        graph = moment_graphs.alfeld_dual(_require(args.n, "--n"))
    elif family == "bruhat":
        graph = moment_graphs.bruhat_graph(_require(args.n, "--n"), max_vertices=args.max_size)
    elif family == "hessenberg":
        if not args.h:
            raise UsageError("gen hessenberg needs --h like 2,3,3")
        h = tuple(int(x) for x in args.h.split(","))
        graph = moment_graphs.hessenberg_graph(h, max_vertices=args.max_size)
    elif family == "grassmann":
        graph = moment_graphs.johnson_grassmannian(
            _require(args.k, "--k"), _require(args.n, "--n"), max_vertices=args.max_size
        )
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown family {family!r}")
    if args.r:
        from .graphs import power_labels

        graph = power_labels(graph, args.r)
    if args.d is not None:
        graph = _truncate_graph(graph, args.d)
    _emit(graph_to_doc(graph), args.output)
    return 0


def _truncate_graph(graph: EdgeLabeledGraph, d: int) -> EdgeLabeledGraph:
    from .graphs import build_graph
    from .rings import truncated_polynomial_ring

    ring = truncated_polynomial_ring(graph.ring.variables, d)
    edges = [(u, v, ring.parse(str(label))) for u, v, label in graph.edges]
    return build_graph(ring, graph.vertices, edges, graph.vertex_permutations)


def _require(value, flag: str):
    if value is None:
        raise UsageError(f"missing {flag}")
    return value


def _cmd_verify(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    _, values = _load_spline_doc(args.spline, graph)
    ok, violations = splines.verify(graph, values)
    if ok:
        print("ok: all edge conditions hold")
        return 0
    for u, v, diff in violations:
        print(f"violated: edge {u} -- {v}: difference {diff} is not in <{graph.label(u, v)}>")
    return 1


def _cmd_basis(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    if graph.ring.is_polynomial_kind and graph.vertex_permutations:
        n = next(iter(graph.vertex_permutations.values())).n
        elements = []
        for vertex in sorted(graph.vertices, key=lambda v: graph.permutation(v).sort_key()):
            v_perm = graph.permutation(vertex)
            elements.append((vertex, schubert.schubert_class(v_perm, graph=graph)))
        basis = pid_basis.FlowUpBasis(graph, elements)
        _emit(_basis_doc(basis), args.output)
        return 0
    orientation = _orientation(graph, args.orientation)
    basis, trace = pid_basis.flow_up_basis(graph, orientation)
    doc = _basis_doc(basis)
    if args.trace:
        doc["trace"] = trace.to_doc()
    _emit(doc, args.output)
    return 0


def _cmd_billey(args: argparse.Namespace) -> int:
    n = args.n
    w = Permutation.parse(args.w, n)
    v = Permutation.parse(args.v, n)
    value = schubert.billey(w.reduced_word(), v)
    print(value)
    return 0


def _cmd_act(args: argparse.Namespace) -> int:
    graph, values = _load_spline_doc(args.spline, None)
    spline = Spline(graph, values)
    if not graph.vertex_permutations:
        raise UsageError("the spline's graph carries no permutation metadata")
    size = next(iter(graph.vertex_permutations.values())).n
    perm = Permutation.parse(args.perm, size)
    moved = (
        schubert.left_action(perm, spline)
        if args.side == "left"
        else schubert.right_action(perm, spline)
    )
    _emit(_spline_doc(moved), args.output)
    return 0


def _cmd_extend(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    _, values = _load_spline_doc(args.partial, graph)
    partial = PartialAssignment(graph, values)
    result = splines.extend(graph, partial)
    if isinstance(result, NoExtension):
        print(f"no extension: {result.reason}")
        if result.conflict:
            for known, unknown, label, value in result.conflict:
                print(f"  constraint: value at {unknown} == {value} mod <{label}> (from {known})")
        return 1
    _emit(_spline_doc(result), args.output)
    return 0


def _cmd_mult(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    basis = _load_basis(args.basis, graph)
    table = basis_algebra.structure_table(basis)
    _emit(table.to_doc(), args.output)
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    graph = _load_graph(args.graph)
    if args.kind == "hnf":
        orientation = _orientation(graph, args.orientation)
        basis = pid_basis.hnf_spline_lattice(graph, orientation, max_vertices=args.max_size)
        _emit(_basis_doc(basis), args.output)
        return 0
    rank = pid_basis.zmod_rank(graph, max_states=args.max_size)
    _emit({"rank": rank}, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphsplines",
        description="exact generalized splines on edge-labeled graphs",
    )
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized operations")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a generated graph as JSON")
    gen.add_argument("family", choices=["pn", "alfeld", "bruhat", "hessenberg", "grassmann"])
    gen.add_argument("--n", type=int)
    gen.add_argument("--k", type=int)
    gen.add_argument("--h", type=str, help="Hessenberg function, e.g. 2,3,3")
    gen.add_argument("--r", type=int, default=0, help="raise labels to the (r+1)-st power")
    gen.add_argument("--d", type=int, default=None, help="truncate the ring above total degree d")
    gen.add_argument("--max-size", type=int, default=moment_graphs.DEFAULT_MAX_VERTICES)
    gen.add_argument("--output", "-o")
    gen.set_defaults(func=_cmd_gen)

    ver = sub.add_parser("verify", help="check the edge conditions of an assignment")
    ver.add_argument("graph")
    ver.add_argument("spline")
    ver.set_defaults(func=_cmd_verify)

    bas = sub.add_parser("basis", help="flow-up basis (elimination over Z/Q[t], classes on Bruhat graphs)")
    bas.add_argument("graph")
    bas.add_argument("--orientation", help="'index', 'length', or a comma list of vertices")
    bas.add_argument("--trace", action="store_true", help="attach the elimination trace")
    bas.add_argument("--output", "-o")
    bas.set_defaults(func=_cmd_basis)

    bil = sub.add_parser("billey", help="evaluate the subword formula")
    bil.add_argument("--n", type=int, required=True)
    bil.add_argument("--w", required=True, help="vertex permutation, cycles or one-line")
    bil.add_argument("--v", required=True, help="class permutation, cycles or one-line")
    bil.set_defaults(func=_cmd_billey)

    act = sub.add_parser("act", help="act on a spline by a permutation")
    act.add_argument("side", choices=["left", "right"])
    act.add_argument("--perm", required=True)
    act.add_argument("spline")
    act.add_argument("--output", "-o")
    act.set_defaults(func=_cmd_act)

    ext = sub.add_parser("extend", help="complete a partial assignment to a spline")
    ext.add_argument("graph")
    ext.add_argument("partial")
    ext.add_argument("--output", "-o")
    ext.set_defaults(func=_cmd_extend)

    mul = sub.add_parser("mult", help="structure-constant table of a basis")
    mul.add_argument("graph")
    mul.add_argument("basis")
    mul.add_argument("--output", "-o")
    mul.set_defaults(func=_cmd_mult)

    orc = sub.add_parser("oracle", help="independent brute-force oracles")
    orc.add_argument("kind", choices=["hnf", "zmod-rank"])
    orc.add_argument("graph")
    orc.add_argument("--orientation")
    orc.add_argument("--max-size", type=int, default=200_000)
    orc.add_argument("--output", "-o")
    orc.set_defaults(func=_cmd_oracle)

    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return 2 if code else 0
    try:
        return args.func(args)
    except (UsageError, DocumentError, GraphError, RingError, PermutationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except splines.SplineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
