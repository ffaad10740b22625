"""Expansion in a flow-up basis and multiplication tables.

Because a flow-up basis is triangular in its solve order, expansion is a
chain of exact divisions: walk the leading vertices from the bottom up,
divide the residual there by the element's leading value, subtract.
Products of basis elements expand back exactly, giving the structure
constants.
"""

from __future__ import annotations

from typing import Optional

from .pid_basis import BasisError, FlowUpBasis
from .rings import RingElement
from .splines import Spline


class ExpressError(BasisError):
    pass


def express(p: Spline, basis: FlowUpBasis) -> list[tuple[str, RingElement]]:
    """Coefficients of p in the basis, one per leading vertex in solve order.

    Raises ExpressError when some division fails, i.e. p is outside the
    span (possible for submodules or arbitrary user input).
    """
    coeffs = basis.solve(p)
    if coeffs is None:
        raise ExpressError("spline is not in the span of the basis")
    return list(zip(basis.leading_vertices(), coeffs))


class StructureTable:
    """All products of basis elements, re-expanded in the basis."""

    def __init__(self, basis: FlowUpBasis):
        self.basis = basis
        self.entries: dict[tuple[str, str], list[tuple[str, RingElement]]] = {}
        leads = basis.leading_vertices()
        for i, a in enumerate(leads):
            for b in leads[i:]:
                product = basis.element(a) * basis.element(b)
                expansion = express(product, basis)
                terms = [(c, coeff) for c, coeff in expansion if not coeff.is_zero()]
                # invariant: the expansion reconstructs the product exactly
                recombined = Spline.zero(basis.graph)
                for c, coeff in terms:
                    recombined = recombined + basis.element(c).scale(coeff)
                if recombined != product:
                    raise BasisError(f"table entry ({a}, {b}) fails to reconstruct")
                self.entries[(a, b)] = terms

    def get(self, a: str, b: str) -> list[tuple[str, RingElement]]:
        if (a, b) in self.entries:
            return self.entries[(a, b)]
        if (b, a) in self.entries:
            return self.entries[(b, a)]
        raise BasisError(f"no table entry for ({a}, {b})")

    def to_doc(self) -> dict:
        pairs = []
        for (a, b), terms in self.entries.items():
            pairs.append(
                {
                    "a": a,
                    "b": b,
                    "terms": [{"c": c, "coeff": str(coeff)} for c, coeff in terms],
                }
            )
        return {"pairs": pairs}


def structure_table(basis: FlowUpBasis) -> StructureTable:
    return StructureTable(basis)
