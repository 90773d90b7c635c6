"""Net weight of a selection and the boundary-length identity."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

from .admissibility import Selection, boundary, check_admissible
from .instance import Instance
from .tours import check_tour

__all__ = [
    "ObjectiveBreakdown",
    "ObjectiveError",
    "IdentityPreconditionError",
    "net_weight",
    "tour_length",
    "check_boundary_identity",
]


class ObjectiveError(ValueError):
    pass


class IdentityPreconditionError(ObjectiveError):
    """The selection violates C1 or C2, so the identity does not apply."""


@dataclass(frozen=True)
class ObjectiveBreakdown:
    profit_sum: int
    cost_sum: int
    net: int
    boundary_length: int

    def to_json(self) -> dict:
        return asdict(self)


def _check_n(sel: Selection, inst: Instance):
    if sel.n != inst.n:
        raise ObjectiveError(f"selection has n={sel.n}, instance has n={inst.n}")


def net_weight(sel: Selection, inst: Instance) -> ObjectiveBreakdown:
    _check_n(sel, inst)
    L = inst.lengths
    profit = sum(int(L[e]) for _, e in sel.incidences)
    cost = sum(2 * int(L[e]) for e in sel.edges)
    bnd = sum(int(L[e]) for e in boundary(sel))
    return ObjectiveBreakdown(profit, cost, profit - cost, bnd)


def tour_length(tour: Sequence[int], inst: Instance) -> int:
    t = check_tour(tour, inst.n)
    L = inst.lengths
    return sum(int(L[t[i - 1], t[i]]) for i in range(len(t)))


def check_boundary_identity(sel: Selection, inst: Instance) -> bool:
    """True iff ``-net`` equals the boundary length.

    The net is summed straight from the incidence and edge sets; the
    boundary length walks the edges with one selected incidence.
    """
    _check_n(sel, inst)
    failed = check_admissible(sel).failed() & {"C1", "C2"}
    if failed:
        raise IdentityPreconditionError(f"selection violates {sorted(failed)}")
    L = inst.lengths
    net = (sum(int(L[e]) for _, e in sel.incidences)
           - sum(2 * int(L[e]) for e in sel.edges))
    bnd = sum(int(L[e]) for e in boundary(sel))
    return -net == bnd
