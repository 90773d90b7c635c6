"""Fan triangulations: turning a tour into an admissible selection."""
from __future__ import annotations

from typing import Sequence

from .admissibility import Selection, induce_selection
from .complex import Complex, Triangle
from .tours import check_tour

__all__ = ["FanNotInComplexError", "fan_triangles", "fan_encode"]


class FanNotInComplexError(ValueError):
    def __init__(self, missing: dict[int, list[Triangle]]):
        self.missing = missing
        detail = "; ".join(f"apex position {a}: {m}" for a, m in sorted(missing.items()))
        super().__init__(f"no fan of the tour lies in the complex ({detail})")


def fan_triangles(tour: Sequence[int], apex_position: int = 0) -> list[Triangle]:
    """The n - 2 triangles {v1, vi, vi+1} of the fan rooted at one tour city."""
    n = len(tour)
    if not 0 <= apex_position < n:
        raise ValueError(f"apex position {apex_position} out of range for n={n}")
    rot = list(tour[apex_position:]) + list(tour[:apex_position])
    apex = rot[0]
    return sorted(tuple(sorted((apex, rot[i], rot[i + 1]))) for i in range(1, n - 1))


def fan_encode(tour: Sequence[int], apex_position: int, cx: Complex) -> Selection:
    """Canonical selection of a tour's fan.

    If the requested apex's fan is not fully inside ``cx``, the other apex
    positions are tried in cyclic order before giving up.
    """
    t = check_tour(tour, cx.n)
    n = cx.n
    if not 0 <= apex_position < n:
        raise ValueError(f"apex position {apex_position} out of range for n={n}")
    missing: dict[int, list[Triangle]] = {}
    for step in range(n):
        a = (apex_position + step) % n
        K = fan_triangles(t, a)
        absent = [tri for tri in K if tri not in cx.candidate_set]
        if not absent:
            return induce_selection(cx, K)
        missing[a] = absent
    raise FanNotInComplexError(missing)
