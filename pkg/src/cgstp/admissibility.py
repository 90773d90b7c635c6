"""Selections over a complex, the admissibility constraints and tour decoding.

A selection is the triple ``(x, y, z)`` of 0/1 indicators over triangles,
edges and triangle-edge incidences, kept here as three sets. Constraint tags:

* ``C1`` incidence linking (a selected triangle uses all three edges),
* ``C2`` manifold regularity (1 or 2 selected incidences per selected edge),
* ``C3a`` / ``C3b`` disk cardinalities ``n - 2`` triangles, ``2n - 3`` edges,
* ``C4`` the selected incidence graph is a tree,
* ``C5`` every vertex star has Euler characteristic 1.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

from .complex import Complex, Edge, Triangle, triangle_edges
from .tours import Tour, canonical_tour

__all__ = [
    "Selection",
    "Violation",
    "Verdict",
    "SelectionError",
    "SoundnessError",
    "CONSTRAINTS",
    "induce_selection",
    "check_admissible",
    "boundary",
    "boundary_cycle",
    "decode_tour",
    "vertex_star_euler",
    "incidence_graph_components",
    "selection_to_json",
    "selection_from_json",
    "verdict_to_json",
]

CONSTRAINTS = ("C1", "C2", "C3a", "C3b", "C4", "C5")

Incidence = tuple[Triangle, Edge]


class SelectionError(ValueError):
    pass


class SoundnessError(RuntimeError):
    """An admissible selection whose boundary is not one Hamiltonian cycle.

    Admissibility rules this out, so seeing it means a bug.
    """


@dataclass(frozen=True)
class Selection:
    complex: Complex = field(repr=False)
    K: frozenset[Triangle]
    edges: frozenset[Edge]
    incidences: frozenset[Incidence]

    @property
    def n(self) -> int:
        return self.complex.n

    def sorted_K(self) -> list[Triangle]:
        return sorted(self.K)

    def incidence_counts(self) -> dict[Edge, int]:
        cnt: dict[Edge, int] = defaultdict(int)
        for _, e in self.incidences:
            cnt[e] += 1
        return cnt


@dataclass(frozen=True)
class Violation:
    constraint: str
    witness: Any


@dataclass(frozen=True)
class Verdict:
    violations: tuple[Violation, ...] = ()

    @property
    def admissible(self) -> bool:
        return not self.violations

    def failed(self) -> set[str]:
        return {v.constraint for v in self.violations}

    def __bool__(self):
        return self.admissible


def induce_selection(cx: Complex, K: Iterable[Iterable[int]]) -> Selection:
    tris = frozenset(tuple(sorted(t)) for t in K)
    bad = sorted(t for t in tris if t not in cx.candidate_set)
    if bad:
        raise SelectionError(f"triangles not in the candidate set: {bad}")
    inc = frozenset((t, e) for t in tris for e in triangle_edges(t))
    return Selection(cx, tris, frozenset(e for _, e in inc), inc)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def _active_arcs(sel: Selection) -> list[Incidence]:
    return [(t, e) for t, e in sel.incidences if t in sel.K and e in sel.edges]


def incidence_graph_components(sel: Selection) -> tuple[list[list], bool]:
    """Components of the selected incidence graph and whether it has a cycle.

    Nodes are tagged ``("t", triangle)`` and ``("e", edge)``.
    """
    nodes = [("t", t) for t in sorted(sel.K)] + [("e", e) for e in sorted(sel.edges)]
    uf = _UnionFind(nodes)
    cyclic = False
    for t, e in sorted(_active_arcs(sel)):
        if not uf.union(("t", t), ("e", e)):
            cyclic = True
    comps: dict = defaultdict(list)
    for v in nodes:
        comps[uf.find(v)].append(v)
    return sorted(comps.values()), cyclic


def vertex_star_euler(sel: Selection, v: int) -> int:
    """Nodes minus arcs of the subgraph induced on triangles/edges through v."""
    if not 0 <= v < sel.n:
        raise SelectionError(f"city {v} out of range for n={sel.n}")
    nodes = sum(1 for t in sel.K if v in t) + sum(1 for e in sel.edges if v in e)
    arcs = sum(1 for t, e in _active_arcs(sel) if v in e)
    return nodes - arcs


def check_admissible(sel: Selection) -> Verdict:
    n = sel.n
    out: list[Violation] = []

    # C1: z <= x, z <= y, and three incidences per selected triangle
    for t, e in sorted(sel.incidences):
        if t not in sel.K:
            out.append(Violation("C1", {"triangle": t, "edge": e, "reason": "incidence without triangle"}))
        if e not in sel.edges:
            out.append(Violation("C1", {"triangle": t, "edge": e, "reason": "incidence without edge"}))
    for t in sorted(sel.K):
        missing = [e for e in triangle_edges(t) if (t, e) not in sel.incidences]
        if missing:
            out.append(Violation("C1", {"triangle": t, "missing_edges": missing}))

    # C2: y_e <= sum_t z_te <= 2 y_e, over every edge of the complex
    cnt = sel.incidence_counts()
    for e in sorted(set(cnt) | sel.edges):
        y = 1 if e in sel.edges else 0
        c = cnt.get(e, 0)
        if not y <= c <= 2 * y:
            out.append(Violation("C2", {"edge": e, "incidences": c, "selected": bool(y)}))

    if len(sel.K) != n - 2:
        out.append(Violation("C3a", {"triangles": len(sel.K), "expected": n - 2}))
    if len(sel.edges) != 2 * n - 3:
        out.append(Violation("C3b", {"edges": len(sel.edges), "expected": 2 * n - 3}))

    comps, cyclic = incidence_graph_components(sel)
    n_nodes = len(sel.K) + len(sel.edges)
    n_arcs = len(_active_arcs(sel))
    # cyclomatic number from counts must agree with the union-find verdict
    if cyclic != (n_arcs - n_nodes + len(comps) > 0):
        raise AssertionError("union-find and cyclomatic count disagree")
    if len(comps) > 1 or cyclic:
        out.append(Violation("C4", {
            "components": [[list(x) for x in comp] for comp in comps],
            "cyclic": cyclic,
        }))

    for v in range(n):
        chi = vertex_star_euler(sel, v)
        if chi != 1:
            out.append(Violation("C5", {"vertex": v, "chi": chi}))

    return Verdict(tuple(out))


def boundary(sel: Selection) -> frozenset[Edge]:
    """Selected edges carrying exactly one selected incidence."""
    cnt = sel.incidence_counts()
    return frozenset(e for e in sel.edges if cnt.get(e, 0) == 1)


def boundary_cycle(edges: Iterable[Edge], n: int) -> Optional[Tour]:
    """Walk an edge set as one simple cycle through all n cities.

    Returns the canonical tour, or ``None`` when the edges are not a single
    Hamiltonian cycle.
    """
    adj: dict[int, list[int]] = defaultdict(list)
    m = 0
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
        m += 1
    if m != n or len(adj) != n or any(len(nb) != 2 for nb in adj.values()):
        return None
    tour = [0]
    prev, cur = None, 0
    while True:
        a, b = adj[cur]
        nxt = a if a != prev else b
        if nxt == 0:
            break
        tour.append(nxt)
        prev, cur = cur, nxt
        if len(tour) > n:
            return None
    if len(tour) != n:
        return None
    return canonical_tour(tour)


def decode_tour(sel: Selection) -> Tour:
    tour = boundary_cycle(boundary(sel), sel.n)
    if tour is None:
        raise SoundnessError(
            f"boundary of K={sorted(sel.K)} is not a simple Hamiltonian cycle")
    return tour


# --- JSON -----------------------------------------------------------------

def selection_to_json(sel: Selection) -> dict:
    return {"K": [list(t) for t in sorted(sel.K)], "canonical": True}


def selection_from_json(data: dict, cx: Complex) -> Selection:
    if not data.get("canonical", True):
        raise SelectionError("only canonical selection files are supported")
    return induce_selection(cx, [tuple(t) for t in data["K"]])


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def verdict_to_json(verdict: Verdict) -> dict:
    return {
        "admissible": verdict.admissible,
        "violations": [{"constraint": v.constraint, "witness": _plain(v.witness)}
                       for v in verdict.violations],
    }
