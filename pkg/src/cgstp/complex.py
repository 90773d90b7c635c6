"""Triangle/edge index spaces and the triangle-edge incidence structure.

Edges are sorted pairs ``(i, j)`` with ``i < j`` and triangles sorted triples
``(i, j, k)``. Both are ranked in lexicographic order, so rank 0 is
``(0, 1)`` / ``(0, 1, 2)`` and iterating ``range(C(n, k))`` through the
unrank functions visits ``itertools.combinations(range(n), k)`` order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .instance import Instance

__all__ = [
    "Edge",
    "Triangle",
    "Complex",
    "ComplexError",
    "DegenerateDelaunayError",
    "combination_rank",
    "combination_unrank",
    "edge_rank",
    "triangle_rank",
    "triangle_edges",
    "full_complex",
    "restricted_complex",
    "delaunay_candidates",
    "read_triangle_list",
    "write_triangle_list",
]

Edge = tuple[int, int]
Triangle = tuple[int, int, int]


class ComplexError(ValueError):
    pass


class DegenerateDelaunayError(ComplexError):
    """Four or more input points lie on an empty circumcircle."""


def combination_rank(c: Sequence[int], n: int) -> int:
    """Lexicographic rank of a sorted k-subset of ``range(n)``."""
    k = len(c)
    rank = 0
    prev = -1
    for pos, v in enumerate(c):
        for skipped in range(prev + 1, v):
            rank += comb(n - 1 - skipped, k - 1 - pos)
        prev = v
    return rank


def combination_unrank(rank: int, n: int, k: int) -> tuple[int, ...]:
    out = []
    v = 0
    for pos in range(k):
        while True:
            block = comb(n - 1 - v, k - 1 - pos)
            if rank < block:
                break
            rank -= block
            v += 1
        out.append(v)
        v += 1
    return tuple(out)


def edge_rank(e: Edge, n: int) -> int:
    return combination_rank(e, n)


def triangle_rank(t: Triangle, n: int) -> int:
    return combination_rank(t, n)


def triangle_edges(t: Triangle) -> tuple[Edge, Edge, Edge]:
    i, j, k = t
    return (i, j), (i, k), (j, k)


def _check_triangle(t: Sequence[int], n: int) -> Triangle:
    if len(t) != 3:
        raise ComplexError(f"invalid triangle {tuple(t)!r}")
    tri = tuple(sorted(int(v) for v in t))
    if len(set(tri)) != 3 or tri[0] < 0 or tri[2] >= n:
        raise ComplexError(f"invalid triangle {tuple(t)!r} for n={n}")
    return tri  # type: ignore[return-value]


@dataclass(frozen=True, eq=False)
class Complex:
    """Candidate triangles over ``n`` cities and their incidence maps.

    ``edges`` always holds every pair of cities; edges not covered by any
    candidate simply have an empty ``edge_to_tris`` entry.
    """

    n: int
    candidates: tuple[Triangle, ...]
    edges: tuple[Edge, ...] = field(init=False)
    edge_to_tris: dict[Edge, tuple[Triangle, ...]] = field(init=False)
    groups: dict[int, frozenset[Triangle]] = field(init=False)
    candidate_set: frozenset[Triangle] = field(init=False)

    def __post_init__(self):
        if self.n < 3:
            raise ComplexError(f"need at least 3 cities, got {self.n}")
        cands = tuple(sorted({_check_triangle(t, self.n) for t in self.candidates}))
        object.__setattr__(self, "candidates", cands)
        object.__setattr__(self, "candidate_set", frozenset(cands))
        edges = tuple(combinations(range(self.n), 2))
        e2t: dict[Edge, list[Triangle]] = {e: [] for e in edges}
        groups: dict[int, set[Triangle]] = {v: set() for v in range(self.n)}
        for t in cands:
            for e in triangle_edges(t):
                e2t[e].append(t)
            for v in t:
                groups[v].add(t)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "edge_to_tris", {e: tuple(ts) for e, ts in e2t.items()})
        object.__setattr__(self, "groups", {v: frozenset(ts) for v, ts in groups.items()})

    def __contains__(self, t) -> bool:
        return tuple(sorted(t)) in self.candidate_set

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return self.n == other.n and self.candidates == other.candidates

    def __hash__(self):
        return hash((self.n, self.candidates))

    @property
    def is_full(self) -> bool:
        return len(self.candidates) == comb(self.n, 3)

    def incidences(self) -> Iterable[tuple[Triangle, Edge]]:
        for t in self.candidates:
            for e in triangle_edges(t):
                yield t, e


def full_complex(n: int) -> Complex:
    if n < 3:
        raise ComplexError(f"need at least 3 cities, got {n}")
    return Complex(n, tuple(combinations(range(n), 3)))


def restricted_complex(n: int, triangles: Iterable[Sequence[int]]) -> Complex:
    return Complex(n, tuple(_check_triangle(t, n) for t in triangles))


# --- Delaunay (brute force, exact integer predicates) -------------------

def _orient(a, b, c) -> int:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _incircle(a, b, c, d) -> int:
    """Positive when d lies inside the circle through a, b, c (ccw)."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    return (adx * (bdy * cd - bd * cdy)
            - ady * (bdx * cd - bd * cdx)
            + ad * (bdx * cdy - bdy * cdx))


def delaunay_candidates(inst: Instance) -> list[Triangle]:
    """All triangles whose circumcircle has no input point strictly inside.

    Raises :class:`DegenerateDelaunayError` if an otherwise empty circle
    passes through a fourth point, since the triangulation is then not
    unique.
    """
    if inst.coords is None:
        raise ComplexError("Delaunay candidates need coordinates")
    pts = inst.coords
    n = inst.n
    out: list[Triangle] = []
    for t in combinations(range(n), 3):
        a, b, c = (pts[v] for v in t)
        o = _orient(a, b, c)
        if o == 0:
            continue
        sign = 1 if o > 0 else -1
        on_circle = []
        empty = True
        for d in range(n):
            if d in t:
                continue
            s = sign * _incircle(a, b, c, pts[d])
            if s > 0:
                empty = False
                break
            if s == 0:
                on_circle.append(d)
        if not empty:
            continue
        if on_circle:
            raise DegenerateDelaunayError(
                f"cocircular degeneracy: points {list(t) + on_circle} share an empty circle")
        out.append(t)
    return out


# --- candidate list files ------------------------------------------------

def read_triangle_list(text: str, n: int) -> list[Triangle]:
    tris = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ComplexError(f"line {lineno}: expected 'i j k', got {line!r}")
        try:
            tris.append(_check_triangle([int(p) for p in parts], n))
        except ValueError as exc:
            raise ComplexError(f"line {lineno}: {exc}") from None
    return tris


def write_triangle_list(triangles: Iterable[Triangle]) -> str:
    return "".join(f"{i} {j} {k}\n" for i, j, k in triangles)
