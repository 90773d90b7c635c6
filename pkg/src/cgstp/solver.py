"""Exact maximisation of the net weight over admissible triangle selections.

Every admissible selection is a triangulated polygon whose vertices all lie
on its boundary, and the triangle adjacency of such a polygon is a tree. The
search grows that tree from a root triangle: each open boundary edge is
either closed for good or glued to a new triangle whose third city is not yet
covered. Rooting at the boundary edge ``(0, a)`` with ``a`` the smaller of
city 0's two boundary neighbours makes every admissible selection appear as
exactly one leaf (see :func:`enumerate_disks`).

The objective of a leaf is minus its boundary length, which the search
tracks incrementally. Which tours are still reachable depends only on the
current boundary (closed edges, open edges) and the root, so a boundary state
already expanded is skipped the second time it is reached through a
different triangulation. The optional bound prunes a node only when a lower
bound on its final boundary length strictly exceeds the incumbent, so every
optimal tour is still found. Among the optimal tours, the reported selection
is the lexicographically smallest triangle set over all of their
triangulations inside the complex.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import ceil
from typing import Callable, Iterator, Optional, Sequence

from .admissibility import CONSTRAINTS, check_admissible, decode_tour, induce_selection
from .complex import Complex, Triangle, edge_rank
from .instance import Instance
from .objective import net_weight
from .tours import Tour, canonical_tour, format_tour

__all__ = [
    "SolveOptions",
    "SolveReport",
    "solve_exact",
    "enumerate_disks",
    "polygon_triangulations",
]

_HK_ITERS = 10
PRUNE_KEYS = CONSTRAINTS + ("bound", "symmetry", "transposition")


@dataclass(frozen=True)
class SolveOptions:
    use_bound: bool = True
    node_limit: Optional[int] = None
    deterministic: bool = True

    def __post_init__(self):
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be >= 1")
        if not self.deterministic:
            raise ValueError("only deterministic search is supported")


@dataclass
class SolveReport:
    status: str
    best_K: tuple[Triangle, ...] = ()
    best_tour: Optional[Tour] = None
    objective: Optional[int] = None
    tour_length: Optional[int] = None
    nodes_explored: int = 0
    prunes: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "best_K": [list(t) for t in self.best_K],
            "best_tour": list(self.best_tour) if self.best_tour is not None else None,
            "objective": self.objective,
            "tour_length": self.tour_length,
            "nodes_explored": self.nodes_explored,
            "prunes": dict(sorted(self.prunes.items())),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @property
    def tour_text(self) -> str:
        return format_tour(self.best_tour) if self.best_tour is not None else ""


class _NodeLimit(Exception):
    pass


class _DiskSearch:
    def __init__(self, L: list[list[int]], cx: Complex, *, use_bound: bool,
                 transpositions: bool, node_limit: Optional[int],
                 on_leaf: Callable[[int, list[Triangle]], None]):
        n = cx.n
        self.n = n
        self.L = L
        self.use_bound = use_bound
        self.node_limit = node_limit
        self.on_leaf = on_leaf
        self.best_len: Optional[int] = None
        self.nodes = 0
        self.prunes = dict.fromkeys(PRUNE_KEYS, 0)
        self.seen: Optional[set] = set() if transpositions else None

        # third cities per edge, cheapest triangle first
        self.apexes: dict[tuple[int, int], list[int]] = {}
        for e, tris in cx.edge_to_tris.items():
            a, b = e
            cs = [next(v for v in t if v not in e) for t in tris]
            cs.sort(key=lambda c: (L[a][c] + L[b][c], c))
            self.apexes[e] = cs
        self.bit = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                self.bit[i][j] = self.bit[j][i] = 1 << edge_rank((i, j), n)

        self.used = [False] * n
        self.remaining = n
        self.stack: list[tuple[int, int]] = []
        self.K: list[Triangle] = []
        self.closed_len = 0
        self.closed_mask = 0
        self.open_mask = 0
        self.closed_nb: list[list[int]] = [[] for _ in range(n)]
        self.warm_pi = [0.0] * n
        self.root_a = -1

    def run(self):
        n, L, bit = self.n, self.L, self.bit
        roots = []
        for a in range(1, n):
            for c in self.apexes[(0, a)]:
                roots.append((L[0][a] + L[0][c] + L[a][c], tuple(sorted((0, a, c))), a, c))
        roots.sort()
        for _, tri, a, c in roots:
            self.root_a = a
            for v in tri:
                self.used[v] = True
            self.remaining = n - 3
            self.K = [tri]
            self.closed_len = L[0][a]
            self.closed_mask = bit[0][a]
            self.open_mask = bit[a][c] | bit[0][c]
            self.closed_nb[0].append(a)
            self.closed_nb[a].append(0)
            self.stack = [(a, c), (0, c)]
            self._search()
            self.closed_nb[0].pop()
            self.closed_nb[a].pop()
            for v in tri:
                self.used[v] = False

    def lower_bound(self) -> int:
        """Closed length plus half the cheapest future boundary degree cost.

        Each end of an open edge ends up joined either to the other end or
        to an uncovered city; each uncovered city gets two neighbours among
        the uncovered cities and the open-edge ends.
        """
        L, n, used = self.L, self.n, self.used
        R = [v for v in range(n) if not used[v]]
        if not R:
            return self.closed_len + sum(L[a][b] for a, b in self.stack)
        twice = 0
        ports = set()
        for a, b in self.stack:
            ports.add(a)
            ports.add(b)
            for v, w in ((a, b), (b, a)):
                Lv = L[v]
                m = Lv[w]
                for r in R:
                    if Lv[r] < m:
                        m = Lv[r]
                twice += m
        partners = R + sorted(ports)
        for r in R:
            Lr = L[r]
            m1 = m2 = None
            for u in partners:
                if u == r:
                    continue
                d = Lr[u]
                if m1 is None or d < m1:
                    m1, m2 = d, m1
                elif m2 is None or d < m2:
                    m2 = d
            twice += m1 + m2
        lb = self.closed_len + (twice + 1) // 2
        if self.best_len is not None and lb <= self.best_len:
            lb = max(lb, self.closed_len + self._one_tree_bound(R, self.best_len - self.closed_len))
        return lb

    def _one_tree_bound(self, R: list[int], budget: int) -> int:
        """Lagrangian 1-tree bound on the remaining splice problem.

        Each chain of closed edges shrinks to one node reachable through
        either end; uncovered cities stay as nodes; ports only connect to
        each other across an open edge. Stops early once above ``budget``.
        """
        L, nb = self.L, self.closed_nb
        nodes: list[tuple[int, ...]] = []
        done = set()
        for a, b in self.stack:
            for p in (a, b):
                if p in done:
                    continue
                if not nb[p]:
                    done.add(p)
                    nodes.append((p,))
                    continue
                prev, cur = p, nb[p][0]
                while len(nb[cur]) == 2:
                    prev, cur = cur, nb[cur][0] if nb[cur][0] != prev else nb[cur][1]
                done.add(p)
                done.add(cur)
                nodes.append((p, cur))
        n_ports = len(nodes)
        nodes.extend((r,) for r in R)
        m = len(nodes)
        if m < 3:
            return 0
        gaps = {(a, b) for a, b in self.stack} | {(b, a) for a, b in self.stack}
        INF = float("inf")
        C = [[INF] * m for _ in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                best = INF
                free = i >= n_ports or j >= n_ports
                for u in nodes[i]:
                    Lu = L[u]
                    for w in nodes[j]:
                        if (free or (u, w) in gaps) and Lu[w] < best:
                            best = Lu[w]
                C[i][j] = C[j][i] = best
        special = n_ports  # an uncovered city, linked to everything
        others = [i for i in range(m) if i != special]
        warm = self.warm_pi
        pi = [0.0] * n_ports + [warm[r] for r in R]
        bound = 0.0
        step = None
        for it in range(_HK_ITERS):
            deg = [0] * m
            # Prim over everything but the special node
            key = {i: INF for i in others}
            link = {}
            key[others[0]] = 0.0
            total = 0.0
            while key:
                u = min(key, key=key.get)
                total += key.pop(u)
                if u in link:
                    deg[u] += 1
                    deg[link[u]] += 1
                Cu, pu = C[u], pi[u]
                for v in key:
                    c = Cu[v] + pu + pi[v]
                    if c < key[v]:
                        key[v] = c
                        link[v] = u
            Cs, ps = C[special], pi[special]
            ends = sorted((Cs[i] + ps + pi[i], i) for i in others)[:2]
            for c, i in ends:
                total += c
                deg[i] += 1
            deg[special] = 2
            w = total - 2 * sum(pi)
            if w > bound:
                bound = w
            if bound > budget + 1e-9:
                break
            g = [d - 2 for d in deg]
            norm = sum(x * x for x in g)
            if norm == 0:
                break
            if step is None:
                step = 1.0
            t = step * (budget - w + 1) / norm
            pi = [p + t * x for p, x in zip(pi, g)]
            if it % 5 == 4:
                step /= 2
        for r, p in zip(R, pi[n_ports:]):
            warm[r] = p
        return ceil(bound - 1e-7)

    def _search(self):
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise _NodeLimit
        stack = self.stack
        if not stack:
            if self.remaining == 0:
                self.on_leaf(self.closed_len, self.K)
            else:
                self.prunes["C3a"] += 1
            return
        if self.seen is not None:
            key = (self.root_a, self.closed_mask, self.open_mask)
            if key in self.seen:
                self.prunes["transposition"] += 1
                return
            self.seen.add(key)
        if self.use_bound and self.best_len is not None:
            if self.lower_bound() > self.best_len:
                self.prunes["bound"] += 1
                return

        bit = self.bit
        a, b = stack.pop()
        ab = bit[a][b]
        self.open_mask ^= ab
        e = (a, b) if a < b else (b, a)
        if e[0] == 0 and e[1] < self.root_a:
            self.prunes["symmetry"] += 1
        elif not stack and self.remaining:
            self.prunes["C3a"] += 1
        else:
            d = self.L[a][b]
            self.closed_len += d
            self.closed_mask ^= ab
            self.closed_nb[a].append(b)
            self.closed_nb[b].append(a)
            self._search()
            self.closed_nb[a].pop()
            self.closed_nb[b].pop()
            self.closed_mask ^= ab
            self.closed_len -= d
        if self.remaining:
            used = self.used
            for c in self.apexes[e]:
                if used[c]:
                    continue
                used[c] = True
                self.remaining -= 1
                self.K.append(tuple(sorted((a, b, c))))
                stack.append((c, b))
                stack.append((a, c))
                new = bit[a][c] | bit[c][b]
                self.open_mask ^= new
                self._search()
                self.open_mask ^= new
                stack.pop()
                stack.pop()
                self.K.pop()
                self.remaining += 1
                used[c] = False

        self.open_mask ^= ab
        stack.append((a, b))


def enumerate_disks(cx: Complex) -> Iterator[tuple[Triangle, ...]]:
    """Yield every admissible triangle set of the complex exactly once."""
    found: list[tuple[Triangle, ...]] = []
    ones = [[1] * cx.n for _ in range(cx.n)]
    eng = _DiskSearch(ones, cx, use_bound=False, transpositions=False, node_limit=None,
                      on_leaf=lambda _, K: found.append(tuple(sorted(K))))
    eng.run()
    yield from found


def polygon_triangulations(tour: Sequence[int], cx: Complex) -> Iterator[tuple[Triangle, ...]]:
    """Every triangulation of the tour's polygon using candidate triangles."""
    p = list(tour)
    cand = cx.candidate_set

    @lru_cache(maxsize=None)
    def span(i: int, j: int) -> tuple[tuple[Triangle, ...], ...]:
        if j == i + 1:
            return ((),)
        out = []
        for k in range(i + 1, j):
            t = tuple(sorted((p[i], p[k], p[j])))
            if t not in cand:
                continue
            for left in span(i, k):
                for right in span(k, j):
                    out.append(left + right + (t,))
        return tuple(out)

    for tris in span(0, len(p) - 1):
        yield tuple(sorted(tris))


def _boundary_tour(K: Sequence[Triangle], n: int) -> Tour:
    count: dict[tuple[int, int], int] = {}
    for i, j, k in K:
        for e in ((i, j), (i, k), (j, k)):
            count[e] = count.get(e, 0) + 1
    nbrs: dict[int, list[int]] = {v: [] for v in range(n)}
    for (a, b), c in count.items():
        if c == 1:
            nbrs[a].append(b)
            nbrs[b].append(a)
    tour, prev = [0], None
    while len(tour) < n:
        cur = tour[-1]
        nxt = next(v for v in nbrs[cur] if v != prev)
        prev = cur
        tour.append(nxt)
    return canonical_tour(tour)


def solve_exact(inst: Instance, cx: Complex, opts: SolveOptions | None = None) -> SolveReport:
    opts = opts or SolveOptions()
    if cx.n != inst.n:
        raise ValueError(f"complex has n={cx.n}, instance has n={inst.n}")
    optimal_tours: set[Tour] = set()

    def on_leaf(length: int, K: list[Triangle]):
        if eng.best_len is not None and length > eng.best_len:
            return
        verdict = check_admissible(induce_selection(cx, K))
        if not verdict.admissible:
            for tag in verdict.failed():
                eng.prunes[tag] += 1
            return
        if eng.best_len is None or length < eng.best_len:
            eng.best_len = length
            optimal_tours.clear()
        optimal_tours.add(_boundary_tour(K, cx.n))

    eng = _DiskSearch(inst.as_lists(), cx, use_bound=opts.use_bound, transpositions=True,
                      node_limit=opts.node_limit, on_leaf=on_leaf)
    status = "optimal"
    try:
        eng.run()
    except _NodeLimit:
        status = "node_limit_reached"
        eng.nodes -= 1

    if not optimal_tours:
        return SolveReport("infeasible" if status == "optimal" else status,
                           nodes_explored=eng.nodes, prunes=eng.prunes)
    best_K = min(K for tour in optimal_tours for K in polygon_triangulations(tour, cx))
    sel = induce_selection(cx, best_K)
    if not check_admissible(sel).admissible:
        raise AssertionError(f"optimal selection {best_K} is not admissible")
    breakdown = net_weight(sel, inst)
    tour = decode_tour(sel)
    if breakdown.net != -eng.best_len or breakdown.boundary_length != eng.best_len:
        raise AssertionError("incremental boundary length disagrees with net weight")
    return SolveReport(status, best_K, tour, breakdown.net, eng.best_len,
                       eng.nodes, eng.prunes)
