"""Independent exact TSP solvers used to cross-check the disk search."""
from __future__ import annotations

from itertools import permutations

import numpy as np

from .instance import Instance
from .tours import Tour, canonical_tour

__all__ = ["OracleRangeError", "tsp_oracle_bruteforce", "tsp_oracle_held_karp"]

BRUTEFORCE_MAX_N = 10
HELD_KARP_MAX_N = 16


class OracleRangeError(ValueError):
    pass


def tsp_oracle_bruteforce(inst: Instance) -> tuple[Tour, int]:
    """Enumerate every tour with city 0 first and ``second < last``.

    Permutations come out in lexicographic order and ``argmin`` keeps the
    first minimum, so ties resolve to the lexicographically smallest tour.
    """
    n = inst.n
    if not 3 <= n <= BRUTEFORCE_MAX_N:
        raise OracleRangeError(f"brute force supports 3 <= n <= {BRUTEFORCE_MAX_N}, got {n}")
    perms = np.array(list(permutations(range(1, n))), dtype=np.intp)
    perms = perms[perms[:, 0] < perms[:, -1]]
    L = inst.lengths
    total = L[0, perms[:, 0]] + L[perms[:, -1], 0]
    total = total + L[perms[:, :-1], perms[:, 1:]].sum(axis=1)
    best = int(np.argmin(total))
    return (0, *map(int, perms[best])), int(total[best])


def tsp_oracle_held_karp(inst: Instance) -> tuple[Tour, int]:
    """Subset dynamic program over paths that start at city 0."""
    n = inst.n
    if not 3 <= n <= HELD_KARP_MAX_N:
        raise OracleRangeError(f"Held-Karp supports 3 <= n <= {HELD_KARP_MAX_N}, got {n}")
    L = inst.as_lists()
    m = n - 1  # cities 1..n-1 mapped to bits 0..m-1
    full = (1 << m) - 1
    INF = float("inf")
    cost = [[INF] * m for _ in range(1 << m)]
    parent = [[-1] * m for _ in range(1 << m)]
    for j in range(m):
        cost[1 << j][j] = L[0][j + 1]
    for mask in range(1, 1 << m):
        row = cost[mask]
        for j in range(m):
            cj = row[j]
            if cj == INF or not mask >> j & 1:
                continue
            Lj = L[j + 1]
            for k in range(m):
                if mask >> k & 1:
                    continue
                nm = mask | 1 << k
                c = cj + Lj[k + 1]
                if c < cost[nm][k]:
                    cost[nm][k] = c
                    parent[nm][k] = j
    best, last = INF, -1
    for j in range(m):
        c = cost[full][j] + L[j + 1][0]
        if c < best:
            best, last = c, j
    path = []
    mask, j = full, last
    while j != -1:
        path.append(j + 1)
        mask, j = mask ^ (1 << j), parent[mask][j]
    tour = canonical_tour([0] + path[::-1])
    return tour, int(best)
