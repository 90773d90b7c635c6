"""Tour validation, canonical form and the plain-text tour format."""
from __future__ import annotations

from typing import Iterable, Sequence

__all__ = ["TourError", "check_tour", "canonical_tour", "parse_tour", "format_tour"]

Tour = tuple[int, ...]


class TourError(ValueError):
    pass


def check_tour(tour: Sequence[int], n: int) -> Tour:
    t = tuple(int(v) for v in tour)
    if len(t) != n or sorted(t) != list(range(n)):
        seen = set()
        dup = [v for v in t if v in seen or seen.add(v)]
        missing = sorted(set(range(n)) - set(t))
        raise TourError(f"not a tour of {n} cities (repeated: {dup}, missing: {missing})")
    return t


def canonical_tour(tour: Iterable[int]) -> Tour:
    """Rotate to start at city 0 and orient toward the smaller neighbour."""
    t = list(tour)
    k = t.index(0)
    t = t[k:] + t[:k]
    if len(t) > 2 and t[-1] < t[1]:
        t = [t[0]] + t[:0:-1]
    return tuple(t)


def parse_tour(text: str) -> Tour:
    return tuple(int(tok) for tok in text.split())


def format_tour(tour: Iterable[int]) -> str:
    return " ".join(str(v) for v in tour) + "\n"
