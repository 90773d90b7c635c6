"""Symmetric TSP instances with integer edge lengths.

Lengths are stored as a read-only ``int64`` matrix. Geometric instances keep
their integer coordinates, and their lengths are the TSPLIB ``EUC_2D``
distances (Euclidean distance rounded to the nearest integer, halves up),
computed exactly with integer square roots.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Optional, Sequence

import numpy as np

__all__ = [
    "Instance",
    "InstanceError",
    "euc_2d",
    "edge_length",
    "parse_tsplib",
    "to_tsplib",
    "random_euclidean",
    "from_coords",
    "from_matrix",
    "instance_to_json",
    "instance_from_json",
]

# Lengths above this would let objective sums leave the int64 range that
# external consumers (LP files, JSON readers) typically assume.
MAX_LENGTH = 2**40


class InstanceError(ValueError):
    """Raised for malformed or unsupported instance data."""


def euc_2d(p: Sequence[int], q: Sequence[int]) -> int:
    """Nearest-integer Euclidean distance between two integer points.

    ``floor(sqrt(d2) + 1/2) == (isqrt(4 * d2) + 1) // 2`` holds exactly for
    integer ``d2``, so no floating point is involved.
    """
    dx = int(p[0]) - int(q[0])
    dy = int(p[1]) - int(q[1])
    return (isqrt(4 * (dx * dx + dy * dy)) + 1) // 2


@dataclass(frozen=True, eq=False)
class Instance:
    n: int
    lengths: np.ndarray
    coords: Optional[tuple[tuple[int, int], ...]] = None
    name: str = "instance"

    def __post_init__(self):
        n = self.n
        if n < 3:
            raise InstanceError(f"need at least 3 cities, got {n}")
        mat = np.array(self.lengths, dtype=np.int64)
        if mat.shape != (n, n):
            raise InstanceError(f"length matrix has shape {mat.shape}, expected {(n, n)}")
        np.fill_diagonal(mat, 0)
        if not np.array_equal(mat, mat.T):
            raise InstanceError("length matrix is not symmetric")
        off = mat[~np.eye(n, dtype=bool)]
        if (off <= 0).any():
            raise InstanceError("non-positive length")
        if (off > MAX_LENGTH).any():
            raise InstanceError(f"length exceeds {MAX_LENGTH}")
        mat.setflags(write=False)
        object.__setattr__(self, "lengths", mat)
        if self.coords is not None:
            coords = tuple((int(x), int(y)) for x, y in self.coords)
            if len(coords) != n:
                raise InstanceError("coordinate count does not match n")
            object.__setattr__(self, "coords", coords)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (self.n == other.n and self.coords == other.coords
                and np.array_equal(self.lengths, other.lengths))

    def __hash__(self):
        return hash((self.n, self.coords, self.lengths.tobytes()))

    def length(self, i: int, j: int) -> int:
        return int(self.lengths[i, j])

    def as_lists(self) -> list[list[int]]:
        """Plain nested lists of Python ints, for tight inner loops."""
        return self.lengths.tolist()


def edge_length(inst: Instance, e: Sequence[int]) -> int:
    i, j = e
    for v in (i, j):
        if not 0 <= v < inst.n:
            raise InstanceError(f"city {v} out of range for n={inst.n}")
    if i == j:
        raise InstanceError(f"degenerate edge ({i}, {j})")
    return int(inst.lengths[i, j])


def from_coords(coords: Iterable[Sequence[int]], *, lift_zero: bool = False,
                name: str = "instance") -> Instance:
    pts = [(int(x), int(y)) for x, y in coords]
    n = len(pts)
    mat = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            d = euc_2d(pts[i], pts[j])
            if d == 0 and lift_zero:
                d = 1
            mat[i, j] = mat[j, i] = d
    return Instance(n, mat, tuple(pts), name)


def from_matrix(matrix, name: str = "instance") -> Instance:
    mat = np.asarray(matrix, dtype=np.int64)
    return Instance(mat.shape[0], mat, None, name)


def random_euclidean(n: int, seed: int, coord_range: int = 1000) -> Instance:
    """Uniform integer points in ``[0, coord_range]^2``, no duplicates."""
    if n < 3:
        raise InstanceError(f"need at least 3 cities, got {n}")
    if coord_range < n:
        raise InstanceError("coord_range must be at least n")
    rng = np.random.default_rng(seed)
    seen: set[tuple[int, int]] = set()
    pts: list[tuple[int, int]] = []
    while len(pts) < n:
        x, y = rng.integers(0, coord_range + 1, size=2)
        p = (int(x), int(y))
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return from_coords(pts, lift_zero=True, name=f"rand{n}_s{seed}")


# --- TSPLIB -------------------------------------------------------------

_SECTIONS = ("NODE_COORD_SECTION", "EDGE_WEIGHT_SECTION")


def _as_int(tok: str, what: str) -> int:
    try:
        val = float(tok)
    except ValueError:
        raise InstanceError(f"malformed {what}: {tok!r}") from None
    if val != int(val):
        raise InstanceError(f"non-integer {what}: {tok!r}")
    return int(val)


def parse_tsplib(text: str) -> Instance:
    """Parse the TSPLIB subset: TYPE TSP, EUC_2D or EXPLICIT
    (FULL_MATRIX / UPPER_ROW)."""
    header: dict[str, str] = {}
    section = None
    body: dict[str, list[str]] = {s: [] for s in _SECTIONS}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        key = line.split(":", 1)[0].strip().upper()
        if key == "EOF":
            break
        if key in _SECTIONS:
            section = key
            continue
        if ":" in line and not line[0].isdigit() and not line[0] in "+-.":
            header[key] = line.split(":", 1)[1].strip()
            section = None
            continue
        if section is None:
            raise InstanceError(f"malformed line outside any section: {line!r}")
        body[section].extend(line.split())

    if header.get("TYPE", "TSP").upper() != "TSP":
        raise InstanceError(f"unsupported TYPE {header['TYPE']!r}")
    if "DIMENSION" not in header:
        raise InstanceError("missing DIMENSION")
    n = _as_int(header["DIMENSION"], "DIMENSION")
    if n < 3:
        raise InstanceError(f"DIMENSION < 3 ({n})")
    name = header.get("NAME", "instance")
    ewt = header.get("EDGE_WEIGHT_TYPE", "").upper()

    if ewt == "EUC_2D":
        toks = body["NODE_COORD_SECTION"]
        if len(toks) != 3 * n:
            raise InstanceError(f"malformed NODE_COORD_SECTION: expected {3 * n} tokens, got {len(toks)}")
        pts = {}
        for r in range(n):
            idx = _as_int(toks[3 * r], "node index")
            pts[idx] = (_as_int(toks[3 * r + 1], "coordinate"),
                        _as_int(toks[3 * r + 2], "coordinate"))
        if sorted(pts) != list(range(1, n + 1)):
            raise InstanceError("malformed NODE_COORD_SECTION: node ids must be 1..n")
        coords = [pts[i] for i in range(1, n + 1)]
        inst_pts = from_coords(coords, name=name)  # raises on zero lengths
        return inst_pts

    if ewt == "EXPLICIT":
        fmt = header.get("EDGE_WEIGHT_FORMAT", "").upper()
        vals = [_as_int(t, "edge weight") for t in body["EDGE_WEIGHT_SECTION"]]
        mat = np.zeros((n, n), dtype=np.int64)
        if fmt == "FULL_MATRIX":
            if len(vals) != n * n:
                raise InstanceError(f"malformed EDGE_WEIGHT_SECTION: expected {n * n} values, got {len(vals)}")
            mat[:] = np.array(vals, dtype=np.int64).reshape(n, n)
            np.fill_diagonal(mat, 0)
        elif fmt == "UPPER_ROW":
            m = n * (n - 1) // 2
            if len(vals) != m:
                raise InstanceError(f"malformed EDGE_WEIGHT_SECTION: expected {m} values, got {len(vals)}")
            iu = np.triu_indices(n, 1)
            mat[iu] = vals
            mat = mat + mat.T
        else:
            raise InstanceError(f"unsupported EDGE_WEIGHT_FORMAT {fmt!r}")
        return Instance(n, mat, None, name)

    raise InstanceError(f"unsupported EDGE_WEIGHT_TYPE {ewt!r}")


def to_tsplib(inst: Instance) -> str:
    lines = [f"NAME : {inst.name}", "TYPE : TSP", f"DIMENSION : {inst.n}"]
    if inst.coords is not None and all(
            euc_2d(inst.coords[i], inst.coords[j]) == inst.lengths[i, j]
            for i in range(inst.n) for j in range(i + 1, inst.n)):
        lines += ["EDGE_WEIGHT_TYPE : EUC_2D", "NODE_COORD_SECTION"]
        lines += [f"{i + 1} {x} {y}" for i, (x, y) in enumerate(inst.coords)]
    else:
        # lifted zero distances or matrix instances go out explicitly
        lines += ["EDGE_WEIGHT_TYPE : EXPLICIT", "EDGE_WEIGHT_FORMAT : UPPER_ROW",
                  "EDGE_WEIGHT_SECTION"]
        for i in range(inst.n - 1):
            lines.append(" ".join(str(int(v)) for v in inst.lengths[i, i + 1:]))
    lines.append("EOF")
    return "\n".join(lines) + "\n"


# --- JSON ---------------------------------------------------------------

def instance_to_json(inst: Instance) -> dict:
    iu = np.triu_indices(inst.n, 1)
    return {
        "n": inst.n,
        "coords": [list(p) for p in inst.coords] if inst.coords is not None else None,
        "lengths": [int(v) for v in inst.lengths[iu]],
    }


def instance_from_json(data) -> Instance:
    if isinstance(data, str):
        data = json.loads(data)
    n = int(data["n"])
    vals = data["lengths"]
    if len(vals) != n * (n - 1) // 2:
        raise InstanceError("lengths list does not match n")
    mat = np.zeros((n, n), dtype=np.int64)
    mat[np.triu_indices(n, 1)] = vals
    mat = mat + mat.T
    coords = data.get("coords")
    return Instance(n, mat, tuple(map(tuple, coords)) if coords else None,
                    data.get("name", "instance"))
