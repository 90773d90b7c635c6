"""0/1 program emission in CPLEX LP format and auditing of external solutions.

Rows cover C1, C2, C3 and C5. The tree constraint C4 has no fixed-size
linear form and is left to the consumer (lazy connectivity cuts);
:func:`validate_external` checks it and reports the components so a cut can
be built. Under C1 and C3 the incidence graph has 3n - 5 nodes and 3n - 6
arcs, so connected and acyclic coincide there.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .admissibility import Selection, Verdict, check_admissible, decode_tour
from .complex import Complex, Edge, Triangle, triangle_edges
from .instance import Instance
from .objective import ObjectiveBreakdown, net_weight
from .tours import Tour

__all__ = [
    "Row",
    "IlpModel",
    "LpFormatError",
    "x_name",
    "y_name",
    "z_name",
    "build_model",
    "emit_lp",
    "parse_lp",
    "selection_assignment",
    "parse_assignment",
    "validate_external",
]

C4_NOTE = (
    "C4 (the selected incidence graph is a tree) is NOT encoded as rows.",
    "Enforce it in the consumer, e.g. with lazy connectivity cuts, and audit",
    "solutions with validate_external. With C1 and C3 the graph has 3n-5 nodes",
    "and 3n-6 arcs, so connectivity alone implies the tree property.",
)


class LpFormatError(ValueError):
    pass


def x_name(t: Triangle) -> str:
    return "x_{}_{}_{}".format(*t)


def y_name(e: Edge) -> str:
    return "y_{}_{}".format(*e)


def z_name(t: Triangle, e: Edge) -> str:
    return "z_{}_{}_{}__{}_{}".format(*t, *e)


@dataclass
class Row:
    name: str
    coeffs: dict[str, int]
    sense: str  # "<=", ">=", "="
    rhs: int

    def satisfied(self, values: Mapping[str, int]) -> bool:
        lhs = sum(c * values[v] for v, c in self.coeffs.items())
        if self.sense == "<=":
            return lhs <= self.rhs
        if self.sense == ">=":
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class IlpModel:
    variables: list[str]
    objective: dict[str, int]
    rows: list[Row]
    sense: str = "maximize"
    notes: list[str] = field(default_factory=list)

    def objective_value(self, values: Mapping[str, int]) -> int:
        return sum(c * values[v] for v, c in self.objective.items())

    def violated_rows(self, values: Mapping[str, int]) -> list[str]:
        return [r.name for r in self.rows if not r.satisfied(values)]

    def to_arrays(self):
        """Dense ``(c, A, lo, hi)`` with ``lo <= A x <= hi``."""
        idx = {v: i for i, v in enumerate(self.variables)}
        c = np.zeros(len(self.variables))
        for v, k in self.objective.items():
            c[idx[v]] = k
        A = np.zeros((len(self.rows), len(self.variables)))
        lo = np.full(len(self.rows), -np.inf)
        hi = np.full(len(self.rows), np.inf)
        for r, row in enumerate(self.rows):
            for v, k in row.coeffs.items():
                A[r, idx[v]] = k
            if row.sense in ("<=", "="):
                hi[r] = row.rhs
            if row.sense in (">=", "="):
                lo[r] = row.rhs
        return c, A, lo, hi


def build_model(inst: Instance, cx: Complex) -> IlpModel:
    if inst.n != cx.n:
        raise ValueError(f"complex has n={cx.n}, instance has n={inst.n}")
    n = cx.n
    L = inst.lengths
    xs = [x_name(t) for t in cx.candidates]
    ys = [y_name(e) for e in cx.edges]
    zs = [z_name(t, e) for t, e in cx.incidences()]

    obj: dict[str, int] = {}
    for t, e in cx.incidences():
        obj[z_name(t, e)] = int(L[e])
    for e in cx.edges:
        obj[y_name(e)] = -2 * int(L[e])

    rows: list[Row] = []
    for t in cx.candidates:
        xt = x_name(t)
        tag = "_".join(map(str, t))
        for e in triangle_edges(t):
            z = z_name(t, e)
            rows.append(Row(f"c1_zy_{tag}__{e[0]}_{e[1]}", {z: 1, y_name(e): -1}, "<=", 0))
            rows.append(Row(f"c1_zx_{tag}__{e[0]}_{e[1]}", {z: 1, xt: -1}, "<=", 0))
        coeffs = {z_name(t, e): 1 for e in triangle_edges(t)}
        coeffs[xt] = -3
        rows.append(Row(f"c1_sum_{tag}", coeffs, "=", 0))
    for e in cx.edges:
        tris = cx.edge_to_tris[e]
        tag = f"{e[0]}_{e[1]}"
        lo = {z_name(t, e): 1 for t in tris}
        lo[y_name(e)] = -1
        hi = {z_name(t, e): 1 for t in tris}
        hi[y_name(e)] = -2
        rows.append(Row(f"c2_lo_{tag}", lo, ">=", 0))
        rows.append(Row(f"c2_hi_{tag}", hi, "<=", 0))
    rows.append(Row("c3_triangles", {x: 1 for x in xs}, "=", n - 2))
    rows.append(Row("c3_edges", {y: 1 for y in ys}, "=", 2 * n - 3))
    for v in range(n):
        coeffs: dict[str, int] = {}
        for t in sorted(cx.groups[v]):
            coeffs[x_name(t)] = 1
        for e in cx.edges:
            if v in e:
                coeffs[y_name(e)] = 1
        for t, e in cx.incidences():
            if v in e:
                coeffs[z_name(t, e)] = -1
        rows.append(Row(f"c5_v{v}", coeffs, "=", 1))

    return IlpModel(xs + ys + zs, obj, rows, notes=list(C4_NOTE))


def _terms(coeffs: Mapping[str, int]) -> list[str]:
    out = []
    for i, (v, c) in enumerate(coeffs.items()):
        sign = "-" if c < 0 else ("+" if i else "")
        mag = abs(c)
        body = v if mag == 1 else f"{mag} {v}"
        out.append(f"{sign} {body}".strip() if sign else body)
    return out


def _wrap(head: str, terms: list[str], tail: str, width: int = 78) -> list[str]:
    lines, cur = [], head
    for tok in terms + ([tail] if tail else []):
        if len(cur) + 1 + len(tok) > width and cur.strip():
            lines.append(cur)
            cur = "   " + tok
        else:
            cur = f"{cur} {tok}" if cur else tok
    lines.append(cur)
    return lines


def emit_lp(inst: Instance, cx: Complex) -> str:
    model = build_model(inst, cx)
    out = [f"\\ cGSTP 0/1 model, n={cx.n}, {len(cx.candidates)} candidate triangles"]
    out += [f"\\ {line}" for line in model.notes]
    out.append("Maximize")
    out += _wrap(" obj:", _terms(model.objective), "")
    out.append("Subject To")
    for row in model.rows:
        # an empty row still needs a variable on the left
        terms = _terms(row.coeffs) if row.coeffs else [f"0 {model.variables[0]}"]
        out += _wrap(f" {row.name}:", terms, f"{row.sense} {row.rhs}")
    out.append("Bounds")
    out += [f" 0 <= {v} <= 1" for v in model.variables]
    out.append("Binary")
    out += _wrap("", model.variables, "")
    out.append("End")
    return "\n".join(out) + "\n"


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*([A-Za-z_][A-Za-z0-9_]*)")


def _parse_expr(text: str) -> dict[str, int]:
    coeffs: dict[str, int] = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m:
            raise LpFormatError(f"cannot parse expression near {text[pos:pos + 20]!r}")
        sign, mag, var = m.groups()
        c = int(mag) if mag else 1
        coeffs[var] = coeffs.get(var, 0) + (-c if sign == "-" else c)
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return coeffs


def parse_lp(text: str) -> IlpModel:
    """Read back the LP subset written by :func:`emit_lp`."""
    section = None
    notes = []
    chunks: dict[str, list[str]] = {"max": [], "st": [], "bounds": [], "binary": []}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("\\"):
            notes.append(line[1:].strip())
            continue
        low = line.lower()
        if low in ("maximize", "maximise", "max"):
            section = "max"
        elif low in ("subject to", "st", "s.t."):
            section = "st"
        elif low == "bounds":
            section = "bounds"
        elif low in ("binary", "binaries", "bin"):
            section = "binary"
        elif low == "end":
            break
        elif section is None:
            raise LpFormatError(f"text outside any section: {line!r}")
        else:
            chunks[section].append(line)

    obj_text = " ".join(chunks["max"])
    if ":" in obj_text:
        obj_text = obj_text.split(":", 1)[1]
    objective = _parse_expr(obj_text)

    rows = []
    stmt: list[str] = []
    for line in chunks["st"]:
        stmt.append(line)
        if re.search(r"(<=|>=|=)\s*-?\d+\s*$", line):
            full = " ".join(stmt)
            stmt = []
            name, body = full.split(":", 1)
            m = re.match(r"(.*?)(<=|>=|=)\s*(-?\d+)\s*$", body)
            if not m:
                raise LpFormatError(f"malformed row {full!r}")
            coeffs = {v: c for v, c in _parse_expr(m.group(1)).items() if c}
            rows.append(Row(name.strip(), coeffs, m.group(2), int(m.group(3))))
    if stmt:
        raise LpFormatError(f"unterminated row {' '.join(stmt)!r}")

    variables = " ".join(chunks["binary"]).split()
    declared = set(variables)
    for row in rows:
        undeclared = set(row.coeffs) - declared
        if undeclared:
            raise LpFormatError(f"row {row.name} uses undeclared {sorted(undeclared)}")
    return IlpModel(variables, objective, rows, notes=notes)


# --- assignments ------------------------------------------------------------

def selection_assignment(sel: Selection) -> dict[str, int]:
    """The 0/1 values of every model variable for a selection."""
    cx = sel.complex
    vals = {x_name(t): int(t in sel.K) for t in cx.candidates}
    vals.update({y_name(e): int(e in sel.edges) for e in cx.edges})
    vals.update({z_name(t, e): int((t, e) in sel.incidences) for t, e in cx.incidences()})
    return vals


def parse_assignment(text: str) -> dict[str, float]:
    """Solver output as a JSON object or ``name value`` lines."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return {str(k): v for k, v in json.loads(stripped).items()}
    out = {}
    for line in stripped.splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if len(parts) != 2:
            raise LpFormatError(f"expected 'name value', got {line!r}")
        out[parts[0]] = float(parts[1])
    return out


def validate_external(assignment: Mapping[str, float], inst: Instance, cx: Complex
                      ) -> tuple[Verdict, Optional[Tour], ObjectiveBreakdown]:
    """Rebuild a selection from raw 0/1 values and audit it, C4 included."""
    if inst.n != cx.n:
        raise ValueError(f"complex has n={cx.n}, instance has n={inst.n}")
    vals: dict[str, int] = {}
    names = ([x_name(t) for t in cx.candidates] + [y_name(e) for e in cx.edges]
             + [z_name(t, e) for t, e in cx.incidences()])
    missing = [v for v in names if v not in assignment]
    if missing:
        raise ValueError(f"assignment misses {len(missing)} variables, e.g. {missing[:3]}")
    for v in names:
        raw = assignment[v]
        r = round(float(raw))
        if r not in (0, 1) or abs(float(raw) - r) > 1e-6:
            raise ValueError(f"non-binary value {raw!r} for {v}")
        vals[v] = r
    sel = Selection(
        cx,
        frozenset(t for t in cx.candidates if vals[x_name(t)]),
        frozenset(e for e in cx.edges if vals[y_name(e)]),
        frozenset((t, e) for t, e in cx.incidences() if vals[z_name(t, e)]),
    )
    verdict = check_admissible(sel)
    tour = decode_tour(sel) if verdict.admissible else None
    return verdict, tour, net_weight(sel, inst)
