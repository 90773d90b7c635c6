"""Plain SVG drawing of an instance, a triangle selection and its boundary."""
from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .admissibility import Selection, boundary
from .instance import Instance

__all__ = ["render_svg"]

SIZE = 600
PAD = 30


def render_svg(inst: Instance, sel: Optional[Selection] = None,
               tour: Optional[Sequence[int]] = None, title: str = "") -> str:
    if inst.coords is None:
        raise ValueError("rendering needs an instance with coordinates")
    xs = [p[0] for p in inst.coords]
    ys = [p[1] for p in inst.coords]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1)
    scale = (SIZE - 2 * PAD) / span

    def pt(v: int) -> tuple[float, float]:
        x, y = inst.coords[v]
        # flip y so the picture matches the usual math orientation
        return PAD + (x - min(xs)) * scale, SIZE - PAD - (y - min(ys)) * scale

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" '
           f'width="{SIZE}" height="{SIZE}">',
           f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>']
    if title:
        out.append(f'<title>{title}</title>')
    edges: Iterable = ()
    if sel is not None:
        for t in sorted(sel.K):
            pts = " ".join("{:.2f},{:.2f}".format(*pt(v)) for v in t)
            out.append(f'<polygon points="{pts}" fill="orange" fill-opacity="0.25" '
                       f'stroke="gray" stroke-width="0.8"/>')
        edges = sorted(boundary(sel))
    elif tour is not None:
        edges = [(tour[i - 1], tour[i]) for i in range(len(tour))]
    for a, b in edges:
        (x1, y1), (x2, y2) = pt(a), pt(b)
        out.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
                   f'stroke="#c00000" stroke-width="3"/>')
    for v in range(inst.n):
        x, y = pt(v)
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4" fill="black"/>')
        out.append(f'<text x="{x + 6:.2f}" y="{y - 6:.2f}" font-size="12" '
                   f'font-family="sans-serif">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
