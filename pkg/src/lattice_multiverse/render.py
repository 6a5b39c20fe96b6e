"""DOT and SVG drawings of a universe on its lattice grid.

Nodes sit at their first two coordinates.  Labels are drawn only on
vertices that touch an edge; isolated vertices carry the trivial label
min(z) and are left bare.  Significant vertices (label < min) are marked.
"""

from __future__ import annotations

from typing import Mapping
from xml.sax.saxutils import escape

from .lattice import Universe, Vertex


def _name(v: Vertex) -> str:
    return '"' + ",".join(map(str, v)) + '"'


def _touched(universe: Universe) -> set[Vertex]:
    return {v for e in universe.edges for v in e}


def render_dot(universe: Universe, labels: Mapping[Vertex, int] | None = None, scale: float = 0.5) -> str:
    touched = _touched(universe)
    lines = [
        "digraph universe {",
        f'  graph [k="{universe.k}"];',
        '  node [shape=point, width=0.06];',
    ]
    for v in universe.vertices:
        x, y = v[0], v[1]
        attrs = [f'pos="{x * scale:g},{y * scale:g}!"']
        if labels is not None and v in touched:
            lab = labels[v]
            attrs.append(f'xlabel="{lab}"')
            if lab < min(v):
                attrs += ["shape=circle", "width=0.12", "color=red", 'fontcolor="red"']
        lines.append(f"  {_name(v)} [{', '.join(attrs)}];")
    for s, t in universe.sorted_edges():
        lines.append(f"  {_name(s)} -> {_name(t)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_svg(universe: Universe, labels: Mapping[Vertex, int] | None = None, cell: int = 24) -> str:
    """Same layout as :func:`render_dot`, written directly as SVG with the y axis pointing up."""
    if universe.vertices:
        hi = max(max(v[0], v[1]) for v in universe.vertices)
    else:
        hi = 0
    size = (hi + 2) * cell

    def at(v: Vertex) -> tuple[int, int]:
        return (v[0] + 1) * cell, size - (v[1] + 1) * cell

    touched = _touched(universe)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        '<defs><marker id="a" markerWidth="8" markerHeight="6" refX="8" refY="3" orient="auto">'
        '<path d="M0,0 L8,3 L0,6 z"/></marker></defs>',
    ]
    for s, t in universe.sorted_edges():
        (x1, y1), (x2, y2) = at(s), at(t)
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" marker-end="url(#a)"/>')
    for v in universe.vertices:
        cx, cy = at(v)
        sig = labels is not None and labels[v] < min(v)
        fill = "red" if sig else "black"
        out.append(f'<circle cx="{cx}" cy="{cy}" r="{4 if sig else 2}" fill="{fill}"/>')
        if labels is not None and v in touched:
            out.append(f'<text x="{cx + 4}" y="{cy - 4}" font-size="10" fill="{fill}">{escape(str(labels[v]))}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
