"""Deterministic SVG drawings of petal projections and grid diagrams."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .diagrams import GridDiagram
from .sequence import PetalSequence

__all__ = ["render_svg"]

_HEADER = ('<?xml version="1.0" encoding="UTF-8"?>\n'
           '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           'width="{w}" height="{h}" viewBox="0 0 {w} {h}">\n')


def _f(v: float) -> str:
    # fixed precision keeps the output byte-stable
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def _petal_svg(s: PetalSequence, size: int = 400) -> str:
    p = len(s)
    c = size / 2
    r = size * 0.42
    out = [_HEADER.format(w=size, h=size)]
    out.append(f'<title>petal projection {escape(str(s.levels))}</title>\n')
    out.append('<g fill="none" stroke="black" stroke-width="2">\n')
    for j in range(p):
        # loop j leaves the centre along the end of strand j and returns
        # along the start of strand j + 1 (adjacent rim nodes)
        node = (j * (p + 1) + p) % (2 * p)
        a1 = math.pi * node / p
        a2 = math.pi * (node + 1) / p
        if p == 1:
            a1, a2 = math.pi / 3, -math.pi / 3
        x1, y1 = c + r * math.cos(a1), c - r * math.sin(a1)
        x2, y2 = c + r * math.cos(a2), c - r * math.sin(a2)
        out.append(f'<path d="M {_f(c)} {_f(c)} C {_f(x1)} {_f(y1)} {_f(x2)} {_f(y2)} '
                   f'{_f(c)} {_f(c)}"/>\n')
    out.append('</g>\n')
    if p > 1:
        out.append('<g font-family="sans-serif" font-size="12" text-anchor="middle">\n')
        for j, level in enumerate(s.levels):
            node = (j * (p + 1)) % (2 * p)
            a = math.pi * node / p
            x, y = c + 0.12 * size * math.cos(a), c - 0.12 * size * math.sin(a)
            out.append(f'<text x="{_f(x)}" y="{_f(y)}">{level}</text>\n')
        out.append('</g>\n')
        label = "(" + ",".join(map(str, s.levels)) + ")"
        out.append(f'<text x="{_f(c)}" y="{_f(size - 8)}" font-family="sans-serif" '
                   f'font-size="14" text-anchor="middle">{escape(label)}</text>\n')
    out.append('</svg>\n')
    return "".join(out)


def _grid_svg(g: GridDiagram, cell: int = 30) -> str:
    n = g.size
    pad = cell
    w = n * cell + 2 * pad

    def cx(col):  # col is 1-based
        return pad + (col - 0.5) * cell

    def cy(row):  # row 1 at the bottom
        return pad + (n - row + 0.5) * cell

    out = [_HEADER.format(w=w, h=w)]
    out.append('<g stroke="#bbbbbb" stroke-width="1">\n')
    for k in range(n + 1):
        v = pad + k * cell
        out.append(f'<line x1="{_f(pad)}" y1="{_f(v)}" x2="{_f(pad + n * cell)}" y2="{_f(v)}"/>\n')
        out.append(f'<line x1="{_f(v)}" y1="{_f(pad)}" x2="{_f(v)}" y2="{_f(pad + n * cell)}"/>\n')
    out.append('</g>\n<g stroke="black" stroke-width="2">\n')
    for row, (xc, oc) in sorted(g.horizontals().items()):
        out.append(f'<line x1="{_f(cx(xc))}" y1="{_f(cy(row))}" x2="{_f(cx(oc))}" y2="{_f(cy(row))}"/>\n')
    out.append('</g>\n')
    # verticals go over: draw a white halo first
    for stroke, width in (("white", 6), ("black", 2)):
        out.append(f'<g stroke="{stroke}" stroke-width="{width}">\n')
        for col in range(1, n + 1):
            o, x = g.o_row[col - 1], g.x_row[col - 1]
            inset = 0.3 * cell if stroke == "white" else 0
            sgn = 1 if x > o else -1
            y1 = cy(o) - sgn * inset
            y2 = cy(x) + sgn * inset
            out.append(f'<line x1="{_f(cx(col))}" y1="{_f(y1)}" x2="{_f(cx(col))}" y2="{_f(y2)}"/>\n')
        out.append('</g>\n')
    out.append('<g fill="white" stroke="black" stroke-width="2">\n')
    for col in range(1, n + 1):
        out.append(f'<circle cx="{_f(cx(col))}" cy="{_f(cy(g.o_row[col - 1]))}" r="{_f(cell * 0.25)}"/>\n')
    out.append('</g>\n<g stroke="black" stroke-width="2">\n')
    for col in range(1, n + 1):
        x0, y0, d = cx(col), cy(g.x_row[col - 1]), cell * 0.25
        out.append(f'<line x1="{_f(x0 - d)}" y1="{_f(y0 - d)}" x2="{_f(x0 + d)}" y2="{_f(y0 + d)}"/>\n')
        out.append(f'<line x1="{_f(x0 - d)}" y1="{_f(y0 + d)}" x2="{_f(x0 + d)}" y2="{_f(y0 - d)}"/>\n')
    out.append('</g>\n</svg>\n')
    return "".join(out)


def render_svg(x: PetalSequence | GridDiagram) -> str:
    """Standalone SVG 1.1 document for a petal sequence (a rose with the
    levels written at the central crossing) or a grid diagram."""
    if isinstance(x, GridDiagram):
        return _grid_svg(x)
    if isinstance(x, PetalSequence):
        return _petal_svg(x)
    raise TypeError(f"cannot render {type(x).__name__}")
