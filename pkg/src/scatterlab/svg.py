"""Deterministic SVG rendering: 1-D strips for terms, 2-D plates for box
artifacts.

Output is assembled from exact rational coordinates mapped to an integer
pixel grid, so equal inputs give identical bytes.  Accumulation targets
that the drawing truncates are marked with an ellipsis glyph.
"""

from __future__ import annotations

from fractions import Fraction

from .cubes import BoxUnion, FrameRegion, ProductFamily
from .errors import ValidationError
from .setcore import enumerate_term
from .terms import (
    Affine, Cantor, EndpointSet, FWrap, Interval, Ladder, Mirror, Point,
    PtSetTerm, Thicken, Union, bounds, canonical,
)

_W, _H1, _H2 = 1000, 120, 1000
_PAD = 40


def _px(x: Fraction, lo: Fraction, hi: Fraction, span: int) -> int:
    if hi == lo:
        return _PAD + span // 2
    return _PAD + int((span * (x - lo)) // (hi - lo))


def accumulation_targets(t: PtSetTerm) -> list:
    """Positions where the set piles up beyond any finite drawing."""
    out = set()

    def walk(u, s, h):
        if isinstance(u, Ladder):
            out.add(s * u.target + h)
        elif isinstance(u, Cantor):
            out.update((s * u.a + h, s * u.b + h))
        elif isinstance(u, FWrap):
            out.add(s + h)  # image of the top point 1
        elif isinstance(u, Affine):
            walk(u.inner, s * u.scale, s * u.shift + h)
        elif isinstance(u, Mirror):
            walk(u.inner, s, h)
            walk(u.inner, -s, 2 * u.center * s + h)
        elif isinstance(u, Union):
            for p in u.parts:
                walk(p, s, h)
        elif isinstance(u, (Thicken, EndpointSet)):
            walk(u.inner if isinstance(u, Thicken) else u.of, s, h)

    walk(canonical(t), Fraction(1), Fraction(0))
    return sorted(out)


def render_term(t: PtSetTerm, depth: int = 6) -> str:
    b = bounds(canonical(t))
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" '
             f'viewBox="0 0 {_W} {_H1}">',
             f'<rect width="{_W}" height="{_H1}" fill="#fff"/>']
    if b is None:
        lines.append(f'<text x="{_W // 2}" y="64" text-anchor="middle" '
                     f'font-size="14">empty set</text>')
        lines.append("</svg>")
        return "\n".join(lines) + "\n"
    lo, hi = b
    span = _W - 2 * _PAD
    lines.append(f'<line x1="{_PAD}" y1="60" x2="{_W - _PAD}" y2="60" '
                 f'stroke="#ccc"/>')
    ap = enumerate_term(t, depth)
    for a, c in ap.intervals:
        x0, x1 = _px(a, lo, hi, span), _px(c, lo, hi, span)
        lines.append(f'<rect x="{x0}" y="52" width="{max(x1 - x0, 1)}" '
                     f'height="16" fill="#4a7a96"/>')
    for p in ap.points:
        x = _px(p, lo, hi, span)
        lines.append(f'<line x1="{x}" y1="50" x2="{x}" y2="70" '
                     f'stroke="#1d3a4a" stroke-width="2"/>')
    for a in accumulation_targets(t):
        x = _px(a, lo, hi, span)
        lines.append(f'<text x="{x}" y="42" text-anchor="middle" '
                     f'font-size="16">&#8230;</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _rects(boxes, lo0, hi0, lo1, hi1, span):
    lines = []
    for b in boxes:
        x0 = _px(b.lo(0), lo0, hi0, span)
        x1 = _px(b.hi(0), lo0, hi0, span)
        # SVG y grows downward; flip the second axis
        y0 = _H2 - _px(b.hi(1), lo1, hi1, span)
        y1 = _H2 - _px(b.lo(1), lo1, hi1, span)
        style = ('fill="#4a7a96" fill-opacity="0.5" stroke="#1d3a4a"'
                 if b.closed else
                 'fill="#9ab8c6" fill-opacity="0.4" stroke="#1d3a4a" '
                 'stroke-dasharray="4 3"')
        lines.append(f'<rect x="{x0}" y="{y0}" width="{max(x1 - x0, 1)}" '
                     f'height="{max(y1 - y0, 1)}" {style}/>')
    return lines


def _boxes_2d(all_boxes, markers=()):
    lo0 = min(b.lo(0) for b in all_boxes)
    hi0 = max(b.hi(0) for b in all_boxes)
    lo1 = min(b.lo(1) for b in all_boxes)
    hi1 = max(b.hi(1) for b in all_boxes)
    span = _W - 2 * _PAD
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" '
             f'viewBox="0 0 {_W} {_H2}">',
             f'<rect width="{_W}" height="{_H2}" fill="#fff"/>']
    lines.extend(_rects(all_boxes, lo0, hi0, lo1, hi1, span))
    for mx, my in markers:
        x = _px(mx, lo0, hi0, span)
        y = _H2 - _px(my, lo1, hi1, span)
        lines.append(f'<text x="{x}" y="{y}" text-anchor="middle" '
                     f'font-size="20">&#8230;</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_artifact(x, depth: int = 6) -> str:
    from .families import FramesFamily
    if isinstance(x, PtSetTerm):
        return render_term(x, depth)
    if isinstance(x, BoxUnion):
        if x.dimension == 1:
            bars = [Interval(b.lo(0), b.hi(0), closed=b.closed)
                    for b in x.boxes]
            return render_term(Union(tuple(bars)), depth)
        return _boxes_2d(x.boxes)
    if isinstance(x, FrameRegion):
        return _boxes_2d(x.cells.boxes)
    if isinstance(x, ProductFamily):
        if x.boxes is None:
            return render_term(x.base, depth)
        return render_artifact(x.boxes, depth)
    if isinstance(x, FramesFamily):
        boxes = [x.base]
        for fr in x.frames:
            boxes.extend(fr.cells.boxes)
        # the frame sequence accumulates at the base corner
        return _boxes_2d(boxes, markers=((Fraction(0), Fraction(0)),))
    raise ValidationError(f"no SVG form for {type(x).__name__}")
