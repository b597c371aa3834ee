"""Deterministic SVG rendering of assembled surfaces.

One group per domain; boundary segments as paths, singularity corners
as radius-3 circles.  Unbounded pieces are clipped to the viewport.
All coordinates are printed with fixed precision so identical inputs
give byte-identical output.
"""

from __future__ import annotations

from .construction import CMINUS, DMINUS, SEG, Surface

MARGIN = 2.0
HALF_EXTENT = 4.0
ROW_GAP = 3.0


def _fmt(x: float) -> str:
    return f"{x:.4f}"


def _domain_rows(surface: Surface):
    """Stack domains on rows: upper domains, then lower, then bands."""
    rows = []
    for dom in surface.domains:
        if dom.kind in (DMINUS, CMINUS):
            rows.append(1)
        else:
            rows.append(0)
    return rows


def render_svg(surface: Surface) -> str:
    parts = []
    shapes = []
    x_cursor = [0.0, 0.0]
    rows = _domain_rows(surface)
    max_height = 1.0
    placed = []

    for dom in surface.domains:
        pts = []
        for piece in dom.pieces:
            for p in (piece.start, piece.end):
                if p is not None:
                    pts.append((float(p.re), float(p.im)))
        if not pts:
            pts = [(0.0, 0.0)]
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        w = max(xs) - min(xs) + 2 * HALF_EXTENT
        h = max(ys) - min(ys) + 2 * HALF_EXTENT
        max_height = max(max_height, h)
        row = rows[dom.index]
        ox = x_cursor[row] - min(xs) + HALF_EXTENT
        x_cursor[row] += w + MARGIN
        placed.append((dom, ox, row, min(ys)))

    row_offset = max_height + ROW_GAP
    min_x, min_y, max_x, max_y = 0.0, 0.0, 1.0, 1.0

    for dom, ox, row, y_min in placed:
        oy = row * row_offset - y_min + HALF_EXTENT
        group = [f'<g id="domain-{dom.index}" data-kind="{dom.kind}">']
        for pi, piece in enumerate(dom.pieces):
            if piece.kind == SEG:
                p, q = piece.start, piece.end
                x1, y1 = float(p.re) + ox, oy - float(p.im)
                x2, y2 = float(q.re) + ox, oy - float(q.im)
                group.append(
                    f'<path d="M {_fmt(x1)} {_fmt(y1)} L {_fmt(x2)} {_fmt(y2)}"'
                    f' stroke="black" stroke-width="0.06" fill="none"'
                    f' data-label="{piece.label}"/>')
            else:
                base = piece.start if piece.start is not None else piece.end
                d = piece.direction
                sign = 1 if piece.start is not None else -1
                x1, y1 = float(base.re) + ox, oy - float(base.im)
                x2 = x1 + sign * float(d.re) * HALF_EXTENT
                y2 = y1 - sign * float(d.im) * HALF_EXTENT
                group.append(
                    f'<path d="M {_fmt(x1)} {_fmt(y1)} L {_fmt(x2)} {_fmt(y2)}"'
                    f' stroke="gray" stroke-width="0.04" fill="none"'
                    f' stroke-dasharray="0.3 0.2" data-piece="{piece.kind}"/>')
            for p in (piece.start, piece.end):
                if p is None:
                    continue
                cx, cy = float(p.re) + ox, oy - float(p.im)
                min_x, max_x = min(min_x, cx - 4), max(max_x, cx + 4)
                min_y, max_y = min(min_y, cy - 4), max(max_y, cy + 4)
        corner_pts = set()
        for pi, piece in enumerate(dom.pieces):
            for p in (piece.start, piece.end):
                if p is not None:
                    corner_pts.add((float(p.re), float(p.im)))
        for (px, py) in sorted(corner_pts):
            group.append(
                f'<circle cx="{_fmt(px + ox)}" cy="{_fmt(oy - py)}" r="3"'
                f' fill="none" stroke="crimson" stroke-width="0.05"/>')
        group.append("</g>")
        shapes.append("\n".join(group))

    width = max_x - min_x + 2 * MARGIN
    height = max_y - min_y + 2 * MARGIN
    parts.append('<?xml version="1.0" encoding="UTF-8"?>')
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(min_x - MARGIN)} {_fmt(min_y - MARGIN)} '
        f'{_fmt(width)} {_fmt(height)}">')
    parts.extend(shapes)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
