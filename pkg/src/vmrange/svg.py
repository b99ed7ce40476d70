"""Static SVG figures of 2-dimensional ranges: polygons, labeled points and
coordinate axes.  Rendering converts exact rationals to floats at the last
moment; nothing feeds back into any computation."""

from __future__ import annotations

from .geometry import Polygon2D
from .rational import RatVector

_COLORS = ("#4878a8", "#c44e52", "#55a868", "#8172b2")


def _fmt(x: float) -> str:
    text = ("%.4f" % x).rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def render_figure(
    polygons: list[tuple[Polygon2D, str]],
    points: list[tuple[RatVector, str]],
    title: str = "",
    size: int = 560,
) -> str:
    """SVG 1.1 document showing the given polygons (with legend labels) and
    marked points."""
    xs = [float(v[0]) for poly, _ in polygons for v in poly.vertices]
    ys = [float(v[1]) for poly, _ in polygons for v in poly.vertices]
    xs += [float(p[0]) for p, _ in points]
    ys += [float(p[1]) for p, _ in points]
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    lo_x, hi_x = min(xs + [0.0]), max(xs)
    lo_y, hi_y = min(ys + [0.0]), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y) or 1.0
    margin = 0.08 * span
    scale = size / (span + 2 * margin)

    def sx(x: float) -> float:
        return (x - lo_x + margin) * scale

    def sy(y: float) -> float:
        return size - (y - lo_y + margin) * scale  # SVG y grows downward

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="%d" height="%d" viewBox="0 0 %d %d">' % (size, size, size, size),
        '<rect width="%d" height="%d" fill="white"/>' % (size, size),
    ]
    # axes through the origin
    out.append(
        '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#999" stroke-width="1"/>'
        % (_fmt(sx(lo_x - margin)), _fmt(sy(0)), _fmt(sx(hi_x + margin)), _fmt(sy(0)))
    )
    out.append(
        '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#999" stroke-width="1"/>'
        % (_fmt(sx(0)), _fmt(sy(lo_y - margin)), _fmt(sx(0)), _fmt(sy(hi_y + margin)))
    )
    for k, (poly, label) in enumerate(polygons):
        color = _COLORS[k % len(_COLORS)]
        verts = poly.vertices
        if not verts:
            continue
        if len(verts) == 1:
            out.append(
                '<circle cx="%s" cy="%s" r="3" fill="%s"/>'
                % (_fmt(sx(float(verts[0][0]))), _fmt(sy(float(verts[0][1]))), color)
            )
        else:
            path = "M " + " L ".join(
                "%s %s" % (_fmt(sx(float(v[0]))), _fmt(sy(float(v[1])))) for v in verts
            )
            if len(verts) > 2:
                path += " Z"
            out.append(
                '<path d="%s" fill="%s" fill-opacity="0.25" stroke="%s" '
                'stroke-width="1.5"/>' % (path, color, color)
            )
        if label:
            out.append(
                '<text x="%d" y="%d" font-size="13" fill="%s">%s</text>'
                % (12, 18 + 16 * k, color, label)
            )
    for p, label in points:
        cx, cy = sx(float(p[0])), sy(float(p[1]))
        out.append(
            '<circle cx="%s" cy="%s" r="3.5" fill="#222"/>' % (_fmt(cx), _fmt(cy))
        )
        if label:
            out.append(
                '<text x="%s" y="%s" font-size="12" fill="#222">%s</text>'
                % (_fmt(cx + 6), _fmt(cy - 6), label)
            )
    if title:
        out.append(
            '<text x="%d" y="%d" font-size="14" fill="#222">%s</text>'
            % (12, size - 10, title)
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
