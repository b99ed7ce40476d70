"""Exact convex geometry in the rational plane.

Polygons are stored in a canonical form (counterclockwise, lexicographically
smallest vertex first, no collinear triples kept), so equality of sets is
literal equality of vertex tuples.  Degenerate polygons with 0, 1 or 2
vertices represent the empty set, a point and a segment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rational import ONE, ZERO, RatVector, format_rational


def cross(a: RatVector, b: RatVector) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _hull_chain(points: list[RatVector]) -> list[RatVector]:
    chain: list[RatVector] = []
    for p in points:
        while (
            len(chain) >= 2 and cross(chain[-1] - chain[-2], p - chain[-2]) <= 0
        ):
            chain.pop()
        chain.append(p)
    return chain


@dataclass(frozen=True)
class Polygon2D:
    """Canonical convex polygon; build through :meth:`hull`."""

    vertices: tuple[RatVector, ...]

    @staticmethod
    def hull(points: Iterable[RatVector]) -> "Polygon2D":
        """Exact convex hull (monotone chain), collinear points dropped."""
        pts = sorted(set(points), key=lambda v: v.sort_key())
        for p in pts:
            if p.dim != 2:
                raise ValueError("hull expects 2-dimensional points")
        if len(pts) <= 2:
            return Polygon2D(tuple(pts))
        lower = _hull_chain(pts)
        upper = _hull_chain(pts[::-1])
        return Polygon2D(tuple(lower[:-1] + upper[:-1]))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def translate(self, shift: RatVector) -> "Polygon2D":
        # translation preserves lexicographic order, hence canonical form
        return Polygon2D(tuple(v + shift for v in self.vertices))

    def contains(self, point: RatVector) -> bool:
        verts = self.vertices
        if not verts:
            return False
        if len(verts) == 1:
            return point == verts[0]
        if len(verts) == 2:
            return _on_segment(verts[0], verts[1], point)
        for i, a in enumerate(verts):
            b = verts[(i + 1) % len(verts)]
            if cross(b - a, point - a) < 0:
                return False
        return True

    def area_doubled(self) -> Fraction:
        """Twice the signed area (shoelace); zero for degenerate polygons."""
        total = ZERO
        verts = self.vertices
        for i, a in enumerate(verts):
            b = verts[(i + 1) % len(verts)]
            total += cross(a, b)
        return total

    def edges(self) -> list[tuple[RatVector, RatVector]]:
        verts = self.vertices
        if len(verts) < 2:
            return []
        if len(verts) == 2:
            return [(verts[0], verts[1])]
        return [(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))]

    def to_json(self) -> list[list[str]]:
        return [v.to_json() for v in self.vertices]

    def __str__(self) -> str:
        return "[" + ", ".join(str(v) for v in self.vertices) + "]"


def _on_segment(a: RatVector, b: RatVector, p: RatVector) -> bool:
    if cross(b - a, p - a) != 0:
        return False
    lo_x, hi_x = min(a[0], b[0]), max(a[0], b[0])
    lo_y, hi_y = min(a[1], b[1]), max(a[1], b[1])
    return lo_x <= p[0] <= hi_x and lo_y <= p[1] <= hi_y


def polygon_equals(a: Polygon2D, b: Polygon2D) -> bool:
    return a.vertices == b.vertices


def _clip_by_halfplane(
    points: list[RatVector], edge_a: RatVector, edge_b: RatVector
) -> list[RatVector]:
    """Sutherland-Hodgman step: keep the side left of edge_a -> edge_b."""
    direction = edge_b - edge_a
    out: list[RatVector] = []
    n = len(points)
    for i in range(n):
        cur, nxt = points[i], points[(i + 1) % n]
        f_cur = cross(direction, cur - edge_a)
        f_nxt = cross(direction, nxt - edge_a)
        if f_cur >= 0:
            out.append(cur)
        if (f_cur > 0 and f_nxt < 0) or (f_cur < 0 and f_nxt > 0):
            t = f_cur / (f_cur - f_nxt)
            out.append(cur + (nxt - cur).scale(t))
    return out


def _clip_segment(a: RatVector, b: RatVector, poly: Polygon2D) -> Polygon2D:
    """Intersection of segment [a, b] with a full-dimensional convex polygon."""
    t_lo, t_hi = ZERO, ONE
    for ea, eb in poly.edges():
        direction = eb - ea
        f_a = cross(direction, a - ea)
        f_b = cross(direction, b - ea)
        slope = f_b - f_a
        if slope == 0:
            if f_a < 0:
                return Polygon2D(())
            continue
        t_star = -f_a / slope
        if slope > 0:
            t_lo = max(t_lo, t_star)
        else:
            t_hi = min(t_hi, t_star)
        if t_lo > t_hi:
            return Polygon2D(())
    p_lo = a + (b - a).scale(t_lo)
    p_hi = a + (b - a).scale(t_hi)
    return Polygon2D.hull([p_lo, p_hi])


def _segment_segment(
    a0: RatVector, a1: RatVector, b0: RatVector, b1: RatVector
) -> Polygon2D:
    da, db = a1 - a0, b1 - b0
    d = cross(da, db)
    if d != 0:
        # lines cross in a single point; check it lies on both segments
        w = b0 - a0
        t = cross(w, db) / d
        u = cross(w, da) / d
        if 0 <= t <= 1 and 0 <= u <= 1:
            return Polygon2D((a0 + da.scale(t),))
        return Polygon2D(())
    if cross(da, b0 - a0) != 0:
        return Polygon2D(())  # parallel, different lines
    # collinear: overlap of parameter intervals along da
    axis = da if not da.is_zero() else db
    if axis.is_zero():
        return Polygon2D((a0,)) if a0 == b0 else Polygon2D(())

    def param(p: RatVector) -> Fraction:
        return (
            (p[0] - a0[0]) / axis[0] if axis[0] else (p[1] - a0[1]) / axis[1]
        )

    ta0, ta1 = sorted((param(a0), param(a1)))
    tb0, tb1 = sorted((param(b0), param(b1)))
    lo, hi = max(ta0, tb0), min(ta1, tb1)
    if lo > hi:
        return Polygon2D(())
    return Polygon2D.hull([a0 + axis.scale(lo), a0 + axis.scale(hi)])


def intersect_convex(a: Polygon2D, b: Polygon2D) -> Polygon2D:
    """Exact intersection of two convex polygons (degenerate cases included)."""
    if a.is_empty or b.is_empty:
        return Polygon2D(())
    if len(a.vertices) == 1:
        return a if b.contains(a.vertices[0]) else Polygon2D(())
    if len(b.vertices) == 1:
        return b if a.contains(b.vertices[0]) else Polygon2D(())
    if len(a.vertices) == 2 and len(b.vertices) == 2:
        return _segment_segment(*a.vertices, *b.vertices)
    if len(a.vertices) == 2:
        return _clip_segment(a.vertices[0], a.vertices[1], b)
    if len(b.vertices) == 2:
        return _clip_segment(b.vertices[0], b.vertices[1], a)
    points = list(a.vertices)
    for ea, eb in b.edges():
        points = _clip_by_halfplane(points, ea, eb)
        if not points:
            return Polygon2D(())
    return Polygon2D.hull(points)
