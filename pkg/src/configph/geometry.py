"""Exact half-plane intersection in the plane."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

Point = tuple[Fraction, Fraction]


class HalfPlane(NamedTuple):
    """The closed half-plane a*x + b*y <= c."""

    a: Fraction
    b: Fraction
    c: Fraction

    def value(self, pt: Point) -> Fraction:
        return self.a * pt[0] + self.b * pt[1] - self.c


@dataclass(frozen=True)
class Polygon:
    """Convex polygon. dim is -1 (empty), 0, 1 or 2.

    Vertices run counterclockwise from the one with least (y, x). A segment lists
    its two endpoints, a point its single vertex.
    """

    dim: int
    vertices: tuple[Point, ...]

    @property
    def empty(self) -> bool:
        return self.dim < 0


EMPTY = Polygon(-1, ())


def cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def clip(vertices: Sequence[Point], h: HalfPlane) -> list[Point]:
    """Sutherland-Hodgman step: keep the part of a convex vertex cycle inside h."""
    out: list[Point] = []
    n = len(vertices)
    for i in range(n):
        cur, nxt = vertices[i], vertices[(i + 1) % n]
        vc, vn = h.value(cur), h.value(nxt)
        if vc <= 0:
            out.append(cur)
        if (vc < 0 < vn) or (vn < 0 < vc):
            s = vc / (vc - vn)
            out.append((cur[0] + s * (nxt[0] - cur[0]), cur[1] + s * (nxt[1] - cur[1])))
    return out


def normalize(points: Iterable[Point]) -> Polygon:
    """Canonical polygon from a (possibly degenerate) convex vertex cycle."""
    pts: list[Point] = []
    for p in points:
        if not pts or pts[-1] != p:
            pts.append(p)
    while len(pts) > 1 and pts[0] == pts[-1]:
        pts.pop()
    if not pts:
        return EMPTY
    uniq = sorted(set(pts), key=lambda p: (p[1], p[0]))
    if len(uniq) == 1:
        return Polygon(0, (uniq[0],))
    if all(cross(uniq[0], uniq[1], p) == 0 for p in uniq[2:]):
        ends = sorted(uniq)
        seg = (ends[0], ends[-1])
        return Polygon(1, tuple(sorted(seg, key=lambda p: (p[1], p[0]))))
    # drop collinear middle vertices, keep cyclic order
    cyc = [p for i, p in enumerate(pts) if p not in pts[:i]]
    m = len(cyc)
    keep = [
        cyc[i] for i in range(m) if cross(cyc[i - 1], cyc[i], cyc[(i + 1) % m]) != 0
    ]
    area2 = sum(keep[i][0] * keep[(i + 1) % len(keep)][1] - keep[(i + 1) % len(keep)][0] * keep[i][1]
                for i in range(len(keep)))
    if area2 < 0:
        keep.reverse()
    start = min(range(len(keep)), key=lambda i: (keep[i][1], keep[i][0]))
    return Polygon(2, tuple(keep[start:] + keep[:start]))


def intersect(constraints: Sequence[HalfPlane]) -> Polygon:
    """Intersection of half-planes, which must include bounds on x and y."""
    xlo = ylo = None
    xhi = yhi = None
    for h in constraints:
        if h.b == 0 and h.a != 0:
            bound = h.c / h.a
            if h.a > 0:
                xhi = bound if xhi is None else min(xhi, bound)
            else:
                xlo = bound if xlo is None else max(xlo, bound)
        elif h.a == 0 and h.b != 0:
            bound = h.c / h.b
            if h.b > 0:
                yhi = bound if yhi is None else min(yhi, bound)
            else:
                ylo = bound if ylo is None else max(ylo, bound)
        elif h.a == 0 and h.b == 0 and h.c < 0:
            return EMPTY
    if None in (xlo, xhi, ylo, yhi):
        raise ValueError("constraint system must bound both coordinates")
    if xlo > xhi or ylo > yhi:
        return EMPTY
    pts: list[Point] = [(xlo, ylo), (xhi, ylo), (xhi, yhi), (xlo, yhi)]
    for h in constraints:
        if h.a != 0 and h.b != 0:
            pts = clip(pts, h)
            if not pts:
                return EMPTY
    return normalize(pts)


def split(poly: Polygon, a: Fraction, b: Fraction, c: Fraction) -> list[Polygon]:
    """Cut a polygon by the line a*x + b*y = c when the line crosses its relative interior."""
    if poly.dim < 1:
        return [poly]
    vals = [a * x + b * y - c for x, y in poly.vertices]
    if not (min(vals) < 0 < max(vals)):
        return [poly]
    lo = normalize(clip(poly.vertices, HalfPlane(a, b, c)))
    hi = normalize(clip(poly.vertices, HalfPlane(-a, -b, -c)))
    return [lo, hi]


def on_segment(p: Point, a: Point, b: Point) -> bool:
    if cross(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def centroid(poly: Polygon) -> Point:
    """Vertex average; strictly interior for a 2-dimensional polygon."""
    n = len(poly.vertices)
    return (sum((p[0] for p in poly.vertices), Fraction(0)) / n,
            sum((p[1] for p in poly.vertices), Fraction(0)) / n)
