"""Polyhedral cell complex of the second configuration space of a metric tree.

Each ordered pair of edges (e_i, e_j) gives a chart [0, L_i] x [0, L_j]. Off the
diagonal, x and y are measured from the endpoints of e_i and e_j nearest to each
other and the distance is x + d + y. On the diagonal both coordinates are measured
from the edge's u endpoint and the space splits into the branches x - y >= r and
y - x >= r. Cells from different charts are glued by their canonical keys: a
0-cell is an ordered pair of canonical graph points, a 1-cell is the pair of its
endpoints, and a 2-cell belongs to one chart.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .geometry import HalfPlane, Point, Polygon, intersect, split
from .metric_graph import GraphPoint, MetricGraph, ParamPoint

Affine = tuple[Fraction, Fraction, Fraction]  # c0 + cr*r + cL*L
Line = tuple[Fraction, Fraction, Fraction]  # a*x + b*y = c
VertexKey = tuple[GraphPoint, GraphPoint]
Chart = tuple[str, str]

ZERO = Fraction(0)


class IllGluedComplex(RuntimeError):
    pass


class Axis(NamedTuple):
    """How a chart coordinate sits on its edge."""

    edge: str
    near: str  # vertex at coordinate 0
    far: str  # vertex at coordinate L_e
    from_u: bool  # whether coordinate 0 is the edge's u endpoint
    length: Fraction
    length_form: Affine


class CellSystem(NamedTuple):
    """Inequalities a*x + b*y <= c for one chart and branch.

    ``forms`` gives each right-hand side c as an affine function of (r, L).
    Index 4 is the proximity constraint; 0-3 are the box.
    """

    ei: str
    ej: str
    branch: int
    constraints: tuple[HalfPlane, ...]
    forms: tuple[Affine, ...]
    x_axis: Axis
    y_axis: Axis

    @property
    def chart(self) -> Chart:
        return (self.ei, self.ej)


def _axis(g: MetricGraph, eid: str, near: str) -> Axis:
    e = g.edge(eid)
    far = e.v if near == e.u else e.u
    c0, cl = g.length_form(eid)
    return Axis(eid, near, far, near == e.u, e.length, (c0, ZERO, cl))


def cell_systems(g: MetricGraph, p: ParamPoint) -> list[CellSystem]:
    """One system per ordered pair of distinct edges, two per diagonal pair."""
    g = g.at(p.L)
    r = Fraction(p.r)
    out = []
    ids = g.edge_ids
    for ei in ids:
        for ej in ids:
            e, f = g.edge(ei), g.edge(ej)
            if ei == ej:
                ax = _axis(g, ei, e.u)
                branches = [(HalfPlane(Fraction(-1), Fraction(1), -r), (ZERO, Fraction(-1), ZERO)),
                            (HalfPlane(Fraction(1), Fraction(-1), -r), (ZERO, Fraction(-1), ZERO))]
                for b, (prox, form) in enumerate(branches):
                    cons, forms = _box(ax, ax)
                    out.append(CellSystem(ei, ej, b, cons + (prox,), forms + (form,), ax, ax))
                continue
            a, b = min(((x, y) for x in (e.u, e.v) for y in (f.u, f.v)),
                       key=lambda xy: g.vertex_distance(*xy))
            ax, ay = _axis(g, ei, a), _axis(g, ej, b)
            d = g.vertex_distance(a, b)
            d0, dl = g.vertex_distance_form(a, b)
            prox = HalfPlane(Fraction(-1), Fraction(-1), d - r)
            cons, forms = _box(ax, ay)
            out.append(CellSystem(ei, ej, 0, cons + (prox,), forms + ((d0, Fraction(-1), dl),), ax, ay))
    return out


def _box(ax: Axis, ay: Axis) -> tuple[tuple[HalfPlane, ...], tuple[Affine, ...]]:
    one, zero_form = Fraction(1), (ZERO, ZERO, ZERO)
    cons = (HalfPlane(-one, ZERO, ZERO), HalfPlane(one, ZERO, ax.length),
            HalfPlane(ZERO, -one, ZERO), HalfPlane(ZERO, one, ay.length))
    return cons, (zero_form, ax.length_form, zero_form, ay.length_form)


def solve_polygon(s: CellSystem) -> Polygon:
    return intersect(s.constraints)


def _to_point(axis: Axis, x: Fraction) -> GraphPoint:
    if x == 0:
        return GraphPoint(0, axis.near, ZERO)
    if x == axis.length:
        return GraphPoint(0, axis.far, ZERO)
    return GraphPoint(1, axis.edge, x if axis.from_u else axis.length - x)


def _sub(f: Affine, g: Affine) -> Affine:
    return (f[0] - g[0], f[1] - g[1], f[2] - g[2])


def _point_label(axis: Axis, x: Fraction, form: Affine) -> tuple | None:
    if x == 0:
        return (0, axis.near, ()) if form == (ZERO, ZERO, ZERO) else None
    if x == axis.length:
        return (0, axis.far, ()) if form == axis.length_form else None
    return (1, axis.edge, form if axis.from_u else _sub(axis.length_form, form))


def _vertex_forms(s: CellSystem, pt: Point) -> tuple[Affine, Affine] | None:
    """Symbolic coordinates of a polygon vertex, or None if they are ambiguous."""
    tight = [i for i, h in enumerate(s.constraints) if h.value(pt) == 0]
    found = None
    for ii, i in enumerate(tight):
        for j in tight[ii + 1:]:
            hi, hj = s.constraints[i], s.constraints[j]
            det = hi.a * hj.b - hi.b * hj.a
            if det == 0:
                continue
            fi, fj = s.forms[i], s.forms[j]
            xf = tuple((fi[k] * hj.b - fj[k] * hi.b) / det for k in range(3))
            yf = tuple((hi.a * fj[k] - hj.a * fi[k]) / det for k in range(3))
            if found is None:
                found = (xf, yf)
            elif found != (xf, yf):
                return None
    return found


@dataclass
class PolyComplex:
    """Glued regular cell structure; cells listed in canonical order.

    ``labels`` holds parameter-free symbolic names of the cells when the complex
    was built at a generic parameter without extra cuts. Cells are then ordered
    by label, which makes the ordering identical across a chamber.
    """

    graph: MetricGraph
    param: ParamPoint
    vertices: list[VertexKey]
    edges: list[tuple[VertexKey, VertexKey]]  # (tail, head)
    faces: list[tuple]
    face_boundary: list[list[tuple[int, int]]]  # (edge index, sign)
    cell_charts: list[list[frozenset]]  # per dimension: charts each cell arises from
    chart_points: dict[Chart, dict[Point, VertexKey]]
    edge_coords: list[tuple[Chart, Point, Point]]  # a chart containing the edge, tail and head coords
    labels: list[list[tuple]] | None
    generic: bool
    vertex_index: dict[VertexKey, int] = field(default_factory=dict)
    edge_index: dict[frozenset, int] = field(default_factory=dict)

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.edges), len(self.faces)

    def euler_characteristic(self) -> int:
        v, e, f = self.counts
        return v - e + f

    def cells(self, dim: int) -> list:
        return [self.vertices, self.edges, self.faces][dim]


def build_complex(g: MetricGraph, p: ParamPoint,
                  extra_cuts: Mapping[Chart, Sequence[Line]] | None = None) -> PolyComplex:
    """Glue the chart polygons (optionally subdivided) into one cell complex."""
    g = g.at(p.L)
    systems = cell_systems(g, p)
    want_labels = not extra_cuts
    generic = True
    vlabel: dict[VertexKey, tuple] = {}
    vcharts: dict[VertexKey, set] = {}
    ecells: dict[frozenset, tuple[VertexKey, VertexKey]] = {}
    echarts: dict[frozenset, set] = {}
    ecoords: dict[frozenset, tuple[Chart, Point, Point]] = {}
    faces: dict[tuple, tuple[Chart, list[VertexKey]]] = {}
    face_label: dict[tuple, tuple] = {}
    chart_points: dict[Chart, dict[Point, VertexKey]] = {}
    edge_pos = {eid: i for i, eid in enumerate(g.edge_ids)}

    for s in systems:
        poly = solve_polygon(s)
        if poly.empty:
            continue
        chart = s.chart
        pieces = [poly]
        for line in (extra_cuts or {}).get(chart, ()):
            pieces = [q for piece in pieces for q in split(piece, *line)]
        cpts = chart_points.setdefault(chart, {})
        for piece in pieces:
            keys = []
            for pt in piece.vertices:
                key = (_to_point(s.x_axis, pt[0]), _to_point(s.y_axis, pt[1]))
                prev = cpts.setdefault(pt, key)
                if prev != key:
                    raise IllGluedComplex(f"chart {chart} point {pt} has two keys")
                keys.append(key)
                vcharts.setdefault(key, set()).add(chart)
                if want_labels and generic:
                    forms = _vertex_forms(s, pt)
                    lab = None
                    if forms is not None:
                        lx = _point_label(s.x_axis, pt[0], forms[0])
                        ly = _point_label(s.y_axis, pt[1], forms[1])
                        lab = None if lx is None or ly is None else (lx, ly)
                    if lab is None or vlabel.setdefault(key, lab) != lab:
                        generic = False
            n = len(keys)
            segs = []
            if piece.dim == 1:
                segs = [(0, 1)]
            elif piece.dim == 2:
                segs = [(i, (i + 1) % n) for i in range(n)]
            for i, j in segs:
                ek = frozenset((keys[i], keys[j]))
                ecells.setdefault(ek, (keys[i], keys[j]))
                echarts.setdefault(ek, set()).add(chart)
                ecoords.setdefault(ek, (chart, piece.vertices[i], piece.vertices[j]))
            if piece.dim == 2:
                fk = (s.ei, s.ej, s.branch, tuple(sorted(keys)))
                faces[fk] = (chart, keys)
                face_label[fk] = (edge_pos[s.ei], edge_pos[s.ej], s.branch)

    if want_labels and generic:
        if len(set(vlabel.values())) != len(vlabel):
            generic = False
    use_labels = want_labels and generic

    def vorder(k: VertexKey):
        return vlabel[k] if use_labels else k

    vertices = sorted(vcharts, key=vorder)
    vindex = {k: i for i, k in enumerate(vertices)}
    oriented = {}
    for ek, (a, b) in ecells.items():
        oriented[ek] = (a, b) if vorder(a) < vorder(b) else (b, a)
    elist = sorted(oriented, key=lambda ek: (vorder(oriented[ek][0]), vorder(oriented[ek][1])))
    eindex = {ek: i for i, ek in enumerate(elist)}
    fkeys = sorted(faces, key=lambda fk: face_label[fk] if use_labels else fk)
    boundary = []
    for fk in fkeys:
        _, keys = faces[fk]
        bd = []
        n = len(keys)
        for i in range(n):
            a, b = keys[i], keys[(i + 1) % n]
            ek = frozenset((a, b))
            tail, _ = oriented[ek]
            bd.append((eindex[ek], 1 if tail == a else -1))
        boundary.append(bd)

    labels = None
    if use_labels:
        labels = [
            [vlabel[k] for k in vertices],
            [(vlabel[oriented[ek][0]], vlabel[oriented[ek][1]]) for ek in elist],
            [face_label[fk] for fk in fkeys],
        ]
    edge_coords = []
    for ek in elist:
        chart, c0, c1 = ecoords[ek]
        tail, _ = oriented[ek]
        pts = chart_points[chart]
        k0 = pts[c0]
        edge_coords.append((chart, c0, c1) if k0 == tail else (chart, c1, c0))
    cx = PolyComplex(
        graph=g,
        param=p,
        vertices=vertices,
        edges=[oriented[ek] for ek in elist],
        faces=fkeys,
        face_boundary=boundary,
        cell_charts=[
            [frozenset(vcharts[k]) for k in vertices],
            [frozenset(echarts[ek]) for ek in elist],
            [frozenset([faces[fk][0]]) for fk in fkeys],
        ],
        chart_points=chart_points,
        edge_coords=edge_coords,
        labels=labels,
        generic=want_labels and generic,
        vertex_index=vindex,
        edge_index=eindex,
    )
    return cx


class ChainComplex(NamedTuple):
    """Integer boundary matrices d1 (vertices x edges) and d2 (edges x faces)."""

    d1: np.ndarray
    d2: np.ndarray

    @property
    def sizes(self) -> tuple[int, int, int]:
        return self.d1.shape[0], self.d1.shape[1], self.d2.shape[1]


def chain_complex(cx: PolyComplex) -> ChainComplex:
    nv, ne, nf = cx.counts
    d1 = np.zeros((nv, ne), dtype=np.int64)
    for j, (tail, head) in enumerate(cx.edges):
        d1[cx.vertex_index[tail], j] -= 1
        d1[cx.vertex_index[head], j] += 1
    d2 = np.zeros((ne, nf), dtype=np.int64)
    for j, bd in enumerate(cx.face_boundary):
        for i, sgn in bd:
            d2[i, j] += sgn
    if nf and np.any(d1 @ d2):
        raise IllGluedComplex("boundary of boundary is nonzero")
    return ChainComplex(d1, d2)
