"""Finite metric trees, canonical points on them, and the path metric."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping, NamedTuple


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    pass


class NotATree(GraphError):
    pass


class NonPositiveLength(GraphError):
    pass


def parse_rational(value: Any) -> Fraction:
    """Parse an int, Fraction, or "p/q" string exactly. Floats are refused."""
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return Fraction(int(num), int(den))
            return Fraction(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {value!r}") from exc
    raise ParseError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    length: Fraction


class GraphPoint(NamedTuple):
    """A point of the graph in canonical form.

    ``kind`` is 0 for a vertex (``name`` is the vertex id, ``t`` is 0) and 1 for an
    interior edge point (``name`` is the edge id, ``t`` is the distance from the
    edge's ``u`` endpoint, strictly between 0 and the edge length). Tuple order puts
    vertices before interior points and edges in lexicographic order.
    """

    kind: int
    name: str
    t: Fraction


class ParamPoint(NamedTuple):
    r: Fraction
    L: Fraction

    @classmethod
    def of(cls, r: Any, L: Any) -> "ParamPoint":
        r, L = parse_rational(r), parse_rational(L)
        if r <= 0 or L <= 0:
            raise GraphError("r and L must be positive")
        return cls(r, L)


@dataclass(frozen=True)
class MetricGraph:
    """A metric tree. Edges listed in ``variable`` have length ``coef * L``.

    ``edges`` carry the lengths at the current value of L; ``at(L)`` rebuilds
    them for another value. ``groups`` holds optional named edge sets used by
    the built-in Mayer-Vietoris covers.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    variable: Mapping[str, Fraction] = field(default_factory=dict)
    L: Fraction = Fraction(1)
    groups: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    name: str = "tree"

    def __post_init__(self) -> None:
        _validate(self.vertices, self.edges)
        for eid, coef in self.variable.items():
            if eid not in self.edge_ids:
                raise GraphError(f"variable edge {eid!r} not in graph")
            if coef <= 0:
                raise NonPositiveLength(f"coefficient of {eid!r} must be positive")

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def edge(self, eid: str) -> Edge:
        return self._edge_map[eid]

    @property
    def _edge_map(self) -> dict[str, Edge]:
        cached = self.__dict__.get("_emap")
        if cached is None:
            cached = {e.id: e for e in self.edges}
            object.__setattr__(self, "_emap", cached)
        return cached

    def at(self, L: Fraction) -> "MetricGraph":
        """Same tree with the variable edges set for parameter value L."""
        L = Fraction(L)
        if L == self.L:
            return self
        edges = tuple(
            Edge(e.id, e.u, e.v, self.variable[e.id] * L) if e.id in self.variable else e
            for e in self.edges
        )
        return MetricGraph(self.vertices, edges, dict(self.variable), L, dict(self.groups), self.name)

    def length_form(self, eid: str) -> tuple[Fraction, Fraction]:
        """Edge length as (constant, coefficient of L)."""
        if eid in self.variable:
            return Fraction(0), self.variable[eid]
        return self.edge(eid).length, Fraction(0)

    # vertex-to-vertex distances, cached per instance
    def vertex_distance(self, a: str, b: str) -> Fraction:
        return self._vdist[a][b]

    def vertex_path(self, a: str, b: str) -> list[str]:
        """Edge ids along the unique path from vertex a to vertex b."""
        parent = self._parents[a]
        path = []
        cur = b
        while cur != a:
            prev, eid = parent[cur]
            path.append(eid)
            cur = prev
        path.reverse()
        return path

    @property
    def _parents(self) -> dict[str, dict[str, tuple[str, str]]]:
        cached = self.__dict__.get("_par")
        if cached is None:
            adj: dict[str, list[tuple[str, str]]] = {v: [] for v in self.vertices}
            for e in self.edges:
                adj[e.u].append((e.v, e.id))
                adj[e.v].append((e.u, e.id))
            cached = {}
            for root in self.vertices:
                par: dict[str, tuple[str, str]] = {}
                seen = {root}
                queue = deque([root])
                while queue:
                    x = queue.popleft()
                    for y, eid in adj[x]:
                        if y not in seen:
                            seen.add(y)
                            par[y] = (x, eid)
                            queue.append(y)
                cached[root] = par
            object.__setattr__(self, "_par", cached)
        return cached

    @property
    def _vdist(self) -> dict[str, dict[str, Fraction]]:
        cached = self.__dict__.get("_vd")
        if cached is None:
            cached = {}
            for a in self.vertices:
                row = {a: Fraction(0)}
                for b in self.vertices:
                    if b != a:
                        row[b] = sum((self.edge(eid).length for eid in self.vertex_path(a, b)), Fraction(0))
                cached[a] = row
            object.__setattr__(self, "_vd", cached)
        return cached

    def vertex_distance_form(self, a: str, b: str) -> tuple[Fraction, Fraction]:
        """Distance between two vertices as (constant, coefficient of L)."""
        c0, cl = Fraction(0), Fraction(0)
        for eid in self.vertex_path(a, b):
            k0, kl = self.length_form(eid)
            c0 += k0
            cl += kl
        return c0, cl

    def to_spec(self) -> dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"id": e.id, "u": e.u, "v": e.v, "len": format_rational(e.length)} for e in self.edges
            ],
            "variable": {k: format_rational(v) for k, v in self.variable.items()},
        }


def _validate(vertices: Iterable[str], edges: Iterable[Edge]) -> None:
    vertices = list(vertices)
    edges = list(edges)
    if len(set(vertices)) != len(vertices):
        raise GraphError("duplicate vertex ids")
    if len({e.id for e in edges}) != len(edges):
        raise GraphError("duplicate edge ids")
    vset = set(vertices)
    if not vset:
        raise GraphError("graph has no vertices")
    parent = {v: v for v in vertices}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        if e.u not in vset or e.v not in vset:
            raise GraphError(f"edge {e.id!r} has an unknown endpoint")
        if e.length <= 0:
            raise NonPositiveLength(f"edge {e.id!r} has non-positive length")
        if e.u == e.v:
            raise NotATree(f"edge {e.id!r} is a loop; subdivide it first")
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            raise NotATree(f"edge {e.id!r} closes a cycle")
        parent[ru] = rv
    if len({find(v) for v in vertices}) != 1:
        raise NotATree("graph is disconnected")


def build_graph(spec: str | Mapping[str, Any], L: Any | None = None) -> MetricGraph:
    """Build a tree from a JSON string or mapping.

    The optional ``variable`` field maps edge ids to coefficients c, giving the
    edge length c*L. When absent, the edge ``e1`` (or the first edge) is the
    variable edge with coefficient 1 and its listed length fixes L.
    """
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc
    if not isinstance(spec, Mapping):
        raise ParseError("graph spec must be an object")
    try:
        vertices = tuple(str(v) for v in spec["vertices"])
        raw_edges = spec["edges"]
        edges = tuple(
            Edge(str(e["id"]), str(e["u"]), str(e["v"]), parse_rational(e["len"])) for e in raw_edges
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed graph spec: {exc}") from exc
    if not edges:
        raise ParseError("graph spec has no edges")
    if "variable" in spec:
        variable = {str(k): parse_rational(v) for k, v in spec["variable"].items()}
    else:
        ids = [e.id for e in edges]
        variable = {"e1" if "e1" in ids else ids[0]: Fraction(1)}
    if L is None:
        # recover L from the first variable edge's listed length
        eid, coef = next(iter(variable.items()))
        if eid not in {e.id for e in edges}:
            raise GraphError(f"variable edge {eid!r} not in graph")
        L = next(e.length for e in edges if e.id == eid) / coef
    L = parse_rational(L)
    edges = tuple(Edge(e.id, e.u, e.v, variable[e.id] * L) if e.id in variable else e for e in edges)
    return MetricGraph(vertices, edges, variable, L, name="tree")


def segment(length: Any = 1) -> MetricGraph:
    """One edge e1 whose length is the variable L."""
    L = parse_rational(length)
    return MetricGraph(("v0", "v1"), (Edge("e1", "v0", "v1", L),), {"e1": Fraction(1)}, L, name="segment")


def star(k: int, L1: Any = 1) -> MetricGraph:
    """Star with k edges from center c; e1 has length L1, the others length 1."""
    if k < 3:
        raise GraphError("star needs k >= 3")
    L = parse_rational(L1)
    vertices = ("c",) + tuple(f"v{i}" for i in range(1, k + 1))
    edges = tuple(Edge(f"e{i}", "c", f"v{i}", L if i == 1 else Fraction(1)) for i in range(1, k + 1))
    name = "Y" if k == 3 else f"star{k}"
    return MetricGraph(vertices, edges, {"e1": Fraction(1)}, L, name=name)


def generalized_h(m: int, n: int, L1: Any = 1) -> MetricGraph:
    """H graph with m-1 left leaves, n-1 right leaves, and a bridge of length L1.

    The bridge is split at its midpoint into f and f', each of length L1/2. Leaf
    edges are e2..e_m on the left and e_{m+1}..e_{m+n-1} on the right.
    """
    if m < 3 or n < 3:
        raise GraphError("generalized H needs m, n >= 3")
    L = parse_rational(L1)
    half = Fraction(1, 2)
    vertices = ["a", "b", "mid"]
    edges = []
    left = [f"e{i}" for i in range(2, m + 1)]
    right = [f"e{i}" for i in range(m + 1, m + n)]
    for eid in left:
        vertices.append("x" + eid[1:])
        edges.append(Edge(eid, "a", "x" + eid[1:], Fraction(1)))
    for eid in right:
        vertices.append("x" + eid[1:])
        edges.append(Edge(eid, "b", "x" + eid[1:], Fraction(1)))
    edges.append(Edge("f", "a", "mid", L * half))
    edges.append(Edge("f'", "mid", "b", L * half))
    groups = {"left": tuple(left) + ("f",), "right": tuple(right) + ("f'",)}
    return MetricGraph(
        tuple(vertices), tuple(edges), {"f": half, "f'": half}, L, groups, name=f"H{m},{n}"
    )


def point(g: MetricGraph, edge_id: str, t: Any) -> GraphPoint:
    """Canonical point at distance t from the u endpoint of an edge."""
    e = g.edge(edge_id)
    t = Fraction(t)
    if t < 0 or t > e.length:
        raise GraphError(f"t={t} outside edge {edge_id!r}")
    if t == 0:
        return GraphPoint(0, e.u, Fraction(0))
    if t == e.length:
        return GraphPoint(0, e.v, Fraction(0))
    return GraphPoint(1, edge_id, t)


def vertex_point(vid: str) -> GraphPoint:
    return GraphPoint(0, vid, Fraction(0))


def path_distance(g: MetricGraph, p: GraphPoint, q: GraphPoint) -> Fraction:
    """Exact shortest-path distance between two canonical points of a tree."""
    ends_p = _anchors(g, p)
    ends_q = _anchors(g, q)
    if p.kind == 1 and q.kind == 1 and p.name == q.name:
        return abs(p.t - q.t)
    return min(dp + g.vertex_distance(a, b) + dq for a, dp in ends_p for b, dq in ends_q)


def _anchors(g: MetricGraph, p: GraphPoint) -> list[tuple[str, Fraction]]:
    if p.kind == 0:
        if p.name not in g.vertices:
            raise GraphError(f"unknown vertex {p.name!r}")
        return [(p.name, Fraction(0))]
    e = g.edge(p.name) if p.name in g.edge_ids else None
    if e is None or not 0 < p.t < e.length:
        raise GraphError(f"point {p} is not on the graph")
    return [(e.u, p.t), (e.v, e.length - p.t)]


def subdivide_spec(spec: str | Mapping[str, Any]) -> dict[str, Any]:
    """Subdivide loops into thirds and repeated edges into halves.

    Works on the raw spec so that graphs rejected by ``build_graph`` can be
    repaired; the result still has to be a tree to be accepted.
    """
    if isinstance(spec, str):
        try:
            spec = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from exc
    try:
        vertices = [str(v) for v in spec["vertices"]]
        raw = [dict(e) for e in spec["edges"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed graph spec: {exc}") from exc
    taken = set(vertices) | {str(e["id"]) for e in raw}
    seen: set[frozenset] = set()
    out = []
    for e in raw:
        ends = frozenset((str(e["u"]), str(e["v"])))
        if len(ends) == 2 and ends not in seen:
            seen.add(ends)
            out.append(e)
            continue
        parts = 3 if len(ends) == 1 else 2  # a loop needs two new vertices to become simple
        piece = parse_rational(e["len"]) / parts
        chain = [str(e["u"])]
        for k in range(parts - 1):
            mid = f"{e['id']}_m{k + 1}"
            while mid in taken:
                mid += "_"
            taken.add(mid)
            vertices.append(mid)
            chain.append(mid)
        chain.append(str(e["v"]))
        for k, (a, b) in enumerate(zip(chain, chain[1:])):
            out.append({"id": f"{e['id']}.{k + 1}", "u": a, "v": b, "len": format_rational(piece)})
    result = {"vertices": vertices, "edges": out}
    if "variable" in spec:
        result["variable"] = dict(spec["variable"])
    return result
