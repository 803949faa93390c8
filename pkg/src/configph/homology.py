"""Integral Betti numbers and torsion, F_p homology bases, and induced maps."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import linalg
from .config_complex import (ChainComplex, PolyComplex, build_complex, cell_systems,
                             chain_complex)
from .geometry import on_segment
from .linalg import DEFAULT_PRIME, Echelon, smith_normal_form  # noqa: F401  (re-export)
from .metric_graph import GraphPoint, MetricGraph, ParamPoint


class NotComparable(ValueError):
    pass


class HomologySummary(NamedTuple):
    betti: tuple[int, int, int]
    torsion: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    @property
    def torsion_free(self) -> bool:
        return not any(self.torsion)


def betti(c: ChainComplex) -> HomologySummary:
    """Betti numbers and torsion from the invariant factors of d1 and d2."""
    nv, ne, nf = c.sizes
    f1 = linalg.invariant_factors(c.d1) if nv and ne else []
    f2 = linalg.invariant_factors(c.d2) if ne and nf else []
    r1, r2 = len(f1), len(f2)
    return HomologySummary(
        (nv - r1, ne - r1 - r2, nf - r2),
        (tuple(d for d in f1 if d > 1), tuple(d for d in f2 if d > 1), ()),
    )


def betti_fp(c: ChainComplex, p: int = DEFAULT_PRIME) -> tuple[int, int, int]:
    nv, ne, nf = c.sizes
    r1 = linalg.rank(c.d1, p) if nv and ne else 0
    r2 = linalg.rank(c.d2, p) if ne and nf else 0
    return nv - r1, ne - r1 - r2, nf - r2


def homology_basis(c: ChainComplex, degree: int, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Cycle representatives (as columns) of a basis of H_degree over F_p.

    Degree 0 takes the first vertex of every component. Degree 1 walks the
    reduced kernel basis of d1 in column order and keeps the vectors that are
    independent modulo the boundaries. The result depends only on the matrices.
    """
    nv, ne, nf = c.sizes
    if degree == 0:
        parent = list(range(nv))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for j in range(ne):
            ends = np.nonzero(c.d1[:, j])[0]
            a, b = find(int(ends[0])), find(int(ends[1]))
            if a != b:
                parent[max(a, b)] = min(a, b)
        reps = sorted({find(v) for v in range(nv)})
        out = np.zeros((nv, len(reps)), dtype=np.int64)
        for k, v in enumerate(reps):
            out[v, k] = 1
        return out
    if degree == 1:
        kernel = linalg.nullspace(c.d1, p) if nv else np.eye(ne, dtype=np.int64)
        ech = Echelon(ne, p)
        for j in range(nf):
            ech.add(c.d2[:, j])
        chosen = [kernel[:, k] for k in range(kernel.shape[1]) if ech.add(kernel[:, k])]
        return np.array(chosen, dtype=np.int64).T.reshape(ne, len(chosen))
    if degree == 2:
        return linalg.nullspace(c.d2, p) if ne else np.eye(nf, dtype=np.int64)
    raise ValueError("degree must be 0, 1 or 2")


@dataclass
class HomologyData:
    """A complex together with its chain complex and cached F_p bases."""

    cx: PolyComplex
    chains: ChainComplex
    p: int = DEFAULT_PRIME
    _bases: dict[int, np.ndarray] = field(default_factory=dict)

    @classmethod
    def build(cls, g: MetricGraph, pt: ParamPoint, p: int = DEFAULT_PRIME, extra_cuts=None) -> "HomologyData":
        cx = build_complex(g, pt, extra_cuts)
        return cls(cx, chain_complex(cx), p)

    def basis(self, degree: int) -> np.ndarray:
        if degree not in self._bases:
            self._bases[degree] = homology_basis(self.chains, degree, self.p)
        return self._bases[degree]

    def dim(self, degree: int) -> int:
        return self.basis(degree).shape[1]

    def boundary(self, degree: int) -> np.ndarray:
        """Matrix of d_{degree+1}, whose image is the boundaries in degree."""
        return self.chains.d1 if degree == 0 else self.chains.d2


def check_comparable(src: ParamPoint, dst: ParamPoint) -> None:
    if not (dst.r <= src.r and dst.L >= src.L):
        raise NotComparable(f"{src} is not below {dst}: need r' <= r and L' >= L")


def _scale(g: MetricGraph, src: ParamPoint, dst: ParamPoint) -> dict[str, Fraction]:
    s = Fraction(dst.L) / Fraction(src.L)
    return {eid: (s if eid in g.variable else Fraction(1)) for eid in g.edge_ids}


def stretch_cuts(g: MetricGraph, src: ParamPoint, dst: ParamPoint) -> dict:
    """Images of the source proximity lines under the stretch map, per chart."""
    scale = _scale(g, src, dst)
    cuts: dict[tuple[str, str], list] = {}
    for s in cell_systems(g, src):
        sx, sy = scale[s.ei], scale[s.ej]
        h = s.constraints[4]
        line = (h.a / sx, h.b / sy, h.c)
        lines = cuts.setdefault(s.chart, [])
        if line not in lines:
            lines.append(line)
    return cuts


def _map_point(gp: GraphPoint, scale: dict[str, Fraction]) -> GraphPoint:
    if gp.kind == 0:
        return gp
    return GraphPoint(1, gp.name, gp.t * scale[gp.name])


def _segment_chain(target: PolyComplex, chart, a, b) -> list[tuple[int, int]]:
    """Signed target edges covering the straight segment a -> b of one chart."""
    pts = target.chart_points[chart]
    dx, dy = b[0] - a[0], b[1] - a[1]
    on = sorted(((pt[0] - a[0]) * dx + (pt[1] - a[1]) * dy, key)
                for pt, key in pts.items() if on_segment(pt, a, b))
    out = []
    for (_, k0), (_, k1) in zip(on, on[1:]):
        idx = target.edge_index[frozenset((k0, k1))]
        out.append((idx, 1 if target.edges[idx][0] == k0 else -1))
    return out


def _push_chains(source: PolyComplex, target: PolyComplex, scale, degree: int,
                 vectors: np.ndarray, p: int) -> np.ndarray:
    """Apply the cellular chain map induced by stretching to columns of vectors."""
    if degree == 0:
        mat = np.zeros((len(target.vertices), len(source.vertices)), dtype=np.int64)
        for i, (x, y) in enumerate(source.vertices):
            mat[target.vertex_index[(_map_point(x, scale), _map_point(y, scale))], i] = 1
    elif degree == 1:
        mat = np.zeros((len(target.edges), len(source.edges)), dtype=np.int64)
        for i, (chart, c0, c1) in enumerate(source.edge_coords):
            sx, sy = scale[chart[0]], scale[chart[1]]
            a = (c0[0] * sx, c0[1] * sy)
            b = (c1[0] * sx, c1[1] * sy)
            for idx, sgn in _segment_chain(target, chart, a, b):
                mat[idx, i] += sgn
    else:
        raise ValueError("chain maps are implemented in degrees 0 and 1")
    return linalg.matmul(mat, vectors, p)


def induced_map_data(src: HomologyData, dst: HomologyData, degree: int,
                     refined: HomologyData | None = None) -> np.ndarray:
    """Matrix of H_degree(src) -> H_degree(dst) in the cached bases."""
    p = dst.p
    g = dst.cx.graph
    check_comparable(src.cx.param, dst.cx.param)
    ds, dt = src.dim(degree), dst.dim(degree)
    if ds == 0 or dt == 0:
        return np.zeros((dt, ds), dtype=np.int64)
    if refined is None:
        refined = HomologyData.build(g, dst.cx.param, p, stretch_cuts(g, src.cx.param, dst.cx.param))
    scale = _scale(g, src.cx.param, dst.cx.param)
    unit = {eid: Fraction(1) for eid in g.edge_ids}
    image = _push_chains(src.cx, refined.cx, scale, degree, src.basis(degree), p)
    subdiv = _push_chains(dst.cx, refined.cx, unit, degree, dst.basis(degree), p)
    bd = refined.boundary(degree)
    system = np.concatenate([bd, subdiv], axis=1)
    sol = linalg.solve(system, image, p)
    return sol[bd.shape[1]:] % p


def induced_map(g: MetricGraph, src: ParamPoint, dst: ParamPoint, degree: int,
                p: int = DEFAULT_PRIME) -> np.ndarray:
    """Map on H_degree induced by X^2 at src including into X^2 at dst.

    The inclusion direction requires dst.r <= src.r and dst.L >= src.L. When L
    grows the variable edges are stretched uniformly, which is homotopic to the
    inclusion for a leaf edge and never decreases distances.
    """
    check_comparable(src, dst)
    a = HomologyData.build(g, src, p)
    if src == dst:
        return np.eye(a.dim(degree), dtype=np.int64)
    b = HomologyData.build(g, dst, p)
    return induced_map_data(a, b, degree)


def summary(g: MetricGraph, pt: ParamPoint) -> HomologySummary:
    return betti(chain_complex(build_complex(g, pt)))
