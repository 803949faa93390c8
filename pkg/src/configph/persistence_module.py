"""Homology of the configuration space as a representation of the chamber poset."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .homology import HomologyData, betti, induced_map_data
from .linalg import DEFAULT_PRIME
from .metric_graph import MetricGraph
from .param_chambers import ChamberArrangement, arrangement, critical_lines, straddle


class CommutativityViolation(RuntimeError):
    pass


class TorsionDetected(RuntimeError):
    pass


class NonCanonicalBasis(RuntimeError):
    """A point of a chamber produced a complex with a different cell labelling."""


@dataclass(frozen=True)
class PersistenceModule:
    """Vector spaces on chambers and matrices on covering relations (target x source)."""

    poset: ChamberArrangement
    dims: dict[int, int]
    maps: dict[tuple[int, int], np.ndarray]
    p: int = DEFAULT_PRIME
    degree: int = 0
    chambers: tuple[int, ...] = field(default=())  # subset of poset chambers in use

    def __post_init__(self) -> None:
        if not self.chambers:
            object.__setattr__(self, "chambers", tuple(sorted(self.dims)))
        for (s, t), m in self.maps.items():
            if m.shape != (self.dims[t], self.dims[s]):
                raise ValueError(f"map {s}->{t} has shape {m.shape}, expected {(self.dims[t], self.dims[s])}")

    @property
    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.maps)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def successors(self, c: int) -> list[int]:
        return [t for (s, t) in self.edges if s == c]

    def chain(self, a: int, b: int) -> list[int] | None:
        """Lexicographically least chain of covering relations from a up to b."""
        if a == b:
            return [a]
        best = None
        for t in self.successors(a):
            rest = self.chain(t, b)
            if rest is not None and (best is None or [a] + rest < best):
                best = [a] + rest
        return best

    def map_between(self, a: int, b: int) -> np.ndarray:
        """M(a <= b), composed along the canonical chain."""
        path = self.chain(a, b)
        if path is None:
            raise ValueError(f"chamber {a} is not below chamber {b}")
        out = np.eye(self.dims[a], dtype=np.int64)
        for s, t in zip(path, path[1:]):
            out = linalg.matmul(self.maps[(s, t)], out, self.p)
        return out

    def direct_sum(self, other: "PersistenceModule") -> "PersistenceModule":
        dims = {c: self.dims[c] + other.dims[c] for c in self.dims}
        maps = {}
        for e, m in self.maps.items():
            n = other.maps[e]
            blk = np.zeros((m.shape[0] + n.shape[0], m.shape[1] + n.shape[1]), dtype=np.int64)
            blk[:m.shape[0], :m.shape[1]] = m
            blk[m.shape[0]:, m.shape[1]:] = n
            maps[e] = blk
        return PersistenceModule(self.poset, dims, maps, self.p, self.degree, self.chambers)


def _check_labels(data: HomologyData, ref: HomologyData, where: str) -> None:
    if ref.cx.labels is None or data.cx.labels != ref.cx.labels:
        raise NonCanonicalBasis(f"cell labels at {where} differ from the chamber sample")


def build_module(g: MetricGraph, degree: int, p: int = DEFAULT_PRIME,
                 arr: ChamberArrangement | None = None, check_torsion: bool = True) -> PersistenceModule:
    """H_degree over F_p on every chamber, with maps across every wall."""
    if degree not in (0, 1, 2):
        raise ValueError("degree must be 0, 1 or 2")
    arr = arr or arrangement(critical_lines(g))
    samples = {c.id: HomologyData.build(g, c.sample, p) for c in arr.chambers}
    if check_torsion:
        for cid, data in samples.items():
            summ = betti(data.chains)
            if not summ.torsion_free:
                raise TorsionDetected(f"chamber {cid} has torsion {summ.torsion}")
    dims = {cid: data.dim(degree) for cid, data in samples.items()}
    maps = {}
    for w in arr.walls:
        ds, dt = dims[w.source], dims[w.target]
        if degree == 2 or ds == 0 or dt == 0:
            maps[(w.source, w.target)] = np.zeros((dt, ds), dtype=np.int64)
            continue
        pi, pj = straddle(arr, w)
        a = HomologyData.build(g, pi, p)
        b = HomologyData.build(g, pj, p)
        _check_labels(a, samples[w.source], f"{pi}")
        _check_labels(b, samples[w.target], f"{pj}")
        maps[(w.source, w.target)] = induced_map_data(a, b, degree)
    module = PersistenceModule(arr, dims, maps, p, degree)
    report = check_functoriality(module)
    if report.violations:
        raise CommutativityViolation(f"{len(report.violations)} non-commuting path pairs, first {report.violations[0]}")
    return module


def restrict_support(M: PersistenceModule) -> PersistenceModule:
    keep = tuple(c for c in M.chambers if M.dims[c] > 0)
    dims = {c: M.dims[c] for c in keep}
    maps = {e: m for e, m in M.maps.items() if e[0] in dims and e[1] in dims}
    return PersistenceModule(M.poset, dims, maps, M.p, M.degree, keep)


@dataclass(frozen=True)
class FunctorialityReport:
    checked: int
    violations: list[tuple[tuple[int, ...], tuple[int, ...]]]

    @property
    def ok(self) -> bool:
        return not self.violations


def _paths(M: PersistenceModule, max_len: int) -> dict[tuple[int, int], list[tuple[int, ...]]]:
    out: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    frontier = [(c,) for c in M.chambers]
    for _ in range(max_len):
        nxt = []
        for path in frontier:
            for t in M.successors(path[-1]):
                q = path + (t,)
                out.setdefault((q[0], t), []).append(q)
                nxt.append(q)
        frontier = nxt
    return out


def _compose(M: PersistenceModule, path: tuple[int, ...]) -> np.ndarray:
    out = np.eye(M.dims[path[0]], dtype=np.int64)
    for s, t in zip(path, path[1:]):
        out = linalg.matmul(M.maps[(s, t)], out, M.p)
    return out


def check_functoriality(M: PersistenceModule, max_len: int = 3) -> FunctorialityReport:
    """Compare composites along all pairs of covering paths with equal endpoints.

    Paths up to length max_len are enumerated; this includes every commuting square.
    """
    checked = 0
    violations = []
    for (a, b), paths in sorted(_paths(M, max_len).items()):
        if len(paths) < 2:
            continue
        ref = _compose(M, paths[0])
        for other in paths[1:]:
            checked += 1
            if not np.array_equal(ref, _compose(M, other)):
                violations.append((paths[0], other))
    return FunctorialityReport(checked, violations)


def identity_module(arr: ChamberArrangement, dims: dict[int, int], p: int = DEFAULT_PRIME) -> PersistenceModule:
    """Module with the given constant dimension and identity maps where dims agree.

    Used for fixtures; maps between chambers of different dimension are zero.
    """
    maps = {}
    for w in arr.walls:
        ds, dt = dims[w.source], dims[w.target]
        maps[(w.source, w.target)] = np.eye(dt, ds, dtype=np.int64) if ds == dt else np.zeros((dt, ds), dtype=np.int64)
    return PersistenceModule(arr, dict(dims), maps, p)


def interval_module(arr: ChamberArrangement, support, p: int = DEFAULT_PRIME) -> PersistenceModule:
    """The interval module on a set of chambers (identity inside, zero elsewhere)."""
    support = set(support)
    dims = {c.id: int(c.id in support) for c in arr.chambers}
    maps = {}
    for w in arr.walls:
        v = int(w.source in support and w.target in support)
        maps[(w.source, w.target)] = np.full((dims[w.target], dims[w.source]), v, dtype=np.int64)
    return PersistenceModule(arr, dims, maps, p)


__all__ = [
    "CommutativityViolation", "TorsionDetected", "NonCanonicalBasis", "PersistenceModule",
    "FunctorialityReport", "build_module", "restrict_support", "check_functoriality",
    "identity_module", "interval_module",
]
