"""E^1 and E^2 pages of the Mayer-Vietoris spectral sequence for small covers."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import linalg
from .config_complex import ChainComplex, PolyComplex, chain_complex
from .homology import HomologySummary, homology_basis
from .linalg import DEFAULT_PRIME

MAX_PIECES = 4
ROWS = (0, 1)


class NotACover(ValueError):
    pass


class ColumnsOutOfRange(RuntimeError):
    pass


Cells = tuple[frozenset[int], frozenset[int], frozenset[int]]  # vertex, edge, face indices


@dataclass(frozen=True)
class OrderedCover:
    """Subcomplexes of one PolyComplex, indexed in the given order."""

    cx: PolyComplex
    pieces: tuple[Cells, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not 1 <= len(self.pieces) <= MAX_PIECES:
            raise NotACover(f"a cover needs 1 to {MAX_PIECES} pieces")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"U{i}" for i in range(len(self.pieces))))
        cx = self.cx
        for name, (vs, es, fs) in zip(self.names, self.pieces):
            for e in es:
                tail, head = cx.edges[e]
                if cx.vertex_index[tail] not in vs or cx.vertex_index[head] not in vs:
                    raise NotACover(f"{name} is not closed under faces at edge {e}")
            for f in fs:
                if any(i not in es for i, _ in cx.face_boundary[f]):
                    raise NotACover(f"{name} is not closed under faces at face {f}")
        for d, n in enumerate(cx.counts):
            covered = set().union(*(piece[d] for piece in self.pieces))
            if len(covered) != n:
                raise NotACover(f"{n - len(covered)} cells of dimension {d} are not covered")

    def intersection(self, idx: tuple[int, ...]) -> Cells:
        out = self.pieces[idx[0]]
        for i in idx[1:]:
            out = tuple(a & b for a, b in zip(out, self.pieces[i]))
        return out


def cover_by_charts(cx: PolyComplex, groups: list[set], names: list[str] | None = None) -> OrderedCover:
    """Piece k holds every cell arising from a chart in groups[k] (closed under faces)."""
    pieces = []
    for charts in groups:
        pieces.append(tuple(frozenset(i for i, cs in enumerate(cx.cell_charts[d]) if cs & charts)
                            for d in range(3)))
    return OrderedCover(cx, tuple(pieces), tuple(names or ()))


def star_cover(cx: PolyComplex) -> OrderedCover:
    """e1 x e1, e1 x rest, rest x e1, rest x rest."""
    ids = cx.graph.edge_ids
    first = ids[0]
    rest = [e for e in ids if e != first]
    blocks = [([first], [first]), ([first], rest), (rest, [first]), (rest, rest)]
    return cover_by_charts(cx, [{(a, b) for a in xs for b in ys} for xs, ys in blocks],
                           ["U11", "U12", "U21", "U22"])


def h_cover(cx: PolyComplex) -> OrderedCover:
    """left x left, left x right, right x left, right x right, halves split at the bridge midpoint."""
    left, right = cx.graph.groups["left"], cx.graph.groups["right"]
    blocks = [(left, left), (left, right), (right, left), (right, right)]
    return cover_by_charts(cx, [{(a, b) for a in xs for b in ys} for xs, ys in blocks],
                           ["U11", "U12", "U21", "U22"])


def _restrict(c: ChainComplex, cells: Cells) -> tuple[ChainComplex, tuple[list[int], list[int], list[int]]]:
    vs, es, fs = (sorted(x) for x in cells)
    d1 = c.d1[np.ix_(vs, es)] if vs and es else np.zeros((len(vs), len(es)), dtype=np.int64)
    d2 = c.d2[np.ix_(es, fs)] if es and fs else np.zeros((len(es), len(fs)), dtype=np.int64)
    return ChainComplex(d1, d2), (vs, es, fs)


@dataclass
class _Sub:
    chains: ChainComplex
    index: tuple[list[int], list[int], list[int]]
    bases: dict[int, np.ndarray]


def _sub(c: ChainComplex, cells: Cells, p: int) -> _Sub:
    ch, idx = _restrict(c, cells)
    bases = {}
    for q in ROWS:
        n = len(idx[q])
        bases[q] = homology_basis(ch, q, p) if n else np.zeros((0, 0), dtype=np.int64)
    return _Sub(ch, idx, bases)


def _inclusion_map(src: _Sub, dst: _Sub, q: int, p: int) -> np.ndarray:
    """H_q(src) -> H_q(dst) for a subcomplex inclusion, in the cached bases."""
    bs, bt = src.bases[q], dst.bases[q]
    if bs.shape[1] == 0 or bt.shape[1] == 0:
        return np.zeros((bt.shape[1], bs.shape[1]), dtype=np.int64)
    pos = {cell: k for k, cell in enumerate(dst.index[q])}
    pushed = np.zeros((len(dst.index[q]), bs.shape[1]), dtype=np.int64)
    for k, cell in enumerate(src.index[q]):
        pushed[pos[cell]] = bs[k]
    bd = dst.chains.d1 if q == 0 else dst.chains.d2
    system = np.concatenate([bd, bt], axis=1)
    sol = linalg.solve(system, pushed, p)
    return sol[bd.shape[1]:] % p


@dataclass(frozen=True)
class SpectralPage:
    """dims[(p, q)] and, for the E^1 page, d1[(p, q)]: E_{p,q} -> E_{p-1,q}."""

    dims: dict[tuple[int, int], int]
    d1: dict[tuple[int, int], np.ndarray]

    def __getitem__(self, pq: tuple[int, int]) -> int:
        return self.dims.get(pq, 0)

    def rank_d1(self, p: int, q: int, prime: int = DEFAULT_PRIME) -> int:
        m = self.d1.get((p, q))
        return 0 if m is None or m.size == 0 else linalg.rank(m, prime)


def mv_pages(cover: OrderedCover, p: int = DEFAULT_PRIME) -> tuple[SpectralPage, SpectralPage]:
    chains = chain_complex(cover.cx)
    n = len(cover.pieces)
    subs: dict[tuple[int, ...], _Sub] = {}
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            subs[idx] = _sub(chains, cover.intersection(idx), p)
    dims, d1 = {}, {}
    for q in ROWS:
        for col in range(n):
            terms = list(combinations(range(n), col + 1))
            dims[(col, q)] = sum(subs[t].bases[q].shape[1] for t in terms)
        for col in range(1, n):
            src_terms = list(combinations(range(n), col + 1))
            dst_terms = list(combinations(range(n), col))
            rows = [subs[t].bases[q].shape[1] for t in dst_terms]
            cols = [subs[t].bases[q].shape[1] for t in src_terms]
            mat = np.zeros((sum(rows), sum(cols)), dtype=np.int64)
            roff = np.concatenate([[0], np.cumsum(rows)]).astype(int)
            coff = np.concatenate([[0], np.cumsum(cols)]).astype(int)
            for j, s in enumerate(src_terms):
                for k in range(len(s)):
                    face = s[:k] + s[k + 1:]
                    i = dst_terms.index(face)
                    blk = _inclusion_map(subs[s], subs[face], q, p)
                    sign = 1 if k % 2 == 0 else -1
                    mat[roff[i]:roff[i + 1], coff[j]:coff[j + 1]] += sign * blk
            d1[(col, q)] = mat % p
    e1 = SpectralPage(dims, d1)
    e2 = {}
    for (col, q), dim in dims.items():
        out_rank = e1.rank_d1(col, q, p)
        in_rank = e1.rank_d1(col + 1, q, p)
        e2[(col, q)] = dim - out_rank - in_rank
    return e1, SpectralPage(e2, {})


def d1_squares_to_zero(page: SpectralPage, p: int = DEFAULT_PRIME) -> bool:
    for (col, q), m in page.d1.items():
        nxt = page.d1.get((col - 1, q))
        if nxt is not None and m.size and nxt.size and np.any(linalg.matmul(nxt, m, p)):
            return False
    return True


@dataclass(frozen=True)
class ConvergenceReport:
    expected: tuple[int, int]
    from_pages: tuple[int, int]

    @property
    def ok(self) -> bool:
        return self.expected == self.from_pages


def check_convergence(pages: tuple[SpectralPage, SpectralPage], target: HomologySummary) -> ConvergenceReport:
    """b_n = dim E2_{0,n} + dim E2_{1,n-1} for n = 0, 1 on a two-column E^2 page."""
    _, e2 = pages
    high = [pq for pq, d in e2.dims.items() if pq[0] >= 2 and d]
    if high:
        raise ColumnsOutOfRange(f"E^2 has entries in columns >= 2: {sorted(high)}")
    got = (e2[(0, 0)], e2[(0, 1)] + e2[(1, 0)])
    return ConvergenceReport(tuple(target.betti[:2]), got)
