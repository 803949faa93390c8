"""Direct-sum decomposition of chamber-poset modules over F_p.

Pieces are split with random endomorphisms (Fitting splitting along the
irreducible factors of the characteristic polynomial) and certified
indecomposable when their endomorphism algebra is one dimensional.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from sympy import GF
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor
from sympy.polys.matrices import DomainMatrix

from . import linalg
from .persistence_module import PersistenceModule

RETRY_BUDGET = 64

Endomorphism = dict  # chamber id -> square matrix over F_p


class IndecomposabilityUndecided(RuntimeError):
    pass


# ------------------------------------------------------------ linear systems

def _unknown_layout(A: PersistenceModule, B: PersistenceModule) -> tuple[dict[int, int], int]:
    """Offsets of the per-chamber blocks of a natural transformation A -> B."""
    offs, n = {}, 0
    for c in A.chambers:
        offs[c] = n
        n += B.dims[c] * A.dims[c]
    return offs, n


def hom_basis(A: PersistenceModule, B: PersistenceModule) -> list[dict[int, np.ndarray]]:
    """Basis of natural transformations A -> B (per chamber, B.dims x A.dims)."""
    p = A.p
    offs, n = _unknown_layout(A, B)
    rows = []
    for (s, t), ma in A.maps.items():
        mb = B.maps[(s, t)]
        bs, as_, bt, at = B.dims[s], A.dims[s], B.dims[t], A.dims[t]
        if bt == 0 or as_ == 0:
            continue
        # (F_t ma - mb F_s)[i, j] = sum_k F_t[i,k] ma[k,j] - sum_k mb[i,k] F_s[k,j]
        for i in range(bt):
            for j in range(as_):
                row = np.zeros(n, dtype=np.int64)
                for k in range(at):
                    row[offs[t] + i * at + k] += ma[k, j]
                for k in range(bs):
                    row[offs[s] + k * as_ + j] -= mb[i, k]
                if row.any():
                    rows.append(row % p)
    if n == 0:
        return []
    system = np.array(rows, dtype=np.int64).reshape(len(rows), n)
    null = linalg.nullspace(system, p) if rows else np.eye(n, dtype=np.int64)
    out = []
    for k in range(null.shape[1]):
        v = null[:, k]
        out.append({c: v[offs[c]:offs[c] + B.dims[c] * A.dims[c]].reshape(B.dims[c], A.dims[c])
                    for c in A.chambers})
    return out


def endomorphism_basis(M: PersistenceModule) -> list[Endomorphism]:
    return hom_basis(M, M)


def is_natural(M: PersistenceModule, f: Endomorphism) -> bool:
    return all(np.array_equal(linalg.matmul(f[t], m, M.p), linalg.matmul(m, f[s], M.p))
               for (s, t), m in M.maps.items())


# ------------------------------------------------------------- summands

@dataclass
class Summand:
    """A subrepresentation: per-chamber inclusion matrices into the ambient fiber."""

    inclusions: dict[int, np.ndarray]
    module: PersistenceModule
    kind: str = "unclassified"  # "interval" or "non-interval"
    support: frozenset[int] = frozenset()
    witness: dict[int, int] | None = None  # scalars identifying an interval summand with the interval module
    end_dim: int | None = None

    @property
    def dims(self) -> dict[int, int]:
        return dict(self.module.dims)

    @property
    def is_interval(self) -> bool:
        return self.kind == "interval"

    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.module.dims[c] for c in self.module.chambers)


def submodule(M: PersistenceModule, basis: dict[int, np.ndarray]) -> PersistenceModule:
    """Module structure on a family of subspaces that is closed under the maps."""
    dims = {c: basis[c].shape[1] for c in M.chambers}
    maps = {}
    for (s, t), m in M.maps.items():
        if dims[s] == 0 or dims[t] == 0:
            maps[(s, t)] = np.zeros((dims[t], dims[s]), dtype=np.int64)
            continue
        img = linalg.matmul(m, basis[s], M.p)
        maps[(s, t)] = linalg.solve(basis[t], img, M.p)
    return PersistenceModule(M.poset, dims, maps, M.p, M.degree, M.chambers)


def _poly_at(coeffs: list[int], a: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros_like(a)
    eye = np.eye(a.shape[0], dtype=np.int64)
    for c in coeffs:
        out = (linalg.matmul(out, a, p) + int(c) * eye) % p
    return out


def _charpoly(a: np.ndarray, p: int) -> list[int]:
    n = a.shape[0]
    if n == 0:
        return [1]
    K = GF(p)
    dm = DomainMatrix([[K(int(x)) for x in row] for row in a.tolist()], (n, n), K)
    return [int(c) % p for c in dm.charpoly()]


def _matpow(a: np.ndarray, e: int, p: int) -> np.ndarray:
    out = np.eye(a.shape[0], dtype=np.int64)
    while e:
        if e & 1:
            out = linalg.matmul(out, a, p)
        a = linalg.matmul(a, a, p)
        e >>= 1
    return out


def _kernel_of(a: np.ndarray, p: int) -> np.ndarray:
    if a.shape[0] == 0:
        return np.zeros((0, 0), dtype=np.int64)
    return linalg.nullspace(a, p)


def _image_of(a: np.ndarray, p: int) -> np.ndarray:
    if a.size == 0:
        return np.zeros((a.shape[0], 0), dtype=np.int64)
    _, piv = linalg.rref(a, p)
    return a[:, piv] % p


def fitting_split(M: PersistenceModule, f: Endomorphism) -> tuple[dict[int, np.ndarray], dict[int, np.ndarray]]:
    """(ker f^n, im f^n) with n the total dimension, as per-chamber bases."""
    n = max(M.total_dim, 1)
    ker, im = {}, {}
    for c in M.chambers:
        fn = _matpow(f[c] % M.p, n, M.p)
        ker[c] = _kernel_of(fn, M.p)
        im[c] = _image_of(fn, M.p)
    return ker, im


def factor_split(M: PersistenceModule, f: Endomorphism) -> list[dict[int, np.ndarray]]:
    """Generalized eigenspaces of f for each irreducible factor of its characteristic polynomial."""
    p = M.p
    total = [1]
    for c in M.chambers:
        total = _polymul(total, _charpoly(f[c], p), p)
    _, factors = gf_factor([ZZ(x) for x in total], p, ZZ)
    factors = sorted(([int(x) for x in g] for g, _ in factors))
    if len(factors) < 2:
        return [{c: np.eye(M.dims[c], dtype=np.int64) for c in M.chambers}]
    pieces = []
    for g in factors:
        basis = {}
        for c in M.chambers:
            d = M.dims[c]
            if d == 0:
                basis[c] = np.zeros((0, 0), dtype=np.int64)
                continue
            basis[c] = _kernel_of(_matpow(_poly_at(g, f[c] % p, p), d, p), p)
        pieces.append(basis)
    return pieces


def _polymul(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def _random_combo(basis: list[Endomorphism], rng: np.random.Generator, p: int) -> Endomorphism:
    coeffs = rng.integers(0, p, size=len(basis))
    out = {c: np.zeros_like(m) for c, m in basis[0].items()}
    for a, f in zip(coeffs, basis):
        for c in out:
            out[c] = (out[c] + int(a) * f[c]) % p
    return out


def _compose_inclusions(outer: dict[int, np.ndarray], inner: dict[int, np.ndarray], M: PersistenceModule,
                        p: int) -> dict[int, np.ndarray]:
    return {c: (linalg.matmul(outer[c], inner[c], p) if inner[c].shape[1] else
                np.zeros((outer[c].shape[0], 0), dtype=np.int64)) for c in M.chambers}


def _is_zero(M: PersistenceModule) -> bool:
    return M.total_dim == 0


def decompose(M: PersistenceModule, seed: int = 0, budget: int = RETRY_BUDGET) -> list[Summand]:
    """Complete decomposition into summands certified by dim End = 1."""
    p = M.p
    out: list[Summand] = []
    ident = {c: np.eye(M.dims[c], dtype=np.int64) for c in M.chambers}
    stack = [((), ident, M)]
    while stack:
        path, incl, piece = stack.pop()
        if _is_zero(piece):
            continue
        basis = endomorphism_basis(piece)
        if len(basis) == 1:
            out.append(Summand(incl, piece, end_dim=1))
            continue
        rng = np.random.default_rng([seed, *path])
        for _ in range(budget):
            parts = factor_split(piece, _random_combo(basis, rng, p))
            if len(parts) > 1:
                break
        else:
            raise IndecomposabilityUndecided(
                f"no splitting endomorphism found in {budget} tries (dim End = {len(basis)})")
        children = []
        for k, part in enumerate(parts):
            sub = submodule(piece, part)
            children.append((path + (k,), _compose_inclusions(incl, part, piece, p), sub))
        stack.extend(reversed(children))
    for s in out:
        classify_summand(s)
    out.sort(key=_summand_key)
    return out


def _summand_key(s: Summand):
    return (s.kind != "non-interval", sorted(s.support), s.dim_vector())


# ----------------------------------------------------------- classification

def _closure(M: PersistenceModule) -> set[tuple[int, int]]:
    return M.poset.leq()


def is_convex(support: Iterable[int], leq: set[tuple[int, int]]) -> bool:
    sup = set(support)
    nodes = {a for a, _ in leq}
    for a in sup:
        for b in sup:
            if (a, b) in leq:
                for u in nodes:
                    if (a, u) in leq and (u, b) in leq and u not in sup:
                        return False
    return True


def is_connected(support: Iterable[int], leq: set[tuple[int, int]]) -> bool:
    """Zigzag connectivity through comparabilities inside the support."""
    sup = sorted(set(support))
    if not sup:
        return False
    seen = {sup[0]}
    todo = [sup[0]]
    while todo:
        a = todo.pop()
        for b in sup:
            if b not in seen and ((a, b) in leq or (b, a) in leq):
                seen.add(b)
                todo.append(b)
    return len(seen) == len(sup)


def interval_witness(S: PersistenceModule) -> dict[int, int] | None:
    """Scalars lam with lam_t * m_e / lam_s = 1 on every edge inside the support, if any exist."""
    p = S.p
    sup = [c for c in S.chambers if S.dims[c] == 1]
    edges = [(s, t) for (s, t) in S.maps if s in sup and t in sup]
    lam: dict[int, int] = {}
    for root in sup:
        if root in lam:
            continue
        lam[root] = 1
        todo = [root]
        while todo:
            a = todo.pop()
            for s, t in edges:
                v = int(S.maps[(s, t)][0, 0]) % p
                if v == 0:
                    return None
                if s == a and t not in lam:
                    lam[t] = lam[s] * pow(v, p - 2, p) % p
                    todo.append(t)
                elif t == a and s not in lam:
                    lam[s] = lam[t] * v % p
                    todo.append(s)
    for s, t in edges:
        if lam[t] * int(S.maps[(s, t)][0, 0]) * pow(lam[s], p - 2, p) % p != 1:
            return None
    return lam


def classify_summand(s: Summand) -> str:
    S = s.module
    if S.total_dim == 0:
        raise ValueError("the zero module is not a summand")
    support = frozenset(c for c in S.chambers if S.dims[c] > 0)
    s.support = support
    leq = _closure(S)
    thin = all(S.dims[c] <= 1 for c in S.chambers)
    if thin and is_convex(support, leq) and is_connected(support, leq):
        w = interval_witness(S)
        if w is not None:
            s.kind, s.witness = "interval", w
            return s.kind
    s.kind = "non-interval"
    return s.kind


# -------------------------------------------------------------- grouping

def is_isomorphic(A: PersistenceModule, B: PersistenceModule, seed: int = 0, tries: int = 8) -> bool:
    if A.dims != B.dims:
        return False
    basis = hom_basis(A, B)
    if not basis:
        return False
    rng = np.random.default_rng([seed, 7])
    for _ in range(tries):
        f = _random_combo(basis, rng, A.p)
        if all(A.dims[c] == 0 or linalg.rank(f[c], A.p) == A.dims[c] for c in A.chambers):
            return True
    return False


@dataclass
class SummandClass:
    kind: str
    support: frozenset[int]
    dims: dict[int, int]
    multiplicity: int
    representative: Summand = field(repr=False)

    def descriptor(self) -> str:
        if self.kind == "interval":
            return "interval{" + ",".join(str(c) for c in sorted(self.support)) + "}"
        return "non-interval{" + ",".join(f"{c}:{d}" for c, d in sorted(self.dims.items()) if d) + "}"


def multiplicity_table(summands: list[Summand]) -> list[SummandClass]:
    classes: list[SummandClass] = []
    for s in summands:
        for cl in classes:
            if cl.kind != s.kind or cl.support != s.support:
                continue
            if s.kind == "interval" or is_isomorphic(cl.representative.module, s.module):
                cl.multiplicity += 1
                break
        else:
            classes.append(SummandClass(s.kind, s.support, {c: d for c, d in s.module.dims.items()}, 1, s))
    classes.sort(key=lambda cl: (cl.kind != "non-interval", -len(cl.support), sorted(cl.support)))
    return classes


# -------------------------------------------------------------- checks

def reconstructs(M: PersistenceModule, summands: list[Summand]) -> bool:
    """Concatenated inclusions are invertible at every chamber."""
    for c in M.chambers:
        d = M.dims[c]
        cols = [s.inclusions[c] for s in summands if s.inclusions[c].shape[1]]
        if d == 0:
            continue
        mat = np.concatenate(cols, axis=1) if cols else np.zeros((d, 0), dtype=np.int64)
        if mat.shape != (d, d) or linalg.rank(mat, M.p) != d:
            return False
    return True


def inclusion_is_natural(M: PersistenceModule, s: Summand) -> bool:
    p = M.p
    for (a, b), m in M.maps.items():
        lhs = linalg.matmul(m, s.inclusions[a], p) if s.inclusions[a].shape[1] else np.zeros((M.dims[b], 0), dtype=np.int64)
        sm = s.module.maps[(a, b)]
        rhs = linalg.matmul(s.inclusions[b], sm, p) if s.inclusions[b].shape[1] else np.zeros((M.dims[b], sm.shape[1]), dtype=np.int64)
        if not np.array_equal(lhs % p, rhs % p):
            return False
    return True


def catalog_match(classes: list[SummandClass], catalog, arr) -> list[str]:
    """Differences between computed classes and a catalog (region names from chamber samples).

    Returns an empty list when they agree.
    """
    region_of = {c.id: catalog.region(c.sample.r, c.sample.L) for c in arr.chambers}
    problems = []
    used = set()
    for ref in catalog.classes:
        if ref.multiplicity == 0:
            continue
        want = frozenset(c for c, reg in region_of.items() if ref.dim_at(reg) > 0)
        hits = [i for i, cl in enumerate(classes)
                if i not in used and cl.support == want and (cl.kind == "interval") == ref.interval
                and all(cl.dims.get(c, 0) == ref.dim_at(region_of[c]) for c in region_of)]
        if not hits:
            problems.append(f"class {ref.name}: no computed class with this support")
            continue
        i = hits[0]
        used.add(i)
        if ref.multiplicity is not None and classes[i].multiplicity != ref.multiplicity:
            problems.append(f"class {ref.name}: multiplicity {classes[i].multiplicity}, expected {ref.multiplicity}")
    if catalog.complete and len(used) != len(classes):
        problems.append(f"{len(classes) - len(used)} computed classes missing from the catalog")
    return problems
