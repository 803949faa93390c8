"""Oracle-versus-pipeline sweeps shared by the command line and the test suite."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import closed_form_oracle as oracle
from . import linalg
from .config_complex import build_complex, chain_complex
from .decomposer import (decompose, endomorphism_basis, catalog_match, inclusion_is_natural,
                         multiplicity_table, reconstructs)
from .homology import betti
from .mayer_vietoris import check_convergence, d1_squares_to_zero, h_cover, mv_pages, star_cover
from .metric_graph import MetricGraph, ParamPoint, generalized_h, star
from .param_chambers import ChamberArrangement, arrangement, critical_lines
from .persistence_module import build_module


@dataclass(frozen=True)
class Family:
    kind: str  # "star", "h" or "tree"
    params: tuple[int, ...] = ()

    def graph(self) -> MetricGraph:
        if self.kind == "star":
            return star(self.params[0], 1)
        if self.kind == "h":
            return generalized_h(self.params[0], self.params[1], 1)
        raise ValueError("a tree family carries its own graph")

    def oracle(self) -> Callable[[Fraction, Fraction], tuple[int, int]] | None:
        if self.kind == "star":
            k = self.params[0]
            return lambda r, L: oracle.rank_star(k, r, L)
        if self.kind == "h":
            m, n = self.params
            if (m, n) == (3, 3):
                return lambda r, L: oracle.rank_h33(r, L)
            return lambda r, L: oracle.rank_h(m, n, r, L)
        return None


@dataclass(frozen=True)
class ChamberRow:
    chamber_id: int
    sample_r: Fraction
    sample_L: Fraction
    betti: tuple[int, int, int]
    torsion_free: bool
    oracle: tuple[int, int] | None

    @property
    def match(self) -> bool:
        ok = self.torsion_free
        if self.oracle is not None:
            ok = ok and self.betti[:2] == self.oracle and self.betti[2] == 0
        return ok


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


def rank_sweep(g: MetricGraph, family: Family, arr: ChamberArrangement | None = None) -> list[ChamberRow]:
    arr = arr or arrangement(critical_lines(g))
    fn = family.oracle()
    rows = []
    for c in arr.chambers:
        summ = betti(chain_complex(build_complex(g, c.sample)))
        rows.append(ChamberRow(c.id, c.sample.r, c.sample.L, summ.betti, summ.torsion_free,
                               fn(c.sample.r, c.sample.L) if fn else None))
    return rows


def _region_chamber(arr: ChamberArrangement, region: Callable, name: str) -> list[int]:
    return [c.id for c in arr.chambers if region(c.sample.r, c.sample.L) == name]


def decomposition_checks(g: MetricGraph, family: Family, seed: int,
                         arr: ChamberArrangement | None = None) -> list[Check]:
    arr = arr or arrangement(critical_lines(g))
    checks = []
    for degree in (0, 1):
        tag = f"PH{degree}"
        M = build_module(g, degree, arr=arr)
        parts = decompose(M, seed)
        table = multiplicity_table(parts)
        checks.append(Check(f"{tag} direct sum reconstructs module", reconstructs(M, parts)))
        checks.append(Check(f"{tag} inclusions are natural", all(inclusion_is_natural(M, s) for s in parts)))
        checks.append(Check(f"{tag} summands have dim End = 1",
                            all(len(endomorphism_basis(s.module)) == 1 for s in parts)))
        n_non = sum(1 for cl in table if cl.kind == "non-interval")
        desc = "; ".join(f"{cl.descriptor()} x{cl.multiplicity}" for cl in table)
        checks.append(Check(f"{tag} classes", True, desc))
        catalog = _catalog(family, degree, M, arr)
        if catalog is not None:
            problems = catalog_match(table, catalog, arr)
            checks.append(Check(f"{tag} matches catalog {catalog.kind}", not problems, "; ".join(problems)))
        if family.kind == "star" and degree == 0:
            checks.append(Check(f"{tag} has exactly one non-interval class", n_non == 1, f"found {n_non}"))
        if family.kind == "star" and family.params[0] == 3 and degree == 1:
            single = len(parts) == 1 and parts[0].is_interval
            checks.append(Check(f"{tag} is a single interval module", single, f"{len(parts)} summands"))
        if family.kind == "h":
            checks.append(Check(f"{tag} is interval decomposable", n_non == 0, f"{n_non} non-interval classes"))
    return checks


def _catalog(family: Family, degree: int, M, arr: ChamberArrangement):
    if family.kind == "star":
        k = family.params[0]
        if k == 3:
            return oracle.expected_summands("Y PH0" if degree == 0 else "Y PH1")
        if degree == 0:
            return oracle.expected_summands("Star PH0", k=k)
        a2 = _region_chamber(arr, oracle.star_region, "A2")
        a1 = _region_chamber(arr, oracle.star_region, "A1")
        rho = linalg.rank(M.map_between(a2[0], a1[0]), M.p) if M.dims[a2[0]] and M.dims[a1[0]] else 0
        return oracle.expected_summands("Star PH1", k=k, rho=rho)
    if family.kind == "h":
        m, n = family.params
        return oracle.expected_summands("H PH0" if degree == 0 else "H PH1", m=m, n=n)
    return None


def mv_checks(g: MetricGraph, family: Family) -> list[Check]:
    checks = []
    if family.kind == "star" and family.params[0] >= 4:
        k = family.params[0]
        samples = [(r, L, oracle.mv_star(k, r, L)) for r, L in oracle.MV_STAR_SAMPLES]
        cover = star_cover
    elif family.kind == "h":
        tab = family.params == (3, 3)
        samples = [(r, L, oracle.mv_h33(r, L) if tab else None) for r, L in oracle.MV_H33_SAMPLES]
        cover = h_cover
    else:
        return [Check("MV", True, "no built-in cover for this graph")]
    for r, L, want in samples:
        pt = ParamPoint(r, L)
        cx = build_complex(g, pt)
        e1, e2 = mv_pages(cover(cx))
        got = MVPagesView(e1, e2)
        conv = check_convergence((e1, e2), betti(chain_complex(cx)))
        ok = conv.ok and d1_squares_to_zero(e1)
        detail = f"E1={got.e1} rank d1={got.rank_d1} E2={got.e2}"
        if want is not None:
            ok = ok and (got.e1, got.rank_d1, got.e2) == (want.e1, want.rank_d1, want.e2)
            detail += f" expected E1={want.e1} rank d1={want.rank_d1} E2={want.e2}"
        checks.append(Check(f"MV r={r} L={L}", ok, detail))
    return checks


class MVPagesView:
    def __init__(self, e1, e2) -> None:
        self.e1 = (e1[(0, 0)], e1[(1, 0)], e1[(0, 1)])
        self.rank_d1 = e1.rank_d1(1, 0)
        self.e2 = (e2[(0, 0)], e2[(1, 0)], e2[(0, 1)])
