"""Closed-form rank tables and summand catalogs for star and H graphs.

These are independent of the geometric pipeline and serve as its oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .param_chambers import OnWall


def _check(strict: bool, r: Fraction, L: Fraction, walls: list[Fraction]) -> None:
    if r <= 0 or L <= 0:
        raise ValueError("r and L must be positive")
    if strict and any(r == w for w in walls):
        raise OnWall(f"(r, L) = ({r}, {L}) lies on a wall of the table")


def rank_star(k: int, r, L, strict: bool = True) -> tuple[int, int]:
    """(h0, h1) of the star with k edges, e1 of length L and the others of length 1."""
    if k < 3:
        raise ValueError("k >= 3 required")
    r, L = Fraction(r), Fraction(L)
    _check(strict, r, L, [Fraction(1), Fraction(2), L, L + 1])
    if k == 3:
        return rank_y(r, L, strict)
    if r <= 1:
        h0 = 1
    elif r <= 2:
        h0 = k * k - 3 * k + 4 if r <= L else (k * k - k if r <= L + 1 else k * k - 3 * k + 2)
    else:
        h0 = 2 if r <= L else (2 * k - 2 if r <= L + 1 else 0)
    if r <= 1 and r <= L:
        h1 = k * k - 3 * k + 1
    elif r <= 1 and r <= L + 1:
        h1 = k * k - 5 * k + 5
    else:
        h1 = 0
    return h0, h1


def rank_y(r, L, strict: bool = True) -> tuple[int, int]:
    r, L = Fraction(r), Fraction(L)
    _check(strict, r, L, [Fraction(1), Fraction(2), L, L + 1])
    if r <= 1:
        return (1, 1) if r <= L else (2, 0)
    if r <= 2:
        return (4, 0) if r <= L else ((6, 0) if r <= L + 1 else (2, 0))
    return (2, 0) if r <= L else ((4, 0) if r <= L + 1 else (0, 0))


def rank_star_equal(k: int, r) -> tuple[int, int]:
    """All edges of length 1."""
    r = Fraction(r)
    if r <= 1:
        return 1, k * (k - 3) + 1
    return (k * k - k, 0) if r <= 2 else (0, 0)


def rank_h(m: int, n: int, r, L, strict: bool = True) -> tuple[int, int]:
    """(h0, h1) of the generalized H graph with bridge length L and unit leaves."""
    if m < 3 or n < 3:
        raise ValueError("m, n >= 3 required")
    r, L = Fraction(r), Fraction(L)
    _check(strict, r, L, [Fraction(1), Fraction(2), L, L + 1, L + 2])
    if r <= 1:
        h0 = 1
    elif r <= 2:
        h0 = m * (m - 3) + n * (n - 3) + 6 if r <= L + 1 else (m + n) * (m + n - 5) + 6
    else:
        h0 = 2 if r <= L + 1 else (2 * (m - 1) * (n - 1) if r <= L + 2 else 0)
    if r <= 1:
        h1 = m * (m - 3) + n * (n - 3) + 3 if r <= L else (m + n) * (m + n - 7) + 11
    elif L < r <= L + 1:
        h1 = 2 * (m - 2) * (n - 2)
    else:
        h1 = 0
    return h0, h1


def rank_h33(r, L, strict: bool = True) -> tuple[int, int]:
    """The m = n = 3 table, written out separately."""
    r, L = Fraction(r), Fraction(L)
    _check(strict, r, L, [Fraction(1), Fraction(2), L, L + 1, L + 2])
    if r <= 1:
        h0 = 1
    elif r <= 2:
        h0 = 6 if r <= L + 1 else 12
    else:
        h0 = 2 if r <= L + 1 else (8 if r <= L + 2 else 0)
    if r <= 1:
        h1 = 3 if r <= L else 5
    elif L < r <= L + 1:
        h1 = 2
    else:
        h1 = 0
    return h0, h1


# ------------------------------------------------------------------ regions

def star_region(r, L) -> str:
    """Region name: column A/B/C for r<1, 1<r<2, r>2; row 1/2/3 for r<L, L<r<L+1, r>L+1."""
    r, L = Fraction(r), Fraction(L)
    col = "A" if r < 1 else ("B" if r < 2 else "C")
    row = "1" if r < L else ("2" if r < L + 1 else "3")
    return col + row


def h_region(r, L) -> str:
    """Region name for H graphs: A (r<1), B+/B- (1<r<2, r below/above L+1),
    C+/Cm/C0 (r>2, r below L+1 / between L+1 and L+2 / above L+2); A splits into
    A+ (r<L) and A- (r>L)."""
    r, L = Fraction(r), Fraction(L)
    if r < 1:
        return "A+" if r < L else "A-"
    if r < 2:
        return "B+" if r < L + 1 else "B-"
    if r < L + 1:
        return "C+"
    return "Cm" if r < L + 2 else "C0"


@dataclass(frozen=True)
class CatalogClass:
    """One isomorphism class of summands.

    For an interval class ``support`` is the set of region names it occupies and
    ``dims`` is None. A non-interval class carries its dimension per region.
    A multiplicity of None means the catalog does not fix it.
    """

    name: str
    support: frozenset[str]
    interval: bool
    multiplicity: int | None
    dims: tuple[tuple[str, int], ...] | None = None

    def dim_at(self, region: str) -> int:
        if self.dims is not None:
            return dict(self.dims).get(region, 0)
        return 1 if region in self.support else 0


@dataclass(frozen=True)
class SummandCatalog:
    kind: str
    region: Callable[[Fraction, Fraction], str]
    classes: tuple[CatalogClass, ...]
    complete: bool  # whether the classes account for the whole module

    @property
    def multiplicities(self) -> tuple[int | None, ...]:
        return tuple(c.multiplicity for c in self.classes)

    def mass(self, region: str) -> int:
        return sum((c.multiplicity or 0) * c.dim_at(region) for c in self.classes)


_M1_DIMS = (("A1", 1), ("B1", 2), ("C1", 1), ("A2", 1), ("B2", 2), ("C2", 1), ("B3", 1))


def _fs(*names: str) -> frozenset[str]:
    return frozenset(names)


def expected_summands(kind: str, k: int | None = None, m: int | None = None, n: int | None = None,
                      rho: int | None = None) -> SummandCatalog:
    """Summand catalog for one of: 'Y PH0', 'Y PH1', 'Star PH0', 'Star PH1', 'H PH0', 'H PH1'.

    'Star PH1' needs the rank rho of the map from region A2 to A1. 'H PH1' fixes only
    the class coming from the band L<r<L+1 with r>1.
    """
    if kind == "Y PH0":
        m1 = CatalogClass("M1", _fs(*(name for name, _ in _M1_DIMS)), False, 1, _M1_DIMS)
        return SummandCatalog(kind, star_region, (
            m1,
            CatalogClass("M2", _fs("B1", "C1", "B2", "C2"), True, 1),
            CatalogClass("E", _fs("B2", "C2"), True, 2),
            CatalogClass("F", _fs("B1", "A2", "B2", "B3"), True, 1),
        ), True)
    if kind == "Y PH1":
        return SummandCatalog(kind, star_region, (CatalogClass("N", _fs("A1"), True, 1),), True)
    if kind == "Star PH0":
        if k is None or k < 4:
            raise ValueError("Star PH0 needs k >= 4")
        m1 = CatalogClass("M1", _fs(*(name for name, _ in _M1_DIMS)), False, 1, _M1_DIMS)
        return SummandCatalog(kind, star_region, (
            m1,
            CatalogClass("M2", _fs("B1", "C1", "B2", "C2"), True, 1),
            CatalogClass("E", _fs("B2", "C2"), True, 2 * k - 4),
            CatalogClass("F", _fs("B1", "B2", "B3"), True, k * k - 3 * k + 1),
        ), True)
    if kind == "Star PH1":
        if k is None or k < 4 or rho is None:
            raise ValueError("Star PH1 needs k >= 4 and rho")
        return SummandCatalog(kind, star_region, (
            CatalogClass("N1", _fs("A1"), True, k * (k - 3) + 1 - rho),
            CatalogClass("N2", _fs("A2"), True, k * k - 5 * k + 5 - rho),
            CatalogClass("N3", _fs("A1", "A2"), True, rho),
        ), True)
    if kind == "H PH0":
        if m is None or n is None:
            raise ValueError("H PH0 needs m and n")
        return SummandCatalog(kind, h_region, (
            CatalogClass("H1", _fs("A+", "A-", "B+", "B-", "C+", "Cm"), True, 1),
            CatalogClass("H2", _fs("B+", "B-", "C+", "Cm"), True, 1),
            CatalogClass("H3", _fs("B+", "B-"), True, (m - 1) * (m - 2) + (n - 1) * (n - 2)),
            CatalogClass("H4", _fs("B-", "Cm"), True, 2 * m * n - 2 * m - 2 * n),
        ), True)
    if kind == "H PH1":
        if m is None or n is None:
            raise ValueError("H PH1 needs m and n")
        return SummandCatalog(kind, h1_band_region, (
            CatalogClass("band", _fs("A-", "band"), True, 2 * (m - 2) * (n - 2)),
        ), False)
    raise ValueError(f"unsupported catalog kind {kind!r}")


def h1_band_region(r, L) -> str:
    """Regions for H-graph degree one: A+/A- as in h_region, 'band' for r>1 with L<r<L+1."""
    r, L = Fraction(r), Fraction(L)
    if r < 1:
        return "A+" if r < L else "A-"
    return "band" if L < r < L + 1 else "other"


# ------------------------------------------------------------ MV pages

@dataclass(frozen=True)
class MVPages:
    """E^1 dims (0,0), (1,0), (0,1); rank of d1 on row 0; E^2 dims (0,0), (1,0), (0,1)."""

    e1: tuple[int, int, int]
    rank_d1: int
    e2: tuple[int, int, int]


def mv_star(k: int, r, L) -> MVPages | None:
    """Pages for the cover e1 x e1, e1 x rest, rest x e1, rest x rest when r <= 1."""
    r, L = Fraction(r), Fraction(L)
    h1 = (k - 1) * (k - 4) + 1
    if r > 1:
        return None
    if r <= L:
        return MVPages((5, 2 * k, h1), 4, (1, 2 * k - 4, h1))
    return MVPages((2 * k - 1, 2 * k - 2, h1), 2 * k - 2, (1, 0, h1))


_MV_H33 = [
    # predicate on (r, L), pages
    (lambda r, L: r <= 1 and r <= L / 2, MVPages((4, 4, 2), 3, (1, 1, 2))),
    (lambda r, L: r <= 1 and L / 2 < r <= L, MVPages((6, 8, 0), 5, (1, 3, 0))),
    (lambda r, L: r <= 1 and L < r, MVPages((6, 8, 2), 5, (1, 3, 2))),
    (lambda r, L: 1 < r <= 2 and r <= L / 2, MVPages((10, 4, 0), 4, (6, 0, 0))),
    (lambda r, L: 1 < r <= 2 and L / 2 < r <= L, MVPages((14, 8, 0), 8, (6, 0, 0))),
    (lambda r, L: 1 < r <= 2 and L < r <= L / 2 + 1, MVPages((14, 8, 2), 8, (6, 0, 2))),
    (lambda r, L: 1 < r <= 2 and L + 1 < r, MVPages((12, 0, 0), 0, (12, 0, 0))),
    (lambda r, L: 2 < r and r <= L / 2, MVPages((6, 4, 0), 4, (2, 0, 0))),
    (lambda r, L: 2 < r and L / 2 < r <= L / 2 + 1, MVPages((10, 8, 0), 8, (2, 0, 0))),
    (lambda r, L: 2 < r and L + 1 < r <= L + 2, MVPages((8, 0, 0), 0, (8, 0, 0))),
]

MV_H33_SAMPLES = [
    (Fraction(1, 4), Fraction(1)), (Fraction(3, 4), Fraction(1)), (Fraction(3, 4), Fraction(1, 2)),
    (Fraction(3, 2), Fraction(4)), (Fraction(3, 2), Fraction(5, 2)), (Fraction(3, 2), Fraction(5, 4)),
    (Fraction(3, 2), Fraction(1, 4)), (Fraction(5, 2), Fraction(6)), (Fraction(5, 2), Fraction(7, 2)),
    (Fraction(5, 2), Fraction(1)),
]

MV_STAR_SAMPLES = [(Fraction(1, 2), Fraction(2)), (Fraction(3, 4), Fraction(1, 2))]


def mv_h33(r, L) -> MVPages | None:
    """Pages for the left/right cover of the (3,3) H graph, where the regime is tabulated."""
    r, L = Fraction(r), Fraction(L)
    for pred, pages in _MV_H33:
        if pred(r, L):
            return pages
    return None
