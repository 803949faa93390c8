"""Critical lines in the (r, L) plane, their chambers, and the chamber poset."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence

from .config_complex import cell_systems
from .geometry import HalfPlane, Polygon, centroid, intersect, split
from .metric_graph import MetricGraph, ParamPoint


class OnWall(ValueError):
    pass


class CriticalLine(NamedTuple):
    """alpha*r + beta*L = gamma with integer coefficients, gcd 1, alpha > 0."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def value(self, r: Fraction, L: Fraction) -> Fraction:
        return self.alpha * r + self.beta * L - self.gamma

    def __str__(self) -> str:
        def term(c: Fraction, name: str) -> str:
            return "" if c == 0 else f"{c}*{name}" if c not in (1, -1) else ("" if c == 1 else "-") + name

        lhs = " + ".join(t for t in (term(self.alpha, "r"), term(self.beta, "L")) if t)
        return f"{lhs} = {self.gamma}".replace("+ -", "- ")


def normalize_line(alpha: Fraction, beta: Fraction, gamma: Fraction) -> CriticalLine | None:
    if alpha == 0 and beta == 0:
        return None
    den = math.lcm(Fraction(alpha).denominator, Fraction(beta).denominator, Fraction(gamma).denominator)
    a, b, c = (int(x * den) for x in (alpha, beta, gamma))
    g = math.gcd(math.gcd(a, b), c)
    a, b, c = a // g, b // g, c // g
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return CriticalLine(Fraction(a), Fraction(b), Fraction(c))


def meets_quadrant(line: CriticalLine) -> bool:
    a, b, c = line
    if a == 0 or b == 0:
        coef = a or b
        return c / coef > 0
    # a*r + b*L = c meets r, L > 0 unless both intercepts are nonpositive with same-sign slope
    if a * b < 0:
        return True
    return c * a > 0


def critical_lines(g: MetricGraph) -> list[CriticalLine]:
    """Lines where a box corner of some chart lies on that chart's proximity line."""
    found: set[CriticalLine] = set()
    probe = ParamPoint(Fraction(1), g.L)
    for s in cell_systems(g, probe):
        prox = s.constraints[4]
        pf = s.forms[4]
        for i, j in ((0, 2), (0, 3), (1, 2), (1, 3)):
            xf = s.forms[i] if i == 1 else (Fraction(0),) * 3
            yf = s.forms[j] if j == 3 else (Fraction(0),) * 3
            # prox.a * x + prox.b * y - c(r, L) = 0 at the corner
            k = [prox.a * xf[t] + prox.b * yf[t] - pf[t] for t in range(3)]
            line = normalize_line(k[1], k[2], -k[0])
            if line is not None and meets_quadrant(line):
                found.add(line)
    return sorted(found, key=lambda ln: (ln.gamma / ln.alpha if ln.alpha else ln.gamma, -ln.beta, ln.alpha))


@dataclass(frozen=True)
class Chamber:
    id: int
    sample: ParamPoint
    signs: tuple[int, ...]
    polygon: Polygon


@dataclass(frozen=True)
class Wall:
    source: int  # smaller space
    target: int  # larger space
    line: int
    midpoint: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class ChamberArrangement:
    lines: tuple[CriticalLine, ...]
    bound: Fraction
    chambers: tuple[Chamber, ...]
    walls: tuple[Wall, ...]

    @property
    def order(self) -> list[tuple[int, int]]:
        """Covering relations (source, target), from smaller to larger space."""
        return [(w.source, w.target) for w in self.walls]

    def successors(self, cid: int) -> list[int]:
        return [w.target for w in self.walls if w.source == cid]

    def predecessors(self, cid: int) -> list[int]:
        return [w.source for w in self.walls if w.target == cid]

    def leq(self) -> set[tuple[int, int]]:
        """Reflexive transitive closure of the covering relations."""
        n = len(self.chambers)
        up = {c: set() for c in range(n)}
        # walls strictly decrease the number of positive signs, so sort by it
        order = sorted(range(n), key=lambda c: sum(1 for s in self.chambers[c].signs if s < 0), reverse=True)
        for c in order:
            for t in self.successors(c):
                up[c] |= {t} | up[t]
        return {(a, b) for a in range(n) for b in up[a] | {a}}

    def wall_between(self, a: int, b: int) -> Wall:
        for w in self.walls:
            if (w.source, w.target) == (a, b):
                return w
        raise KeyError((a, b))


def default_bound(lines: Sequence[CriticalLine]) -> Fraction:
    """Window size that keeps every vertex of the arrangement strictly inside.

    Every chamber of the quadrant then meets the window. The floor of
    2 + (largest constant) keeps the band beyond the last line visible.
    """
    consts = [ln.gamma / ln.alpha for ln in lines if ln.alpha] + [Fraction(0)]
    axes = [CriticalLine(Fraction(1), Fraction(0), Fraction(0)), CriticalLine(Fraction(0), Fraction(1), Fraction(0))]
    extent = Fraction(0)
    for a, b in combinations(list(lines) + axes, 2):
        det = a.alpha * b.beta - a.beta * b.alpha
        if det == 0:
            continue
        r = (a.gamma * b.beta - b.gamma * a.beta) / det
        L = (a.alpha * b.gamma - b.alpha * a.gamma) / det
        if r >= 0 and L >= 0:
            extent = max(extent, r, L)
    return max(2 + max(consts), extent + 1)


def arrangement(lines: Sequence[CriticalLine], bound: Fraction | None = None) -> ChamberArrangement:
    """Chambers of the line arrangement inside the open square (0, bound)^2."""
    lines = tuple(lines)
    B = Fraction(bound) if bound is not None else default_bound(lines)
    one, zero = Fraction(1), Fraction(0)
    box = intersect([HalfPlane(-one, zero, zero), HalfPlane(one, zero, B),
                     HalfPlane(zero, -one, zero), HalfPlane(zero, one, B)])
    pieces: list[Polygon] = [box]
    for ln in lines:
        pieces = [q for poly in pieces for q in split(poly, ln.alpha, ln.beta, ln.gamma)]
    cells = []
    for poly in pieces:
        if poly.dim != 2:
            continue
        r, L = centroid(poly)
        signs = tuple(1 if ln.value(r, L) > 0 else -1 for ln in lines)
        cells.append((ParamPoint(r, L), signs, poly))
    cells.sort(key=lambda c: (-c[0].r, c[0].L))
    chambers = tuple(Chamber(i, s, sg, poly) for i, (s, sg, poly) in enumerate(cells))
    walls = []
    for a, b in combinations(chambers, 2):
        diff = [k for k in range(len(lines)) if a.signs[k] != b.signs[k]]
        if len(diff) != 1:
            continue
        k = diff[0]
        src, dst = (a, b) if a.signs[k] > 0 else (b, a)
        ln = lines[k]
        on = [pt for pt in src.polygon.vertices if ln.value(*pt) == 0]
        mid = ((on[0][0] + on[-1][0]) / 2, (on[0][1] + on[-1][1]) / 2)
        walls.append(Wall(src.id, dst.id, k, mid))
    walls.sort(key=lambda w: (w.source, w.target))
    return ChamberArrangement(lines, B, chambers, tuple(walls))


def chamber_of(arr: ChamberArrangement, p: ParamPoint) -> int:
    signs = []
    for ln in arr.lines:
        v = ln.value(Fraction(p.r), Fraction(p.L))
        if v == 0:
            raise OnWall(f"{p} lies on {ln}")
        signs.append(1 if v > 0 else -1)
    signs = tuple(signs)
    for c in arr.chambers:
        if c.signs == signs:
            return c.id
    raise OnWall(f"{p} is outside the computed window")


def straddle(arr: ChamberArrangement, wall: Wall) -> tuple[ParamPoint, ParamPoint]:
    """Comparable points just inside the source and target chambers of a wall."""
    r, L = wall.midpoint
    eps = Fraction(1, 8)
    for _ in range(64):
        i = (r + eps, L - eps)
        j = (r - eps, L + eps)
        if min(i + j) > 0:
            pi, pj = ParamPoint(*i), ParamPoint(*j)
            try:
                if chamber_of(arr, pi) == wall.source and chamber_of(arr, pj) == wall.target:
                    return pi, pj
            except OnWall:
                pass
        eps /= 2
    raise RuntimeError(f"could not straddle wall {wall}")
