from fractions import Fraction as F

import pytest

from configph.metric_graph import ParamPoint, generalized_h, segment, star
from configph.param_chambers import (CriticalLine, OnWall, arrangement, chamber_of, critical_lines,
                                     normalize_line, straddle)


def line(a, b, c):
    return CriticalLine(F(a), F(b), F(c))


def test_y_lines():
    assert set(critical_lines(star(3, 1))) == {line(1, 0, 1), line(1, 0, 2), line(1, -1, 0), line(1, -1, 1)}


def test_h33_lines():
    # r = L/2 and r = 1 + L/2 appear as 2r - L = 0 and 2r - L = 2
    want = {line(1, 0, 1), line(1, 0, 2), line(2, -1, 0), line(1, -1, 0), line(2, -1, 2),
            line(1, -1, 1), line(1, -1, 2)}
    assert want <= set(critical_lines(generalized_h(3, 3, 1)))


def test_segment_lines():
    assert line(1, -1, 0) in critical_lines(segment(1))


def test_normalize_line():
    assert normalize_line(F(-2), F(2), F(-4)) == line(1, -1, 2)
    assert normalize_line(F(0), F(0), F(1)) is None


def test_single_line_two_chambers_ordered():
    arr = arrangement([line(1, 0, 1)])
    assert len(arr.chambers) == 2
    assert arr.chambers[0].sample.r > 1 > arr.chambers[1].sample.r
    assert arr.order == [(0, 1)]


def _grid_sign_vectors(lines, bound, n=60):
    found = set()
    for i in range(1, n):
        for j in range(1, n):
            r, L = F(i * bound, n) + F(1, 997), F(j * bound, n) + F(1, 991)
            vals = [ln.value(r, L) for ln in lines]
            if all(v != 0 for v in vals):
                found.add(tuple(1 if v > 0 else -1 for v in vals))
    return found


@pytest.mark.parametrize("g,count,walls", [(star(3, 1), 8, 10), (generalized_h(3, 3, 1), 14, 18)],
                         ids=["Y", "H33"])
def test_chamber_counts_match_grid(g, count, walls):
    arr = arrangement(critical_lines(g))
    assert len(arr.chambers) == count
    assert len(arr.walls) == walls
    assert {c.signs for c in arr.chambers} == _grid_sign_vectors(arr.lines, arr.bound)


def test_chamber_of():
    arr = arrangement(critical_lines(star(3, 1)))
    c = arr.chambers[chamber_of(arr, ParamPoint.of(F(1, 2), 2))]
    assert c.sample.r < 1 and c.sample.r < c.sample.L
    with pytest.raises(OnWall):
        chamber_of(arr, ParamPoint.of(1, 1))
    c = arr.chambers[chamber_of(arr, ParamPoint.of(F(3, 2), F(5, 4)))]
    assert 1 < c.sample.r < 2 and c.sample.L < c.sample.r < c.sample.L + 1


def test_every_chamber_contains_its_sample():
    arr = arrangement(critical_lines(generalized_h(4, 3, 1)))
    for c in arr.chambers:
        assert chamber_of(arr, c.sample) == c.id


def test_walls_go_from_larger_r_smaller_L():
    arr = arrangement(critical_lines(generalized_h(3, 3, 1)))
    for w in arr.walls:
        pi, pj = straddle(arr, w)
        assert pi.r >= pj.r and pi.L <= pj.L
        assert chamber_of(arr, pi) == w.source and chamber_of(arr, pj) == w.target


def test_leq_is_partial_order():
    arr = arrangement(critical_lines(star(3, 1)))
    rel = arr.leq()
    n = len(arr.chambers)
    assert all((c, c) in rel for c in range(n))
    assert not any((a, b) in rel and (b, a) in rel and a != b for a in range(n) for b in range(n))
    for a, b in rel:
        for c in range(n):
            if (b, c) in rel:
                assert (a, c) in rel


def test_unequal_bridge_split_refines_but_keeps_ranks():
    from configph.closed_form_oracle import rank_h
    from configph.homology import summary
    from configph.metric_graph import build_graph
    spec = generalized_h(3, 3, 1).to_spec()
    spec["variable"] = {"f": "1/3", "f'": "2/3"}
    g = build_graph(spec, 1)
    arr = arrangement(critical_lines(g))
    assert len(arr.chambers) > 14
    for c in arr.chambers:
        assert summary(g, c.sample).betti[:2] == rank_h(3, 3, *c.sample)
