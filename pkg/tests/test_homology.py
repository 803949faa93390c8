from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from configph import linalg
from configph.homology import NotComparable, betti_fp, induced_map, summary
from configph.config_complex import build_complex, chain_complex
from configph.metric_graph import ParamPoint, generalized_h, star

from oracles import grid_components
from strategies import rationals

P = linalg.DEFAULT_PRIME


def test_y_large_to_small_r_rank():
    g = star(3, 1)
    m = induced_map(g, ParamPoint.of(F(3, 2), 1), ParamPoint.of(F(1, 2), 1), 0)
    assert m.shape == (1, summary(g, ParamPoint.of(F(3, 2), 1)).betti[0])
    assert linalg.rank(m, P) == 1


@pytest.mark.parametrize("deg", [0, 1])
def test_same_point_is_identity(deg):
    g = star(4, 2)
    pt = ParamPoint.of(F(1, 2), 2)
    m = induced_map(g, pt, pt, deg)
    assert np.array_equal(m, np.eye(m.shape[0], dtype=np.int64))


def test_same_chamber_map_is_identity():
    g = star(3, 1)
    m = induced_map(g, ParamPoint.of(F(1, 2), 2), ParamPoint.of(F(1, 3), F(5, 2)), 1)
    assert np.array_equal(m % P, np.eye(1, dtype=np.int64))


def test_not_comparable():
    g = star(3, 1)
    with pytest.raises(NotComparable):
        induced_map(g, ParamPoint.of(F(1, 2), 1), ParamPoint.of(F(3, 2), 1), 0)
    with pytest.raises(NotComparable):
        induced_map(g, ParamPoint.of(F(1, 2), 2), ParamPoint.of(F(1, 2), 1), 0)


def test_star4_degree1_across_r_equals_L():
    g = star(4, 1)
    src, mid, dst = ParamPoint.of(F(3, 4), F(1, 2)), ParamPoint.of(F(3, 4), 1), ParamPoint.of(F(1, 2), 2)
    direct = induced_map(g, src, dst, 1)
    composite = linalg.matmul(induced_map(g, mid, dst, 1), induced_map(g, src, mid, 1), P)
    assert np.array_equal(direct % P, composite)


def test_fp_betti_agrees_with_integer_betti():
    g = generalized_h(3, 3, 1)
    c = chain_complex(build_complex(g, ParamPoint.of(F(1, 2), 2)))
    assert betti_fp(c) == summary(g, ParamPoint.of(F(1, 2), 2)).betti


@pytest.mark.parametrize("g,r", [(star(3, 1), F(1, 2)), (star(3, 1), F(3, 2)), (star(4, 1), F(3, 2)),
                                 (star(4, 1), F(5, 2)), (generalized_h(3, 3, 2), F(3, 2)),
                                 (generalized_h(3, 3, 2), F(5, 2))], ids=str)
def test_h0_matches_discretized_oracle(g, r):
    want = grid_components(g, r, F(1, 4))
    assert summary(g, ParamPoint(r, g.L)).betti[0] == want


@st.composite
def comparable_triples(draw):
    rs = sorted((draw(rationals(1, 20, (8,))) for _ in range(3)), reverse=True)
    Ls = sorted(draw(rationals(2, 20, (8,))) for _ in range(3))
    return [ParamPoint(r, L) for r, L in zip(rs, Ls)]


@settings(max_examples=25)
@given(comparable_triples(), st.sampled_from([0, 1]), st.sampled_from([3, 4]))
def test_functoriality_on_triples(pts, deg, k):
    g = star(k, 1)
    p, q, s = pts
    direct = induced_map(g, p, s, deg) % P
    composite = linalg.matmul(induced_map(g, q, s, deg), induced_map(g, p, q, deg), P)
    assert np.array_equal(direct, composite)
