from fractions import Fraction as F

from hypothesis import given, strategies as st

from configph.geometry import HalfPlane, intersect, split


def box(w, h, extra=()):
    one, zero = F(1), F(0)
    return intersect([HalfPlane(-one, zero, zero), HalfPlane(one, zero, F(w)),
                      HalfPlane(zero, -one, zero), HalfPlane(zero, one, F(h)), *extra])


def area(poly):
    v = poly.vertices
    return sum(v[i][0] * v[(i + 1) % len(v)][1] - v[(i + 1) % len(v)][0] * v[i][1] for i in range(len(v))) / 2


def test_box_is_ccw_from_lowest():
    p = box(2, 1)
    assert p.dim == 2
    assert p.vertices[0] == (0, 0)
    assert area(p) == 2


def test_triangle_cut():
    p = box(1, 1, [HalfPlane(F(-1), F(-1), F(-1))])  # x + y >= 1
    assert p.dim == 2 and area(p) == F(1, 2)


def test_degenerate_point_and_segment():
    pt = box(1, 1, [HalfPlane(F(-1), F(-1), F(-2))])  # x + y >= 2 touches the corner
    assert pt.dim == 0 and pt.vertices == ((1, 1),)
    seg = box(1, 1, [HalfPlane(F(0), F(-1), F(-1))])  # y >= 1
    assert seg.dim == 1


def test_empty():
    assert box(1, 1, [HalfPlane(F(-1), F(-1), F(-3))]).empty


def test_split_only_through_interior():
    p = box(2, 2)
    assert len(split(p, F(1), F(0), F(1))) == 2
    assert len(split(p, F(1), F(0), F(2))) == 1
    assert len(split(p, F(1), F(0), F(5))) == 1


@given(st.integers(1, 9), st.integers(1, 9), st.integers(-20, 20), st.integers(-20, 20), st.integers(-30, 30))
def test_split_preserves_area(w, h, a, b, c):
    if a == 0 and b == 0:
        return
    p = box(w, h)
    parts = split(p, F(a), F(b), F(c))
    assert sum(area(q) for q in parts) == area(p)
    for q in parts:
        vals = {(a * x + b * y - c > 0) - (a * x + b * y - c < 0) for x, y in q.vertices}
        assert not {1, -1} <= vals
