import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import GF, Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from sympy.polys.matrices import DomainMatrix

from configph import linalg

P = linalg.DEFAULT_PRIME

matrices = st.integers(0, 6).flatmap(lambda m: st.integers(0, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=m, max_size=m)
    .map(lambda rows: np.array(rows, dtype=np.int64).reshape(m, n))))


def sympy_rank_mod(a, p):
    if a.size == 0:
        return 0
    K = GF(p)
    return DomainMatrix([[K(int(x)) for x in row] for row in a.tolist()], a.shape, K).rank()


@given(matrices)
def test_rank_matches_sympy(a):
    assert linalg.rank(a, P) == sympy_rank_mod(a, P)
    assert linalg.rank(a, 3) == sympy_rank_mod(a, 3)


@given(matrices)
def test_nullspace(a):
    n = linalg.nullspace(a, P)
    assert n.shape == (a.shape[1], a.shape[1] - linalg.rank(a, P))
    if n.size and a.shape[0]:
        assert not np.any(linalg.matmul(a, n, P))


@given(matrices)
def test_solve_consistent(a):
    x = np.arange(a.shape[1], dtype=np.int64)
    b = linalg.matmul(a, x[:, None], P)
    sol = linalg.solve(a, b, P)
    assert np.array_equal(linalg.matmul(a, sol, P), b % P)


def test_solve_inconsistent():
    with pytest.raises(linalg.InconsistentSystem):
        linalg.solve(np.array([[1, 1], [1, 1]]), np.array([1, 2]), P)


def test_inverse():
    a = np.array([[2, 1], [1, 1]])
    assert np.array_equal(linalg.matmul(a, linalg.inverse(a, P), P), np.eye(2, dtype=np.int64))
    with pytest.raises(linalg.InconsistentSystem):
        linalg.inverse(np.array([[1, 2], [2, 4]]), P)


def test_echelon_independence():
    e = linalg.Echelon(3, P)
    assert e.add(np.array([1, 0, 1]))
    assert e.add(np.array([0, 1, 0]))
    assert not e.add(np.array([2, 3, 2]))
    assert len(e) == 2


def test_snf_small_examples():
    assert [d for d in linalg.smith_normal_form([[2, 0], [0, 3]]).diagonal] == [1, 6]
    m = [[2, 4, 4, 0], [-6, 6, 12, 0], [10, -4, -16, 0], [0, 0, 0, 0]]
    res = linalg.smith_normal_form(m)
    assert list(res.diagonal) == [2, 6, 12, 0]
    assert res.rank == 3


@given(matrices)
def test_snf_transform_and_divisibility(a):
    res = linalg.smith_normal_form(a)
    U, V, S = (np.array(x, dtype=object).reshape(len(x), -1 if x else 0) for x in (res.U, res.V, res.S))
    if a.size:
        assert (U.dot(a.astype(object)).dot(V) == S).all()
        assert round(abs(float(Matrix(res.U).det()))) == 1 and round(abs(float(Matrix(res.V).det()))) == 1
    d = [x for x in res.diagonal if x]
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))


@given(matrices)
def test_invariant_factors_match_sympy(a):
    mine = linalg.invariant_factors(a)
    if a.size == 0:
        assert mine == []
        return
    ref = sympy_snf(Matrix(a.tolist()), domain=ZZ)
    diag = sorted(abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i] != 0)
    assert mine == diag
