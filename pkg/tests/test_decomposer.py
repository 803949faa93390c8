import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from configph import linalg
from configph.closed_form_oracle import expected_summands, star_region
from configph.decomposer import (IndecomposabilityUndecided, Summand, catalog_match, classify_summand,
                                 decompose, endomorphism_basis, factor_split, fitting_split, hom_basis,
                                 is_isomorphic, is_natural, multiplicity_table, reconstructs, submodule)
from configph.persistence_module import PersistenceModule, check_functoriality, interval_module

from conftest import chambers, module
from fixtures import region_ids, y_reference_module

P = linalg.DEFAULT_PRIME


@pytest.fixture(scope="module")
def y_arr():
    return chambers("star", 3)


@pytest.fixture(scope="module")
def y_ph0_parts():
    return decompose(module("star", 0, 3), seed=0)


def ids(arr, *names):
    r = region_ids(arr)
    return {r[n] for n in names}


def test_interval_has_scalar_endomorphisms(y_arr):
    M = interval_module(y_arr, ids(y_arr, "B1", "C1", "B2", "C2"))
    assert len(endomorphism_basis(M)) == 1


def test_sum_of_two_intervals(y_arr):
    A = interval_module(y_arr, ids(y_arr, "B2", "C2"))
    B = interval_module(y_arr, ids(y_arr, "A1"))
    assert len(endomorphism_basis(A.direct_sum(B))) == 2
    assert not is_isomorphic(A, B)
    assert is_isomorphic(A.direct_sum(B), B.direct_sum(A))


def test_overlapping_intervals_have_a_connecting_map(y_arr):
    # {B1,B2} maps onto {B2,C2} at B2, so End of the sum picks up one more dimension
    A = interval_module(y_arr, ids(y_arr, "B2", "C2"))
    B = interval_module(y_arr, ids(y_arr, "B1", "B2"))
    assert len(hom_basis(B, A)) == 1 and len(hom_basis(A, B)) == 0
    assert len(endomorphism_basis(A.direct_sum(B))) == 3


def test_hom_between_intervals(y_arr):
    # B2 <= B1: a map from the interval on {B2,C2} to the one on {B1,B2} exists only if naturality allows
    A = interval_module(y_arr, ids(y_arr, "B2"))
    B = interval_module(y_arr, ids(y_arr, "B2", "C2"))
    assert len(hom_basis(A, A)) == 1
    for f in hom_basis(B, A) + hom_basis(A, B):
        assert set(f) >= set(A.dims)


def test_fitting_split_identity_and_zero(y_arr):
    M = interval_module(y_arr, ids(y_arr, "B1", "C1", "B2", "C2")).direct_sum(interval_module(y_arr, ids(y_arr, "A1")))
    one = {c: np.eye(M.dims[c], dtype=np.int64) for c in M.chambers}
    zero = {c: np.zeros((M.dims[c], M.dims[c]), dtype=np.int64) for c in M.chambers}
    ker, im = fitting_split(M, one)
    assert all(ker[c].shape[1] == 0 and im[c].shape[1] == M.dims[c] for c in M.chambers)
    ker, im = fitting_split(M, zero)
    assert all(ker[c].shape[1] == M.dims[c] and im[c].shape[1] == 0 for c in M.chambers)


def test_split_by_distinct_eigenvalues(y_arr):
    A = interval_module(y_arr, ids(y_arr, "B2", "C2"))
    B = interval_module(y_arr, ids(y_arr, "B2", "B3"))
    M = A.direct_sum(B)
    f = {c: np.diag([1] * A.dims[c] + [2] * B.dims[c]).astype(np.int64) for c in M.chambers}
    assert is_natural(M, f)
    pieces = factor_split(M, f)
    assert len(pieces) == 2
    got = sorted(tuple(piece[c].shape[1] for c in M.chambers) for piece in pieces)
    assert got == sorted(tuple(X.dims[c] for c in M.chambers) for X in (A, B))
    proj = {c: np.diag([1] * A.dims[c] + [0] * B.dims[c]).astype(np.int64) for c in M.chambers}
    ker, im = fitting_split(M, proj)
    assert {c: im[c].shape[1] for c in M.chambers} == A.dims
    assert {c: ker[c].shape[1] for c in M.chambers} == B.dims


def test_y_ph0_summands(y_ph0_parts, y_arr):
    M = module("star", 0, 3)
    assert reconstructs(M, y_ph0_parts)
    assert all(len(endomorphism_basis(s.module)) == 1 for s in y_ph0_parts)
    names = {c.id: star_region(*c.sample) for c in y_arr.chambers}
    m1 = y_ph0_parts[0]
    assert m1.kind == "non-interval"
    assert {names[c]: d for c, d in m1.dims.items() if d} == dict(expected_summands("Y PH0").classes[0].dims)
    m2 = [s for s in y_ph0_parts if s.is_interval and {names[c] for c in s.support} == {"B1", "C1", "B2", "C2"}]
    assert len(m2) == 1


def test_zero_summand_rejected(y_arr):
    Z = interval_module(y_arr, set())
    with pytest.raises(ValueError):
        classify_summand(Summand({c: np.zeros((0, 0), dtype=np.int64) for c in Z.chambers}, Z))


def test_single_interval_table(y_arr):
    M = interval_module(y_arr, ids(y_arr, "A1", "A2"))
    table = multiplicity_table(decompose(M))
    assert [(cl.kind, cl.multiplicity) for cl in table] == [("interval", 1)]


def test_non_interval_detected_for_non_convex_support(y_arr):
    # C2 and A2 are comparable through B2, so {C2, A2} is not convex
    M = interval_module(y_arr, ids(y_arr, "C2", "A2"))
    kinds = sorted(s.kind for s in decompose(M))
    assert kinds == ["interval", "interval"]


@pytest.mark.parametrize("k", [4, 5])
def test_star_ph0_catalog(k):
    M = module("star", 0, k)
    table = multiplicity_table(decompose(M, seed=3))
    assert catalog_match(table, expected_summands("Star PH0", k=k), M.poset) == []


def test_seed_independence():
    M = module("star", 0, 4)
    tables = [[(cl.descriptor(), cl.multiplicity) for cl in multiplicity_table(decompose(M, seed=s))]
              for s in (0, 1, 11)]
    assert tables[0] == tables[1] == tables[2]


def test_budget_exhaustion_is_reported(y_arr):
    M = interval_module(y_arr, ids(y_arr, "B2")).direct_sum(interval_module(y_arr, ids(y_arr, "C2")))
    with pytest.raises(IndecomposabilityUndecided):
        decompose(M, budget=0)


def test_reference_y_matrices_commute(y_arr):
    assert check_functoriality(y_reference_module(y_arr, P)).ok


def test_reference_y_module_is_the_computed_one(y_arr):
    assert is_isomorphic(y_reference_module(y_arr, P), module("star", 0, 3), tries=16)


def test_reference_y_module_has_two_non_interval_classes(y_arr):
    """The E summand spanned by c5 - c4 is not closed under the B2 -> A2 map."""
    Mp = y_reference_module(y_arr, P)
    table = multiplicity_table(decompose(Mp, seed=0))
    assert sum(1 for cl in table if cl.kind == "non-interval") == 2
    b2, a2 = region_ids(y_arr)["B2"], region_ids(y_arr)["A2"]
    e2 = np.zeros(6, dtype=np.int64)
    e2[4], e2[3] = 1, P - 1
    image = linalg.matmul(Mp.maps[(b2, a2)], e2.reshape(6, 1), P)
    assert np.any(image)


# random change of basis on a direct sum of intervals
INTERVALS = [("B2",), ("B2", "C2"), ("B1", "C1", "B2", "C2"), ("A1", "A2"), ("B2", "B3"), ("A1",)]


def conjugate(M: PersistenceModule, rng) -> PersistenceModule:
    P_ = {}
    for c in M.chambers:
        d = M.dims[c]
        while True:
            m = rng.integers(0, M.p, size=(d, d))
            if linalg.rank(m, M.p) == d:
                break
        P_[c] = m.astype(np.int64)
    maps = {}
    for (s, t), m in M.maps.items():
        if m.size == 0:
            maps[(s, t)] = m
            continue
        maps[(s, t)] = linalg.matmul(linalg.matmul(P_[t], m, M.p), linalg.inverse(P_[s], M.p), M.p)
    return PersistenceModule(M.poset, M.dims, maps, M.p, M.degree, M.chambers)


@settings(max_examples=15)
@given(st.lists(st.sampled_from(INTERVALS), min_size=1, max_size=4), st.integers(0, 2**16))
def test_recovers_random_interval_sums(picks, seed):
    arr = chambers("star", 3)
    M = None
    for names in picks:
        I = interval_module(arr, ids(arr, *names))
        M = I if M is None else M.direct_sum(I)
    N = conjugate(M, np.random.default_rng(seed))
    parts = decompose(N, seed=seed)
    assert reconstructs(N, parts)
    assert all(s.is_interval for s in parts)
    names = {c.id: star_region(*c.sample) for c in arr.chambers}
    got = sorted(tuple(sorted(names[c] for c in s.support)) for s in parts)
    assert got == sorted(tuple(sorted(x)) for x in picks)


def test_submodule_of_summand_basis(y_ph0_parts):
    M = module("star", 0, 3)
    s = y_ph0_parts[0]
    S = submodule(M, s.inclusions)
    assert S.dims == s.module.dims
