import random

import pytest
from hypothesis import given, settings, strategies as st

from confhom.intlin import (AbGroupInvariants, NotASubgroupError, Quotient, SparseIntMat, SpanMembership,
                            cokernel_invariants, hnf, image_membership, kernel_basis, preimage, rank, snf,
                            subquotient_invariants)
from oracles import bareiss_det, invariant_factors

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_snf_diagonal_example():
    res = snf(SparseIntMat.from_dense([[2, 0], [0, 3]]))
    assert res.diagonal == (1, 6)
    assert res.cokernel == AbGroupInvariants(0, (6,))


def test_snf_zero_and_empty():
    assert snf(SparseIntMat.zero(3, 2)).rank == 0
    assert snf(SparseIntMat.zero(3, 2)).cokernel.free_rank == 3
    assert snf(SparseIntMat(0, 0)).cokernel.is_trivial


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_matches_minors(rows):
    res = snf(SparseIntMat.from_dense(rows))
    assert list(res.diagonal) == invariant_factors(rows)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_hnf_is_unimodular_transform(rows):
    m = SparseIntMat.from_dense(rows)
    h, u = hnf(m)
    assert m @ u == h
    assert abs(bareiss_det(u.to_dense())) == 1


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_basis(rows):
    m = SparseIntMat.from_dense(rows)
    ker = kernel_basis(m)
    assert len(ker) == m.n_cols - rank(m)
    for v in ker:
        assert m.apply(v) == {}


def test_kernel_of_row():
    ker = kernel_basis(SparseIntMat.from_dense([[2, 4]]))
    assert len(ker) == 1
    v = ker[0]
    assert 2 * v.get(0, 0) + 4 * v.get(1, 0) == 0
    assert abs(v.get(1, 0)) == 1


def test_image_membership_is_integral():
    m = SparseIntMat.from_dense([[2], [0]])
    assert image_membership(m, [4, 0])[0]
    assert not image_membership(m, [1, 0])[0]
    ok, pre = image_membership(m, {0: 6})
    assert ok and pre == {0: 3}


@settings(max_examples=100, deadline=None)
@given(matrices, st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_span_membership_of_combinations(rows, coeffs):
    m = SparseIntMat.from_dense(rows)
    x = {j: c for j, c in enumerate(coeffs[:m.n_cols]) if c}
    v = m.apply(x)
    span = SpanMembership(m)
    assert span.contains(v)
    y = span.coordinates(v)
    assert span.basis.apply(y) == v
    ok, pre = image_membership(m, v)
    assert ok and m.apply(pre) == v


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_quotient_projection(rows):
    m = SparseIntMat.from_dense(rows)
    q = Quotient(m)
    assert q.invariants == cokernel_invariants(m)
    for c in m.cols:
        assert q.is_zero(c)
    for i in range(q.dim):
        assert q.project(q.lift(i)) == tuple(int(j == i) for j in range(q.dim))


def test_quotient_torsion_coordinates():
    q = Quotient(SparseIntMat.from_dense([[2, 0], [0, 0], [0, 3]]))
    assert q.invariants == AbGroupInvariants(1, (6,))
    assert q.moduli == (0, 6)


def test_preimage():
    q = Quotient(SparseIntMat.from_dense([[2]]))
    m = SparseIntMat.from_dense([[1, 1]])
    gens = preimage(q, m)
    span = SpanMembership(SparseIntMat(2, len(gens), gens))
    assert span.contains({0: 1, 1: 1}) and span.contains({0: 2})
    assert not span.contains({0: 1})


def test_subquotient():
    a = SparseIntMat.from_dense([[1, 0], [0, 1]])
    b = SparseIntMat.from_dense([[2, 0], [0, 0]])
    assert subquotient_invariants(a, b) == AbGroupInvariants(1, (2,))
    with pytest.raises(NotASubgroupError):
        subquotient_invariants(b, a)


def test_large_entries_do_not_overflow():
    big = 10**30
    res = snf(SparseIntMat.from_dense([[big, 0], [0, big + 1]]))
    assert res.diagonal == (1, big * (big + 1))


def test_random_sparse_consistency():
    rnd = random.Random(5)
    for _ in range(20):
        rows = [[rnd.choice([0, 0, 0, 1, -1, 2]) for _ in range(12)] for _ in range(9)]
        m = SparseIntMat.from_dense(rows)
        assert rank(m) == rank(m.transpose())


def test_negative_pivot_reduction_terminates():
    m = SparseIntMat.from_dense([[-8, 6, -2], [3, 4, -4]])
    h, u = hnf(m)
    assert m @ u == h
    assert snf(m).diagonal == (1, 2)
