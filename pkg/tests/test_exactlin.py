from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gliders.exactlin import (QQ, Field, LinAlgError, Mat, Subspace, image_basis, intersect, inverse,
                              kernel_basis, preimage, quotient, rank, rref, solve, subspace_sum)
from oracles import brute_kernel_size, naive_rank, naive_rref

F2, F5 = Field(2), Field(5)


@st.composite
def matrices(draw, field=None, max_dim=5):
    f = field or draw(st.sampled_from([QQ, F2, Field(3), F5]))
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    rows = draw(st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r))
    return Mat.from_rows(f, rows, c)


def subspaces(f, n):
    return st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), max_size=n).map(
        lambda vs: Subspace.span(f, vs, n))


# fields and scalars

def test_field_parse_and_format():
    assert Field.parse("Q") == QQ
    assert Field.parse("F7").p == 7
    assert QQ.fmt(Fraction(6, -4)) == "-3/2"
    assert F5.fmt(-1) == "4"
    assert F5.scalar("1/2") == 3
    with pytest.raises(LinAlgError):
        Field(4)


def test_scalars_canonical():
    m = Mat.from_rows(QQ, [[Fraction(2, 4), 3]])
    assert m.to_json() == [["1/2", "3"]]
    assert Mat.from_rows(F5, [[7, -1]]).to_json() == [["2", "4"]]


# rref

def test_rref_identity():
    R, piv = rref(Mat.identity(QQ, 2))
    assert R == Mat.identity(QQ, 2) and piv == [0, 1]


def test_rref_rational_example():
    R, piv = rref(Mat.from_rows(QQ, [[2, 4], [1, 2]]))
    assert R == Mat.from_rows(QQ, [[1, 2], [0, 0]]) and piv == [0]


def test_rref_mod2_example():
    R, piv = rref(Mat.from_rows(F2, [[1, 1], [1, 1]]))
    assert R == Mat.from_rows(F2, [[1, 1], [0, 0]]) and piv == [0]


@given(matrices())
def test_rref_matches_naive(m):
    R, piv = rref(m)
    ref, npiv = naive_rref(m.rows(), m.ncols, m.field.p)
    assert piv == npiv
    assert R.rows()[:len(piv)] == ref


# kernel and image

def test_kernel_examples():
    assert kernel_basis(Mat.zeros(QQ, 3, 3)) == Subspace.full(QQ, 3)
    assert kernel_basis(Mat.identity(QQ, 3)).dim == 0
    assert kernel_basis(Mat.from_rows(QQ, [[1, 1]])) == Subspace.span(QQ, [[1, -1]], 2)


@given(matrices())
def test_rank_nullity(m):
    assert kernel_basis(m).dim + rank(m) == m.ncols
    assert rank(m) == naive_rank(m.rows(), m.ncols, m.field.p)


@given(matrices(field=Field(3), max_dim=4))
def test_kernel_size_brute_force(m):
    assert 3 ** kernel_basis(m).dim == brute_kernel_size(m.rows(), m.ncols, 3)


@given(matrices())
def test_kernel_is_annihilated(m):
    K = kernel_basis(m)
    for v in K.vectors():
        assert (m @ Mat.column(m.field, v)).is_zero()


@given(matrices())
def test_image_dimension(m):
    assert image_basis(m).dim == rank(m)


# solve and inverse

@given(matrices(), st.data())
def test_solve_consistent(m, data):
    x = data.draw(st.lists(st.integers(-3, 3), min_size=m.ncols, max_size=m.ncols))
    b = m @ Mat.column(m.field, x)
    sol = solve(m, b)
    assert sol is not None and m @ sol == b


def test_solve_inconsistent():
    assert solve(Mat.from_rows(QQ, [[1, 1], [1, 1]]), Mat.column(QQ, [1, 2])) is None


def test_inverse():
    m = Mat.from_rows(QQ, [[2, 1], [1, 1]])
    assert m @ inverse(m) == Mat.identity(QQ, 2)
    with pytest.raises(LinAlgError):
        inverse(Mat.from_rows(QQ, [[1, 1], [1, 1]]))


# subspaces

def test_subspace_examples():
    e1, e2 = Subspace.span(QQ, [[1, 0]], 2), Subspace.span(QQ, [[0, 1]], 2)
    assert intersect(e1, e2).dim == 0
    assert preimage(Mat.identity(QQ, 2), e1) == e1
    assert subspace_sum(e1, Subspace.span(QQ, [[1, 1]], 2)) == Subspace.full(QQ, 2)


def test_dimension_mismatch_is_an_error():
    with pytest.raises(LinAlgError):
        subspace_sum(Subspace.zero(QQ, 2), Subspace.zero(QQ, 3))


@given(st.data(), st.sampled_from([QQ, F2, F5]), st.integers(1, 4))
def test_subspace_canonicity(data, f, n):
    a = data.draw(subspaces(f, n))
    b = data.draw(subspaces(f, n))
    assert subspace_sum(a, b) == subspace_sum(b, a)
    assert subspace_sum(a, b).basis == subspace_sum(b, a).basis
    assert intersect(a, a) == a
    assert intersect(a, b).dim + subspace_sum(a, b).dim == a.dim + b.dim


@given(st.data(), st.sampled_from([QQ, F5]), st.integers(1, 4))
def test_preimage_lands_inside(data, f, n):
    rows = data.draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=n, max_size=n))
    m = Mat.from_rows(f, rows, n)
    s = data.draw(subspaces(f, n))
    P = preimage(m, s)
    for v in P.vectors():
        assert s.contains((m @ Mat.column(f, v)).col(0))
    if P.dim:
        assert s.contains_space(image_basis(m @ P.inclusion()))


@given(st.data(), st.sampled_from([QQ, F2, F5]), st.integers(0, 5))
def test_quotient_section(data, f, n):
    s = data.draw(subspaces(f, n))
    q = quotient(n, s)
    assert q.dim == n - s.dim
    assert q.projection @ q.section == Mat.identity(f, q.dim)
    assert kernel_basis(q.projection) == s
