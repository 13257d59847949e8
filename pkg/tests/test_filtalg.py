import pytest
from hypothesis import given, strategies as st

from gliders.exactlin import QQ, Field, Mat, Subspace
from gliders.filtalg import (INF, Algebra, AlgebraError, Bialgebra, Filtration, companion, degree_filtration,
                             group_algebra, one_step_filtration, subgroup_chain_filtration,
                             validate_algebra, validate_bialgebra, validate_bialgebra_filtration,
                             validate_filtration)
from gliders.fixtures import truncated_poly
from gliders.groups import cyclic, dihedral8, group_tables

F3 = Field(3)


def test_group_algebra_c2():
    b = group_algebra(cyclic(2), QQ)
    assert b.algebra.dim == 2
    assert validate_algebra(b.algebra) and validate_bialgebra(b)
    assert b.delta([0, 1]) == [0, 0, 0, 1]  # g -> g (x) g


def test_trivial_group():
    b = group_algebra(cyclic(1), QQ)
    assert b.algebra.dim == 1 and validate_bialgebra(b)
    assert validate_bialgebra_filtration(b, one_step_filtration(b.algebra))


@pytest.mark.parametrize("name", sorted(group_tables()))
def test_stored_groups_give_bialgebras(name):
    b = group_algebra(group_tables()[name], QQ)
    assert validate_bialgebra(b)
    F = one_step_filtration(b.algebra)
    assert validate_filtration(F)
    assert validate_bialgebra_filtration(b, F)


def test_s3_dimension():
    assert group_algebra(group_tables()["S3"], QQ).algebra.dim == 6


def test_non_group_table_rejected():
    with pytest.raises(AlgebraError):
        group_algebra([[0, 1], [1, 1]], QQ)


def test_unit_outside_layer_zero():
    A = truncated_poly(2)
    bad = Filtration(A, (0, 0), {0: Subspace.span(QQ, [[0, 1]], 2)})
    assert not validate_filtration(bad)


def test_dual_numbers_filtration():
    A = truncated_poly(2)
    F = Filtration(A, (0, 0), {0: Subspace.span(QQ, [[1, 0]], 2)})
    assert validate_algebra(A) and validate_filtration(F)


def test_layer_not_subcoalgebra():
    b = group_algebra(cyclic(2), QQ)
    F = Filtration(b.algebra, (-1, 0), {-1: Subspace.zero(QQ, 2), 0: Subspace.span(QQ, [[1, 1]], 2)})
    assert not validate_bialgebra_filtration(b, F)


def test_mismatched_algebras_error():
    b = group_algebra(cyclic(2), QQ)
    with pytest.raises(AlgebraError):
        validate_bialgebra_filtration(b, one_step_filtration(truncated_poly(3)))


def test_shape_mismatch_is_error():
    with pytest.raises(AlgebraError):
        Algebra(QQ, 2, (((1, 0),),), (1, 0))
    A = truncated_poly(2)
    with pytest.raises(AlgebraError):
        Bialgebra(A, Mat.zeros(QQ, 3, 2), Mat.zeros(QQ, 1, 2))


def test_corrupted_associativity():
    A = truncated_poly(2)
    mult = [list(r) for r in A.mult]
    mult[0][1] = (1, 0)  # 1*t = 1 breaks the unit law
    assert not validate_algebra(Algebra(QQ, 2, tuple(map(tuple, mult)), (1, 0)))


def test_one_step_layers():
    b = group_algebra(group_tables()["S3"], QQ)
    F = one_step_filtration(b.algebra)
    assert F.window == (-1, 1)
    assert F.layer(0) == Subspace.span(QQ, [b.algebra.unit], 6)
    assert F.layer(-5).dim == 0 and F.layer(7).dim == 6


def test_one_step_on_base_field():
    A = truncated_poly(1)
    F = one_step_filtration(A)
    assert {F.layer(d).dim for d in range(-3, 4)} <= {0, 1}


def test_subgroup_chain_d8():
    els, t = dihedral8()
    b = group_algebra(t, F3)
    e = els.index((0, 1, 2, 3))
    r2 = els.index((2, 3, 0, 1))
    F = subgroup_chain_filtration(b, [[e], [e, r2], list(range(8))])
    assert [F.layer(d).dim for d in range(3)] == [1, 2, 8]
    assert validate_bialgebra_filtration(b, F)


def test_subgroup_chain_trivial_is_one_step():
    b = group_algebra(group_tables()["S3"], QQ)
    e = next(i for i in range(6) if list(b.algebra.unit) == [1 if j == i else 0 for j in range(6)])
    F = subgroup_chain_filtration(b, [[e], list(range(6))])
    G = one_step_filtration(b.algebra)
    assert all(F.layer(d) == G.layer(d) for d in range(-2, 4))


def test_subgroup_chain_length_one_constant():
    b = group_algebra(cyclic(4), QQ)
    F = subgroup_chain_filtration(b, [list(range(4))])
    assert all(F.layer(d).dim == 4 for d in range(0, 3))


def test_subgroup_chain_rejects_non_subgroup():
    b = group_algebra(cyclic(4), QQ)
    with pytest.raises(AlgebraError):
        subgroup_chain_filtration(b, [[0], [0, 1]])


def test_companion_one_object():
    A = truncated_poly(3)
    F = degree_filtration(A, [0, 1, 2])
    c = companion(F, (0,), False)
    assert c.objects == (0,) and c.hom(0, 0) == F.layer(0)


def test_companion_extended_s3():
    b = group_algebra(group_tables()["S3"], QQ)
    c = companion(one_step_filtration(b.algebra), (-1, 0), True)
    assert c.hom_dim(-1, 0) == 6 and c.hom_dim(0, INF) == 6 and c.hom_dim(-1, INF) == 6
    assert c.hom_dim(0, -1) == 0 and c.hom_dim(0, 0) == 1


def test_companion_window_saturation():
    A = truncated_poly(4)
    F = degree_filtration(A, [0, 1, 2, 3])
    c = companion(F, (-2, 0), False)
    assert c.hom(-2, 0) == F.layer(2) and c.hom_dim(-2, 0) == 3


def test_companion_rejects_bad_lambda():
    F = one_step_filtration(truncated_poly(2))
    with pytest.raises(AlgebraError):
        companion(F, (0, -1), False)


@given(st.integers(1, 4), st.lists(st.integers(-3, 3), min_size=1, max_size=3, unique=True), st.booleans())
def test_companion_composition_closure(N, lam, ext):
    A = truncated_poly(N)
    F = degree_filtration(A, list(range(N)))
    c = companion(F, sorted(lam), ext)
    for a in c.objects:
        for b in c.objects:
            for d in c.objects:
                if (a, b) in c.pairs and (b, d) in c.pairs:
                    for s in c.hom_basis(b, d):
                        for r in c.hom_basis(a, b):
                            assert c.hom(a, d).contains(A.mul(s, r))
        if (a, a) in c.pairs:
            assert c.hom(a, a).contains(A.unit)
