import random

import pytest
from hypothesis import given, strategies as st

from gliders.exactlin import QQ, Field, Mat
from gliders.filtalg import Bialgebra, group_algebra, subgroup_chain_filtration
from gliders.fixtures import s3_bialgebra, s3_standard_module, preglider
from gliders.glider import fiber_ishriek, is_preglider, is_weak_iso, skyscraper_istar
from gliders.groups import cyclic, dihedral8, s3_elements
from gliders.laws import Seed, gen_hom, gen_module, gen_preglider, gen_rep, gen_weak_iso
from gliders.monoidal import (TensorContext, associator, check_semi_hopf, left_unitor,
                              one_step_context, right_unitor, tensor_mor, tensor_rep, unit_object)
from gliders.repmod import identity, validate_mor, validate_rep
from oracles import fixed_space_dim, mat

F3 = Field(3)
S3 = one_step_context(s3_bialgebra())
C2 = one_step_context(group_algebra(cyclic(2), F3))
seeds = st.integers(0, 10 ** 6)


def d8_chain_ctx():
    els, t = dihedral8()
    b = group_algebra(t, F3)
    e, r2 = els.index((0, 1, 2, 3)), els.index((2, 3, 0, 1))
    return TensorContext(b, subgroup_chain_filtration(b, [[e], [e, r2], list(range(8))]), (-1, 0, 1))


def test_semi_hopf_s3():
    assert check_semi_hopf(S3)


def test_semi_hopf_trivial():
    assert check_semi_hopf(one_step_context(group_algebra(cyclic(1), QQ)))


def test_semi_hopf_d8_chain():
    assert check_semi_hopf(d8_chain_ctx())


def test_corrupted_delta_fails():
    b = s3_bialgebra()
    D = b.comult.rows()
    # Delta(g) = g (x) g + g (x) e breaks coassociativity and the counit law
    D = [list(r) for r in D]
    D[1 * 6 + 0][1] = 1
    bad = Bialgebra(b.algebra, Mat.from_rows(QQ, D, 6), b.counit)
    assert not check_semi_hopf(one_step_context(bad))


def test_unit_object():
    for ctx in (S3, C2, d8_chain_ctx()):
        U = unit_object(ctx)
        assert validate_rep(U)
        assert tensor_rep(U, U, ctx) == U
    # i^! of the extended unit is the trivial module
    V = fiber_ishriek(unit_object(S3))
    assert V.dim == 1 and all(a == Mat.identity(QQ, 1) for a in V.actions)


def test_standard_square_has_invariant_line():
    c = S3.companion()
    V = s3_standard_module()
    full = [(1, 0), (0, 1)]
    M = preglider(c, V, {-1: full, 0: full})
    T = tensor_rep(M, M, S3)
    assert T.dims[0] == 4
    els = s3_elements()
    A = c.algebra
    acts = [mat(T.act_elem(-1, 0, A.basis_vector(els.index(g)))) for g in [(1, 0, 2), (1, 2, 0)]]
    assert fixed_space_dim(acts) == 1


def test_dims_multiply():
    c = S3.companion()
    rng = random.Random(3)
    M, N = gen_rep(c, Seed(1, 6), rng), gen_rep(c, Seed(2, 6), rng)
    T = tensor_rep(M, N, S3)
    assert all(T.dims[o] == M.dims[o] * N.dims[o] for o in c.objects)


def test_identity_tensor_identity():
    c = S3.companion()
    M = gen_rep(c, Seed(5, 6), random.Random(5))
    N = gen_rep(c, Seed(6, 6), random.Random(6))
    assert tensor_mor(identity(M), identity(N), S3) == identity(tensor_rep(M, N, S3))


def test_coherence_maps_are_morphisms():
    c = S3.companion()
    rng = random.Random(9)
    M, N, P = (gen_rep(c, Seed(i, 5), rng) for i in range(3))
    assert validate_mor(associator(M, N, P, S3))
    assert validate_mor(left_unitor(M, S3)) and validate_mor(right_unitor(M, S3))


@given(seeds)
def test_functoriality(s):
    c = S3.companion()
    rng = random.Random(s)
    sd = Seed(s, 5)
    A, B, X = gen_rep(c, sd, rng), gen_rep(c, sd, rng), gen_rep(c, sd, rng)
    P, Q, Y = gen_rep(c, sd, rng), gen_rep(c, sd, rng), gen_rep(c, sd, rng)
    f1, f2 = gen_hom(A, B, rng, sd), gen_hom(B, X, rng, sd)
    g1, g2 = gen_hom(P, Q, rng, sd), gen_hom(Q, Y, rng, sd)
    lhs = tensor_mor(f2 @ f1, g2 @ g1, S3)
    rhs = tensor_mor(f2, g2, S3) @ tensor_mor(f1, g1, S3)
    assert lhs == rhs


@given(seeds)
def test_weak_iso_tensor_weak_iso(s):
    c = S3.companion()
    rng = random.Random(s)
    s1, s2 = gen_weak_iso(c, Seed(s, 6), rng), gen_weak_iso(c, Seed(s + 1, 6), rng)
    assert is_weak_iso(tensor_mor(s1, s2, S3))


@given(seeds)
def test_pregliders_closed_under_tensor(s):
    c = C2.companion()
    rng = random.Random(s)
    M, N = gen_preglider(c, Seed(s, 6), rng), gen_preglider(c, Seed(s, 6), rng)
    assert is_preglider(tensor_rep(M, N, C2))


@given(seeds)
def test_skyscraper_is_tensor_ideal(s):
    c = S3.companion()
    rng = random.Random(s)
    sky = skyscraper_istar(c, gen_module(c, Seed(s, 4), rng))
    M = gen_rep(c, Seed(s, 5), rng)
    T = tensor_rep(sky, M, S3)
    assert all(T.dims[l] == 0 for l in c.lam)


def test_tensor_over_foreign_companion_rejected():
    M = unit_object(S3)
    with pytest.raises(Exception):
        tensor_rep(M, unit_object(C2), S3)
