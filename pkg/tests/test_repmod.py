import json
import random

import pytest
from hypothesis import given, strategies as st

from gliders.exactlin import QQ, Field, Mat, Subspace, solve
from gliders.filtalg import INF
from gliders.fixtures import easy_gliders, left_adjoint_not_exact, s3_standard
from gliders.laws import Seed, gen_hom, gen_rep, kt_degree, s3_one_step
from gliders.repmod import (Rep, RepError, cokernel_pointwise, evaluation_deflation, factor_through,
                            hom_space, identity, is_projective, kernel, lift_through, mor_from_json,
                            pullback, rep_from_json, standard_projective, validate_mor, validate_rep,
                            zero_mor, zero_rep)
from oracles import hom_dim

COMPANIONS = [s3_one_step(QQ, True), s3_one_step(QQ, False), kt_degree(3, QQ, (-1, 0), True),
              kt_degree(3, Field(5), (-2, -1, 0), False)]
seeds = st.integers(0, 10 ** 6)
which = st.integers(0, len(COMPANIONS) - 1)
SMALL = 8


def rand_rep(c, s, tag="a"):
    return gen_rep(c, Seed(s, SMALL), random.Random(f"{s}:{tag}"))


def test_zero_rep_valid():
    assert validate_rep(zero_rep(s3_one_step()))


@pytest.mark.parametrize("k", range(len(COMPANIONS)))
def test_standard_projectives_valid(k):
    c = COMPANIONS[k]
    for l in c.objects:
        P = standard_projective(c, l)
        assert validate_rep(P)
        assert is_projective(P)


def test_broken_identity_law():
    c = s3_one_step(QQ, False)
    P = standard_projective(c, -1)
    acts = dict(P.actions)
    acts[(-1, -1)] = [P.actions[(-1, -1)][0].scale(2)]
    assert not validate_rep(Rep(c, P.dims, acts))


def test_standard_projective_one_object_is_layer_zero():
    c = left_adjoint_not_exact(4).companion.restricted()  # F_0 = k[t]/(t^4) inside k[t,x]/(xt)
    P = standard_projective(c, 0)
    assert P.dims[0] == c.filtration.layer(0).dim == 4
    # actions are left multiplication of F_0 on itself
    for r, R in zip(c.hom_basis(0, 0), P.actions[(0, 0)]):
        for j, x in enumerate(c.hom_basis(0, 0)):
            assert c.coords(0, 0, c.algebra.mul(r, x)) == R.col(j)


def test_standard_projective_dims_s3():
    P = standard_projective(s3_one_step(QQ, True), 0)
    assert P.dims[INF] == 6
    Q = standard_projective(s3_one_step(QQ, False), -1)
    assert Q.dims[0] == 6 and Q.dims[-1] == 1


def test_unknown_object_is_error():
    with pytest.raises(Exception):
        standard_projective(s3_one_step(QQ, False), 5)


def test_easy_gliders_preglid_hom_vanishes():
    e = easy_gliders()
    assert hom_space(e.objects["M"], e.objects["N"]) == []


def test_kernel_of_identity_and_cokernel_of_zero():
    c = s3_one_step()
    P = standard_projective(c, -1)
    K, _ = kernel(identity(P))
    assert all(d == 0 for d in K.dims.values())
    C, p = cokernel_pointwise(zero_mor(zero_rep(c), P))
    assert C == P and p.is_iso()


def test_kernel_of_s3_deflation():
    e = s3_standard()
    g = e.morphisms["g_frag"]
    K, k = kernel(g)
    assert K.dims == {-1: 0, 0: 1}
    assert Subspace.span(QQ, k.comps[0].columns(), 2) == Subspace.span(QQ, [[1, 0]], 2)


def test_evaluation_deflation_examples():
    c = s3_one_step(QQ, False)
    P = standard_projective(c, 0)
    e = evaluation_deflation(P)
    s, _ = lift_through(e, identity(P))
    assert s is not None
    z = evaluation_deflation(zero_rep(c))
    assert z.source.total_dim() == 0
    S = s3_standard().objects["S"]
    assert evaluation_deflation(S).is_surjective()
    assert is_projective(zero_rep(c))
    assert not is_projective(S)


def test_companion_mismatch_error():
    a = standard_projective(s3_one_step(QQ, False), 0)
    b = standard_projective(kt_degree(3, QQ, (-1, 0), False), 0)
    with pytest.raises(RepError):
        hom_space(a, b)


def test_json_round_trip():
    e = s3_standard()
    N, f = e.objects["N"], e.morphisms["f"]
    N2 = rep_from_json(N.companion, json.loads(json.dumps(N.to_json())))
    assert N2 == N
    f2 = mor_from_json(f.source, f.target, json.loads(json.dumps(f.to_json())))
    assert f2 == f


@given(which, seeds)
def test_generated_reps_valid(k, s):
    assert validate_rep(rand_rep(COMPANIONS[k], s))


@given(which, seeds)
def test_yoneda(k, s):
    c = COMPANIONS[k]
    n = rand_rep(c, s)
    for l in c.objects:
        assert len(hom_space(standard_projective(c, l), n)) == n.dims[l]


@given(which, seeds)
def test_hom_dim_matches_naive(k, s):
    c = COMPANIONS[k]
    m, n = rand_rep(c, s, "a"), rand_rep(c, s, "b")
    basis = hom_space(m, n)
    assert len(basis) == hom_dim(m, n, c.field.p)
    assert all(validate_mor(b) for b in basis)
    if m == n:
        assert factor_through(identity(m), identity(m))[0] is not None


@given(which, seeds)
def test_hom_contains_identity_and_composes(k, s):
    c = COMPANIONS[k]
    m, n = rand_rep(c, s, "a"), rand_rep(c, s, "b")
    vecs = [b.vector() for b in hom_space(m, m)]
    idv = identity(m).vector()
    if idv:
        assert solve(Mat.from_columns(c.field, vecs, len(idv)), Mat.column(c.field, idv)) is not None
    rng = random.Random(s)
    f = gen_hom(m, n, rng, Seed(s))
    g = gen_hom(n, m, rng, Seed(s))
    assert validate_mor(g @ f) and validate_mor(f @ g)


@given(which, seeds)
def test_kernel_universal(k, s):
    c = COMPANIONS[k]
    rng = random.Random(s)
    m, n, x = rand_rep(c, s, "a"), rand_rep(c, s, "b"), rand_rep(c, s, "c")
    f = gen_hom(m, n, rng, Seed(s))
    K, i = kernel(f)
    assert validate_rep(K) and validate_mor(i) and (f @ i).is_zero()
    for t in hom_space(x, m):
        if (f @ t).is_zero():
            u, unique = lift_through(i, t)
            assert u is not None and unique and i @ u == t


@given(which, seeds)
def test_cokernel_universal(k, s):
    c = COMPANIONS[k]
    rng = random.Random(s)
    m, n, x = rand_rep(c, s, "a"), rand_rep(c, s, "b"), rand_rep(c, s, "c")
    f = gen_hom(m, n, rng, Seed(s))
    C, p = cokernel_pointwise(f)
    assert validate_rep(C) and (p @ f).is_zero()
    for t in hom_space(n, x):
        if (t @ f).is_zero():
            u, unique = factor_through(p, t)
            assert u is not None and unique and u @ p == t


@given(which, seeds)
def test_evaluation_deflation_surjective(k, s):
    m = rand_rep(COMPANIONS[k], s)
    assert evaluation_deflation(m).is_surjective()


@given(which, seeds)
def test_pullback_square(k, s):
    c = COMPANIONS[k]
    rng = random.Random(s)
    a, b, x = rand_rep(c, s, "a"), rand_rep(c, s, "b"), rand_rep(c, s, "c")
    f, g = gen_hom(a, x, rng, Seed(s)), gen_hom(b, x, rng, Seed(s))
    P, pa, pb = pullback(f, g)
    assert validate_rep(P) and f @ pa == g @ pb
