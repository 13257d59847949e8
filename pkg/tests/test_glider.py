import random

import pytest
from hypothesis import given, strategies as st

from gliders.exactlin import QQ, Field, Mat
from gliders.filtalg import INF
from gliders.fixtures import easy_gliders, kt_natural, left_adjoint_not_exact, regular_module, s3_standard
from gliders.glider import (GliderError, GliderMor, Roof, coim_preglid, coker_glid, coker_preglid,
                            cofiber_iupperstar, envelope_L, extend_jlowerstar, fiber_ishriek, glid_hom,
                            glid_identity, glider_mor, glider_reflection, identity_roof, im_preglid,
                            induce_jshriek, is_conflation_glid, is_deflation_glid, is_glider,
                            is_inflation_glid, is_natural, is_noetherian, is_preglider, is_prefragment,
                            is_weak_iso, kappa, ker_glid, ker_preglid, naturalize, pullback_weak_iso,
                            realize_roof, restrict_jstar, roof_compose, roof_to_glider_mor, roofs_equivalent,
                            skyscraper_istar, theta)
from gliders.laws import Seed, gen_prefragment, gen_preglider, kt_degree, oracle_check, s3_one_step
from gliders.repmod import (Rep, direct_sum, find_isomorphism, identity, standard_projective, validate_mor,
                            validate_rep, zero_mor, zero_rep)
from oracles import is_glider_oracle, jshriek_inf_dim

EXT = [s3_one_step(QQ, True), kt_degree(3, QQ, (-1, 0), True), kt_degree(3, Field(5), (-2, -1, 0), True)]
seeds = st.integers(0, 10 ** 6)
which = st.integers(0, len(EXT) - 1)


def zeros_at(m, objs):
    return all(m.dims[o] == 0 for o in objs)


# predicates and recollement functors

def test_zero_and_projectives_are_pregliders():
    c = s3_one_step()
    assert is_preglider(zero_rep(c)) and is_prefragment(zero_rep(c.restricted()))
    for l in c.objects:
        assert is_preglider(standard_projective(c, l))
        assert is_prefragment(standard_projective(c.restricted(), l)) if l != INF else True


def test_zero_structure_map_not_preglider():
    c = s3_one_step()
    P = standard_projective(c, 0)
    acts = {p: [m.scale(0) if p[1] == INF and p[0] != INF else m for m in P.actions[p]] for p in c.pairs}
    acts[(0, 0)] = P.actions[(0, 0)]
    assert not is_preglider(Rep(c, P.dims, acts))


def test_restrict_jstar():
    c = s3_one_step()
    V = regular_module(c.algebra)
    assert zeros_at(restrict_jstar(skyscraper_istar(c, V)), c.lam)
    for l in c.lam:
        assert restrict_jstar(standard_projective(c, l)) == standard_projective(c.restricted(), l)
    assert restrict_jstar(zero_rep(c)) == zero_rep(c.restricted())
    with pytest.raises(GliderError):
        restrict_jstar(zero_rep(c.restricted()))


def test_skyscraper_round_trips():
    c = s3_one_step()
    V = regular_module(c.algebra)
    sky = skyscraper_istar(c, V)
    assert fiber_ishriek(sky) == V
    assert cofiber_iupperstar(sky) == V
    assert cofiber_iupperstar(standard_projective(c, 0)).dim == 0
    assert extend_jlowerstar(restrict_jstar(standard_projective(c, -1))).dims[INF] == 0


def test_jshriek_examples():
    c = s3_one_step()
    for l in c.lam:
        J = induce_jshriek(standard_projective(c.restricted(), l))
        assert find_isomorphism(J, standard_projective(c, l)) is not None
    assert induce_jshriek(zero_rep(c.restricted())).total_dim() == 0
    S = s3_standard().objects["S"]
    assert induce_jshriek(S).dims[INF] == jshriek_inf_dim(S) == 0


def test_kappa_examples():
    c = s3_one_step()
    P = standard_projective(c, -1)
    k, u = kappa(P)
    assert k == P and u.is_iso()
    sky = skyscraper_istar(c, regular_module(c.algebra))
    assert kappa(sky)[0] == sky
    # kill the structure maps into inf: kappa gives zero levels
    acts = {p: [m.scale(0) if (p[1] == INF) != (p[0] == INF) else m for m in P.actions[p]] for p in c.pairs}
    assert zeros_at(kappa(Rep(c, P.dims, acts))[0], c.lam)


def test_theta_examples():
    c = s3_one_step(QQ, False)
    P = standard_projective(c, 0)
    t, u = theta(P)
    assert t == P and u.is_iso()
    # k at level -1, zero at level 0: the pullback closure kills level -1
    acts = {p: [Mat.zeros(QQ, 0 if p[1] == 0 else 1, 0 if p[0] == 0 else 1).scale(0) if p != (-1, -1)
                else Mat.identity(QQ, 1)] * c.hom_dim(*p) for p in c.pairs}
    m = Rep(c, {-1: 1, 0: 0}, acts)
    assert validate_rep(m) and theta(m)[0].dims[-1] == 0
    # concentrated at the top level: already a prefragment
    top = Rep(c, {-1: 0, 0: 1}, {p: [Mat.identity(QQ, 1) if p == (0, 0)
                                     else Mat.zeros(QQ, 1 if p[1] == 0 else 0, 0)] * c.hom_dim(*p)
                                 for p in c.pairs})
    assert theta(top)[1].is_iso()


def test_glider_reflection_examples():
    e = s3_standard()
    S = e.objects["S"]
    G, u = glider_reflection(S)
    assert G.total_dim() == 0
    M = restrict_jstar(e.objects["M"])
    G, u = glider_reflection(M)
    assert u.is_iso()
    c = s3_one_step()
    P = standard_projective(c.restricted(), 0)
    assert find_isomorphism(glider_reflection(P)[0], standard_projective(c, 0)) is not None


def test_is_glider_examples():
    e = s3_standard()
    assert is_glider(restrict_jstar(e.objects["M"]))
    assert is_glider(restrict_jstar(e.objects["N"]))
    assert not is_glider(e.objects["S"])
    assert is_glider(zero_rep(s3_one_step(QQ, False)))


def test_envelope_examples():
    c = s3_one_step()
    P = standard_projective(c, 0)
    L, eps = envelope_L(P)
    assert eps.is_iso()
    e = easy_gliders()
    L, eps = envelope_L(e.objects["M"])
    assert L.dims[INF] == 2 and is_weak_iso(eps)
    assert eps.comps[INF] == Mat.from_rows(QQ, [[1, 0]])
    sky = skyscraper_istar(c, regular_module(c.algebra))
    L, eps = envelope_L(sky)
    assert L.total_dim() == 0


def test_roofs():
    e = easy_gliders()
    M, N, s = e.objects["M"], e.objects["N"], e.morphisms["s"]
    assert roofs_equivalent(roof_compose(identity_roof(M), identity_roof(M)), identity_roof(M))
    a = Roof(N, s, identity(N))          # M <- P -> N
    b = Roof(N, identity(N), s)          # N <- P -> M
    assert roofs_equivalent(roof_compose(a, b), identity_roof(M))
    assert roof_to_glider_mor(roof_compose(a, b)) == glid_identity(M)
    bad = zero_mor(N, M)
    assert not is_weak_iso(bad)
    with pytest.raises(GliderError):
        pullback_weak_iso(bad, s)


def test_glid_hom_easy():
    e = easy_gliders()
    M, N = e.objects["M"], e.objects["N"]
    assert len(glid_hom(M, N)) == 1
    assert glid_identity(M) in glid_hom(M, M)
    r = realize_roof(glid_identity(M))
    assert is_weak_iso(r.s) and is_weak_iso(r.g)


def test_formulas_on_identity():
    P = standard_projective(s3_one_step(), -1)
    f = identity(P)
    assert ker_preglid(f)[0].total_dim() == 0 and coker_preglid(f)[0].total_dim() == 0
    assert im_preglid(f)[0] == P and coim_preglid(f)[0] == P


def test_left_adjoint_not_exact_kernel():
    e = left_adjoint_not_exact(4)
    g = e.morphisms["g"]
    K, k = ker_preglid(g)
    # levels: t k[t] inside the level k[t]; ambient t R
    assert K.dims == {0: 3, INF: 3}
    assert all(oracle_check(g).values())


def test_s3_coker_preglid_shape():
    e = s3_standard()
    C, p = coker_preglid(e.morphisms["f"])
    # f is the identity at inf, so every level maps into coker f_inf = 0
    assert C.dims == {-1: 0, 0: 0, INF: 0}
    assert e.objects["S"].dims == {-1: 1, 0: 1}


def test_glid_cokernel_examples():
    e = s3_standard()
    C, _ = coker_glid(glider_mor(e.morphisms["f"]))
    assert zeros_at(C, C.companion.lam)
    P = standard_projective(s3_one_step(), 0)
    K, _ = ker_glid(glid_identity(P))
    assert zeros_at(K, K.companion.lam)
    Z = zero_rep(P.companion)
    C, q = coker_glid(glider_mor(zero_mor(Z, P)))
    assert q.data.is_iso()


def test_split_sequence_is_conflation():
    c = s3_one_step()
    A, B = standard_projective(c, -1), standard_projective(c, 0)
    S, incs, projs = direct_sum([A, B])
    f, g = glider_mor(incs[0]), glider_mor(projs[1])
    assert is_conflation_glid(f, g)
    assert is_inflation_glid(f) and is_deflation_glid(g)


def test_noetherian_certificate():
    e = s3_standard()
    assert is_noetherian(e.objects["N"]) == (True, 3)
    assert is_noetherian(zero_rep(s3_one_step())) == (True, 0)


def test_kt_natural_example():
    e = kt_natural(4)
    M, N, f = e.objects["M"], e.objects["N"], e.morphisms["f"]
    assert is_natural(M) and is_natural(N)
    C, _ = coker_preglid(f)
    assert not is_natural(C)


def test_naturalize_idempotent_and_skyscraper():
    c = kt_natural(4).companion
    sky = skyscraper_istar(c, regular_module(c.algebra))
    assert is_natural(sky)
    N = kt_natural(4).objects["N"]
    nn = naturalize(N)[0]
    assert naturalize(nn)[0] == nn


# properties on random instances

def rnd(s, tag):
    return random.Random(f"{s}:{tag}")


@given(which, seeds)
def test_is_glider_matches_oracle(k, s):
    c = EXT[k].restricted()
    m = gen_prefragment(c, Seed(s, 8), rnd(s, "p"))
    assert is_glider(m) == is_glider_oracle(m, c.field.p)


@given(which, seeds)
def test_kappa_reflection_law(k, s):
    c = EXT[k]
    m = gen_preglider(c, Seed(s, 8), rnd(s, "k"))
    K, u = kappa(m)
    assert K == m and u.is_iso()


@given(which, seeds)
def test_glider_reflection_unit_levelwise_surjective(k, s):
    c = EXT[k].restricted()
    m = gen_prefragment(c, Seed(s, 8), rnd(s, "g"))
    G, u = glider_reflection(m)
    assert is_preglider(G) and validate_mor(u) and u.is_surjective()
    assert is_glider(restrict_jstar(G))


@given(which, seeds)
def test_recollement_identities(k, s):
    c = EXT[k]
    m = gen_preglider(c, Seed(s, 8), rnd(s, "r"))
    j = restrict_jstar(m)
    assert restrict_jstar(induce_jshriek(j)) == j
    assert restrict_jstar(extend_jlowerstar(j)) == j
    V = fiber_ishriek(m)
    sky = skyscraper_istar(c, V)
    assert zeros_at(restrict_jstar(sky), c.lam)
    assert fiber_ishriek(sky) == V and cofiber_iupperstar(sky) == V


@given(which, seeds)
def test_naturalize_properties(k, s):
    c = EXT[k]
    m = gen_preglider(c, Seed(s, 8), rnd(s, "n"))
    nm, u = naturalize(m)
    assert validate_mor(u) and is_natural(nm) and naturalize(nm)[0] == nm


@given(which, seeds)
def test_glider_kernels_are_gliders(k, s):
    c = EXT[k]
    M = gen_preglider(c, Seed(s, 8), rnd(s, "a"))
    N = gen_preglider(c, Seed(s, 8), rnd(s, "b"))
    basis = glid_hom(M, N)
    rng = rnd(s, "c")
    if basis:
        d = basis[0].data
        for b in basis[1:]:
            d = d + b.data.scale(rng.randrange(-2, 3))
        K, kk = ker_glid(GliderMor(M, N, d))
        assert is_glider(restrict_jstar(K))
