"""Prefragments, pregliders and gliders.

A preglider is a rep of the extended companion whose maps 1_{l,inf} are
injective; it is stored as a plain Rep.  Glider morphisms are stored as
morphisms of the restricted prefragments.  The ambient R-module of a
preglider is its value at inf.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactlin import (LinAlgError, Mat, Subspace, block_diag, image_basis, intersect, inverse,
                       is_invertible, kron, preimage, quotient, solve, subspace_sum)
from .filtalg import INF, Companion
from .repmod import (RModule, Rep, RepMor, cokernel_pointwise, hom_space, identity, image_pointwise,
                     kernel, pullback, quotient_rep, subrep)


class GliderError(ValueError):
    pass


def _lam(m: Rep) -> tuple:
    return m.companion.lam


def _need_extended(m: Rep):
    if not m.companion.extended:
        raise GliderError("expected a rep of the extended companion")


def _need_plain(m: Rep):
    if m.companion.extended:
        raise GliderError("expected a rep of the non-extended companion")


# predicates ---------------------------------------------------------------

def _injective(a: Mat) -> bool:
    return a.rank() == a.ncols


def is_preglider(m: Rep) -> bool:
    if not m.companion.extended:
        return False
    return all(_injective(m.unit_map(l, INF)) for l in _lam(m))


def is_prefragment(m: Rep) -> bool:
    lam = _lam(m)
    return all(_injective(m.unit_map(a, b)) for a in lam for b in lam if a <= b)


def is_noetherian(m: Rep) -> tuple[bool, int]:
    """Always true here; the certificate is the total dimension over the levels."""
    return True, m.total_dim(_lam(m))


# recollement --------------------------------------------------------------

def restrict_jstar(m: Rep) -> Rep:
    _need_extended(m)
    c = m.companion.restricted()
    return Rep(c, {o: m.dims[o] for o in c.objects}, {p: m.actions[p] for p in c.pairs})


def restrict_mor(f: RepMor) -> RepMor:
    return RepMor(restrict_jstar(f.source), restrict_jstar(f.target),
                  {o: f.comps[o] for o in _lam(f.source)})


def extend_jlowerstar(m: Rep) -> Rep:
    _need_plain(m)
    c = m.companion.with_infinity()
    f = c.field
    dims = dict(m.dims)
    dims[INF] = 0
    acts = {}
    for (a, b) in c.pairs:
        acts[(a, b)] = (m.actions[(a, b)] if b != INF
                        else [Mat.zeros(f, 0, dims[a])] * c.hom_dim(a, b))
    return Rep(c, dims, acts)


def skyscraper_istar(c: Companion, v: RModule) -> Rep:
    c = c.with_infinity()
    f = c.field
    dims = {o: 0 for o in c.objects}
    dims[INF] = v.dim
    acts = {}
    for (a, b) in c.pairs:
        if (a, b) == (INF, INF):
            acts[(a, b)] = [v.act(r) for r in c.hom_basis(INF, INF)]
        else:
            acts[(a, b)] = [Mat.zeros(f, dims[b], dims[a])] * c.hom_dim(a, b)
    return Rep(c, dims, acts)


def fiber_ishriek(m: Rep) -> RModule:
    _need_extended(m)
    c = m.companion
    A = c.algebra
    mats = [m.act_elem(INF, INF, A.basis_vector(i)) for i in range(A.dim)]
    return RModule(A, m.dims[INF], tuple(mats))


def _saturate(v: RModule, s: Subspace) -> Subspace:
    """Smallest R-submodule containing s."""
    while True:
        t = s
        for a in v.actions:
            t = subspace_sum(t, image_basis(a @ s.inclusion()) if s.dim else s)
        if t == s:
            return s
        s = t


def module_quotient(v: RModule, s: Subspace) -> tuple[RModule, Mat]:
    q = quotient(v.dim, s)
    return RModule(v.algebra, q.dim, tuple(q.projection @ a @ q.section for a in v.actions)), q.projection


def cofiber_iupperstar(m: Rep) -> RModule:
    _need_extended(m)
    v = fiber_ishriek(m)
    s = Subspace.zero(m.field, v.dim)
    for l in _lam(m):
        s = subspace_sum(s, image_basis(m.unit_map(l, INF)))
    return module_quotient(v, _saturate(v, s))[0]


@dataclass(frozen=True, eq=False)
class Induced:
    """j_!(m) with its presentation at inf: W = sum_l R (x) m(l), modulo relations."""

    source: Rep
    rep: Rep
    offsets: dict
    quot: object  # exactlin.Quotient
    relations: Subspace


def _induce(m: Rep) -> Induced:
    _need_plain(m)
    c = m.companion
    ce = c.with_infinity()
    A = c.algebra
    f = c.field
    n = A.dim
    lam = c.lam
    off, W = {}, 0
    for l in lam:
        off[l] = W
        W += n * m.dims[l]
    rels = []
    for a in lam:
        da = m.dims[a]
        for b in lam:
            if b < a or da == 0:
                continue
            db = m.dims[b]
            for r, R in zip(c.hom_basis(a, b), m.actions[(a, b)]):
                Rr = R.rows()
                for k in range(n):
                    kr = A.mul(A.basis_vector(k), r)
                    for j in range(da):
                        v = [0] * W
                        for l in range(db):
                            v[off[b] + k * db + l] += Rr[l][j]
                        for i in range(n):
                            v[off[a] + i * da + j] -= kr[i]
                        if any(x != 0 for x in v):
                            rels.append(v)
    relations = Subspace.span(f, rels, W)
    q = quotient(W, relations)
    # R acting on W by left multiplication on the first factor
    big = [block_diag(f, [kron(A._left[i], Mat.identity(f, m.dims[l])) for l in lam]) if W
           else Mat.zeros(f, 0, 0) for i in range(n)]
    dims = dict(m.dims)
    dims[INF] = q.dim
    acts = {}
    for (a, b) in ce.pairs:
        if b != INF:
            acts[(a, b)] = m.actions[(a, b)]
        elif a == INF:
            acts[(a, b)] = [q.projection @ _comb(f, big, r, W) @ q.section for r in ce.hom_basis(INF, INF)]
        else:
            da = m.dims[a]
            mats = []
            for r in ce.hom_basis(a, INF):
                rows = [[0] * da for _ in range(W)]
                for i in range(n):
                    if r[i] != 0:
                        for j in range(da):
                            rows[off[a] + i * da + j][j] += r[i]
                mats.append(q.projection @ Mat.from_rows(f, rows, da))
            acts[(a, b)] = mats
    return Induced(m, Rep(ce, dims, acts), off, q, relations)


def _comb(f, mats: Sequence[Mat], coeffs: Sequence, size: int) -> Mat:
    out = Mat.zeros(f, size, size)
    for c, m in zip(coeffs, mats):
        if c != 0:
            out = out + m.scale(c)
    return out


def induce_jshriek(m: Rep) -> Rep:
    return _induce(m).rep


# reflections --------------------------------------------------------------

def preglider_on(c: Companion, omega: Sequence[Mat], levels: dict) -> Rep:
    """Preglider with ambient module omega (matrices of the R basis) and level subspaces."""
    c = c.with_infinity()
    f = c.field
    N = omega[0].nrows if omega else 0

    def act(r):
        return _comb(f, omega, r, N)

    dims = {l: levels[l].dim for l in c.lam}
    dims[INF] = N
    acts = {}
    for (a, b) in c.pairs:
        E = levels[a].inclusion() if a != INF else Mat.identity(f, N)
        mats = []
        for r in c.hom_basis(a, b):
            img = act(r) @ E
            if b == INF:
                mats.append(img)
            else:
                try:
                    mats.append(levels[b].coords_matrix(img))
                except LinAlgError:
                    raise GliderError(f"levels not stable under {a}->{b}") from None
        acts[(a, b)] = mats
    return Rep(c, dims, acts)


def _omega(m: Rep) -> list[Mat]:
    A = m.companion.algebra
    return [m.act_elem(INF, INF, A.basis_vector(i)) for i in range(A.dim)]


def kappa(m: Rep) -> tuple[Rep, RepMor]:
    """Largest preglider quotient: levels replaced by their images at inf, with the unit."""
    _need_extended(m)
    levels = {l: image_basis(m.unit_map(l, INF)) for l in _lam(m)}
    k = preglider_on(m.companion, _omega(m), levels)
    comps = {l: levels[l].coords_matrix(m.unit_map(l, INF)) for l in _lam(m)}
    comps[INF] = Mat.identity(m.field, m.dims[INF])
    return k, RepMor(m, k, comps)


def kappa_mor(f: RepMor, src: Rep, tgt: Rep) -> RepMor:
    """kappa on f: m -> m', given the pregliders src = kappa(m), tgt = kappa(m')."""
    comps = {INF: f.comps[INF]}
    for l in _lam(src):
        X = solve(tgt.unit_map(l, INF), f.comps[INF] @ src.unit_map(l, INF))
        if X is None:
            raise GliderError("morphism does not respect the levels")
        comps[l] = X
    return RepMor(src, tgt, comps)


def theta(m: Rep) -> tuple[Rep, RepMor]:
    """Largest prefragment quotient, by fixpoint closure of the torsion part."""
    c = m.companion
    lam = c.lam
    S = {o: Subspace.zero(m.field, m.dims[o]) for o in c.objects}
    changed = True
    while changed:
        changed = False
        for a in lam:
            for b in lam:
                if b < a:
                    continue
                new = S[a]
                new = subspace_sum(new, preimage(m.unit_map(a, b), S[b]))
                if new != S[a]:
                    S[a] = new
                    changed = True
        for (a, b) in c.pairs:
            if S[a].dim == 0:
                continue
            new = S[b]
            for R in m.actions[(a, b)]:
                new = subspace_sum(new, image_basis(R @ S[a].inclusion()))
            if new != S[b]:
                S[b] = new
                changed = True
    return quotient_rep(m, S)


def glider_reflection(m: Rep) -> tuple[Rep, RepMor]:
    """kappa(j_!(m)) and the unit m -> j*(kappa(j_!(m)))."""
    J = induce_jshriek(m)
    k, u = kappa(J)
    unit = RepMor(m, restrict_jstar(k), {l: u.comps[l] for l in _lam(m)})
    return k, unit


def is_glider(m: Rep) -> bool:
    return is_preglider(induce_jshriek(m))


def adjoint_transpose(p: Rep, n: Rep, f: RepMor) -> RepMor:
    """For f: p -> j*(n) with n a preglider, the induced kappa(j_!(p)) -> n."""
    ind = _induce(p)
    c = n.companion
    A = c.algebra
    fld = n.field
    lam = c.lam
    cols = []
    for l in lam:
        F = f.comps[l]
        for i in range(A.dim):
            img = n.act_elem(l, INF, A.basis_vector(i)) @ F
            cols.extend(img.columns())
    W = ind.quot.ambient
    Phi = Mat.from_columns(fld, cols, n.dims[INF]) if W else Mat.zeros(fld, n.dims[INF], 0)
    g_inf = Phi @ ind.quot.section
    k, _ = kappa(ind.rep)
    comps = {INF: g_inf}
    for l in lam:
        E = k.unit_map(l, INF)  # level basis inside j_!(p)(inf)
        X = solve(n.unit_map(l, INF), g_inf @ E)
        if X is None:
            raise GliderError("transpose does not land in the levels")
        comps[l] = X
    return RepMor(k, n, comps)


def jL_mor(f: RepMor) -> RepMor:
    """j_L on a prefragment morphism f: p -> p'."""
    k2, u2 = glider_reflection(f.target)
    return adjoint_transpose(f.source, k2, u2 @ f)


def envelope_L(m: Rep) -> tuple[Rep, RepMor]:
    """L(m) = j_L(j*(m)) and the counit L(m) -> m, a weak isomorphism."""
    if not is_preglider(m):
        raise GliderError("envelope needs a preglider")
    p = restrict_jstar(m)
    eps = adjoint_transpose(p, m, identity(p))
    return eps.source, eps


# weak isomorphisms and roofs -----------------------------------------------

def is_weak_iso(f: RepMor) -> bool:
    return all(is_invertible(f.comps[l]) for l in _lam(f.source))


@dataclass(frozen=True, eq=False)
class Roof:
    apex: Rep
    s: RepMor  # apex -> source, weak iso
    g: RepMor  # apex -> target

    def __post_init__(self):
        if self.s.source != self.apex or self.g.source != self.apex:
            raise GliderError("roof legs must start at the apex")
        if not is_weak_iso(self.s):
            raise GliderError("left leg of a roof must be a weak isomorphism")

    @property
    def source(self) -> Rep:
        return self.s.target

    @property
    def target(self) -> Rep:
        return self.g.target


def identity_roof(m: Rep) -> Roof:
    return Roof(m, identity(m), identity(m))


def pullback_weak_iso(s: RepMor, f: RepMor) -> tuple[RepMor, RepMor]:
    """Complete s: A -> m (weak iso) and f: B -> m to a square; returns (t: P -> B, h: P -> A)."""
    if not is_weak_iso(s):
        raise GliderError("pullback along a morphism that is not a weak isomorphism")
    P, pa, pb = pullback(s, f)
    return pb, pa


def roof_compose(a: Roof, b: Roof) -> Roof:
    """b after a."""
    if a.target != b.source:
        raise GliderError("roofs are not composable")
    t, h = pullback_weak_iso(b.s, a.g)
    return Roof(t.source, a.s @ t, b.g @ h)


def roof_to_glider_mor(r: Roof) -> "GliderMor":
    comps = {l: r.g.comps[l] @ inverse(r.s.comps[l]) for l in _lam(r.apex)}
    return GliderMor(r.source, r.target,
                     RepMor(restrict_jstar(r.source), restrict_jstar(r.target), comps))


def roofs_equivalent(a: Roof, b: Roof) -> bool:
    """Witness a common refinement: pullback of the left legs, then an equalizer."""
    if a.source != b.source or a.target != b.target:
        return False
    P, u, v = pullback(a.s, b.s)
    d = a.g @ u - b.g @ v
    if not all(d.comps[l].is_zero() for l in _lam(P)):
        return False
    E, e = kernel(d)
    return is_weak_iso(a.s @ u @ e) and (a.g @ u @ e) == (b.g @ v @ e)


# glider morphisms ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GliderMor:
    source: Rep
    target: Rep
    data: RepMor

    def __post_init__(self):
        if self.data.source != restrict_jstar(self.source) or self.data.target != restrict_jstar(self.target):
            raise GliderError("glider morphism data must go between the restrictions")

    def __matmul__(self, other: "GliderMor") -> "GliderMor":
        return GliderMor(other.source, self.target, self.data @ other.data)

    def __eq__(self, other):
        return isinstance(other, GliderMor) and self.data == other.data

    def __hash__(self):
        return hash(self.data)


def glider_mor(f: RepMor) -> GliderMor:
    """Q(f) for a morphism of pregliders."""
    return GliderMor(f.source, f.target, restrict_mor(f))


def glid_identity(m: Rep) -> GliderMor:
    return GliderMor(m, m, identity(restrict_jstar(m)))


def glid_hom(m: Rep, n: Rep) -> list[GliderMor]:
    return [GliderMor(m, n, d) for d in hom_space(restrict_jstar(m), restrict_jstar(n))]


def realize_roof(f: GliderMor) -> Roof:
    m, n = f.source, f.target
    p = restrict_jstar(m)
    s = adjoint_transpose(p, m, identity(p))
    g = adjoint_transpose(p, n, f.data)
    return Roof(s.source, s, g)


# explicit (co)kernels in Preglid -------------------------------------------

def ker_preglid(f: RepMor) -> tuple[Rep, RepMor]:
    return kernel(f)


def coker_preglid(f: RepMor) -> tuple[Rep, RepMor]:
    n = f.target
    q = quotient(n.dims[INF], image_basis(f.comps[INF]))
    omega = [q.projection @ a @ q.section for a in _omega(n)]
    levels = {l: image_basis(q.projection @ n.unit_map(l, INF)) for l in _lam(n)}
    C = preglider_on(n.companion, omega, levels)
    comps = {INF: q.projection}
    for l in _lam(n):
        comps[l] = levels[l].coords_matrix(q.projection @ n.unit_map(l, INF))
    return C, RepMor(n, C, comps)


def im_preglid(f: RepMor) -> tuple[Rep, RepMor]:
    n = f.target
    im_inf = image_basis(f.comps[INF])
    subs = {l: preimage(n.unit_map(l, INF), im_inf) for l in _lam(n)}
    subs[INF] = im_inf
    return subrep(n, subs)


def coim_preglid(f: RepMor) -> tuple[Rep, RepMor]:
    I, inc = image_pointwise(f)
    comps = {o: (Subspace.span(f.source.field, inc.comps[o].columns(), f.target.dims[o])
                 if I.dims[o] else Subspace.zero(f.source.field, f.target.dims[o])).coords_matrix(f.comps[o])
             for o in f.companion.objects}
    return I, RepMor(f.source, I, comps)


def is_deflation_preglid(f: RepMor) -> bool:
    return f.is_surjective()


def is_inflation_preglid(f: RepMor) -> bool:
    """Injective, and each level is everything mapping into the image at inf."""
    if not f.is_injective():
        return False
    I, _ = im_preglid(f)
    return all(I.dims[o] == f.source.dims[o] for o in f.companion.objects)


# (co)kernels and exact structure in Glid ------------------------------------

def ker_glid(f: GliderMor) -> tuple[Rep, GliderMor]:
    K, inc = kernel(f.data)
    Kb, u = glider_reflection(K)
    if not u.is_iso():
        raise GliderError("kernel of prefragments failed to be a glider")
    inv = RepMor(u.target, u.source, {l: inverse(u.comps[l]) for l in _lam(K)})
    return Kb, GliderMor(Kb, f.source, inc @ inv)


def coker_glid(f: GliderMor) -> tuple[Rep, GliderMor]:
    C, p = cokernel_pointwise(f.data)
    Cb, u = glider_reflection(C)
    return Cb, GliderMor(f.target, Cb, u @ p)


def is_deflation_glid(f: GliderMor) -> bool:
    return f.data.is_surjective()


def is_inflation_glid(f: GliderMor) -> bool:
    if not f.data.is_injective():
        return False
    _, c = coker_glid(f)
    _, k = ker_glid(c)
    for l in _lam(f.source):
        X = solve(k.data.comps[l], f.data.comps[l])
        if X is None or not is_invertible(X):
            return False
    return True


def is_conflation_glid(f: GliderMor, g: GliderMor) -> bool:
    if f.target is not g.source and f.target != g.source:
        raise GliderError("morphisms are not composable")
    for l in _lam(f.source):
        a, b = f.data.comps[l], g.data.comps[l]
        if a.rank() != a.ncols or b.rank() != b.nrows:
            return False
        if not (b @ a).is_zero() or a.ncols + b.nrows != a.nrows:
            return False
    return True


# natural gliders ----------------------------------------------------------

def naturalize(m: Rep) -> tuple[Rep, RepMor]:
    """nu(rho(m)) with the unit m -> nu(rho(m)); levels are cut out inside m(inf)."""
    if not is_preglider(m):
        raise GliderError("naturalize needs a preglider")
    c = m.companion
    top = max(c.lam)
    F = c.filtration
    N = m.dims[INF]
    target = image_basis(m.unit_map(top, INF))
    levels = {}
    for l in c.lam:
        V = Subspace.full(m.field, N)
        for r in F.layer(top - l).vectors():
            V = intersect(V, preimage(m.act_elem(INF, INF, r), target))
        levels[l] = V
    nm = preglider_on(c, _omega(m), levels)
    comps = {l: levels[l].coords_matrix(m.unit_map(l, INF)) for l in c.lam}
    comps[INF] = Mat.identity(m.field, N)
    return nm, RepMor(m, nm, comps)


def is_natural(m: Rep) -> bool:
    nm, _ = naturalize(m)
    return all(nm.dims[l] == m.dims[l] for l in _lam(m))
