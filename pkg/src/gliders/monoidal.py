"""Pointwise tensor products of representations over bialgebra filtrations."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .exactlin import Mat, kron
from .filtalg import (AlgebraError, Bialgebra, Companion, Filtration, _tensor_mult, companion,
                      obj_le, one_step_filtration, tensor_subspace, validate_filtration)
from .repmod import Rep, RepError, RepMor


class TensorError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TensorContext:
    bialgebra: Bialgebra
    filtration: Filtration
    lam: tuple = (-1, 0)
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.filtration.algebra != self.bialgebra.algebra:
            raise TensorError("filtration and bialgebra live on different algebras")
        if not validate_filtration(self.filtration):
            raise TensorError("filtration fails validation")
        lo, hi = self.filtration.window
        b = self.bialgebra
        for d in range(lo, hi + 2):
            V = self.filtration.layer(d)
            VV = tensor_subspace(V, V)
            if any(not VV.contains(b.delta(x)) for x in V.vectors()):
                raise TensorError(f"comultiplication does not preserve layer {d}")

    def companion(self, extended: bool = True, lam: Sequence[int] | None = None) -> Companion:
        key = (tuple(lam or self.lam), extended)
        if key not in self._cache:
            self._cache[key] = companion(self.filtration, key[0], extended)
        return self._cache[key]

    def delta_coords(self, c: Companion, a, b) -> list[Mat]:
        """For each basis element r of hom(a,b), the matrix C with Delta(r) = sum C_ij r_i (x) r_j."""
        key = ("delta", c.lam, c.extended, a, b)
        if key in self._cache:
            return self._cache[key]
        H = c.hom(a, b)
        n = c.algebra.dim
        piv = H.pivots
        out = []
        for r in H.vectors():
            d = self.bialgebra.delta(r)
            C = [[d[p * n + q] for q in piv] for p in piv]
            # rebuild and compare: fails if Delta(r) leaves hom (x) hom
            back = [0] * (n * n)
            for i, ri in enumerate(H.vectors()):
                for j, rj in enumerate(H.vectors()):
                    if C[i][j] != 0:
                        for p in range(n):
                            if ri[p] != 0:
                                for q in range(n):
                                    back[p * n + q] += C[i][j] * ri[p] * rj[q]
            if [c.field.scalar(x) for x in back] != [c.field.scalar(x) for x in d]:
                raise TensorError(f"Delta of a basis element of hom({a},{b}) leaves hom (x) hom")
            out.append(Mat.from_rows(c.field, C, len(piv)) if piv else Mat.zeros(c.field, 0, 0))
        self._cache[key] = out
        return out


def one_step_context(b: Bialgebra, lam=(-1, 0)) -> TensorContext:
    return TensorContext(b, one_step_filtration(b.algebra), tuple(lam))


def check_semi_hopf(ctx: TensorContext, lam: Sequence[int] | None = None) -> bool:
    """Hom-spaces are subcoalgebras and composition is a coalgebra map, on basis pairs."""
    try:
        c = ctx.companion(True, lam)
    except AlgebraError:
        return False
    b = ctx.bialgebra
    A = b.algebra
    f = A.field
    n = A.dim
    m2 = _tensor_mult(A)
    I = Mat.identity(f, n)
    D, e = b.comult, b.counit
    objs = c.objects
    for (x, y) in c.pairs:
        H = c.hom(x, y)
        HH = tensor_subspace(H, H)
        for r in H.vectors():
            col = Mat.column(f, r)
            d = D @ col
            if not HH.contains(d.col(0)):
                return False
            if kron(D, I) @ d != kron(I, D) @ d:
                return False
            if kron(e, I) @ d != col or kron(I, e) @ d != col:
                return False
    for a in objs:
        for bb in objs:
            for cc in objs:
                if not (obj_le(a, bb) and obj_le(bb, cc)):
                    continue
                for s in c.hom_basis(bb, cc):
                    for r in c.hom_basis(a, bb):
                        sr = Mat.column(f, A.mul(s, r))
                        ds, dr = D @ Mat.column(f, s), D @ Mat.column(f, r)
                        if D @ sr != m2 @ kron(ds, dr):
                            return False
                        if (e @ sr)[0, 0] != b.eps(s) * b.eps(r):
                            return False
    return True


def tensor_rep(m: Rep, n: Rep, ctx: TensorContext) -> Rep:
    c = m.companion
    if n.companion != c:
        raise RepError("tensor factors live over different companions")
    if c.filtration != ctx.filtration:
        raise TensorError("companion does not come from the context filtration")
    dims = {o: m.dims[o] * n.dims[o] for o in c.objects}
    acts = {}
    for (a, b) in c.pairs:
        Ms, Ns = m.actions[(a, b)], n.actions[(a, b)]
        mats = []
        for C in ctx.delta_coords(c, a, b):
            out = Mat.zeros(c.field, dims[b], dims[a])
            rows = C.rows()
            for i, row in enumerate(rows):
                for j, x in enumerate(row):
                    if x != 0:
                        out = out + kron(Ms[i], Ns[j]).scale(x)
            mats.append(out)
        acts[(a, b)] = mats
    return Rep(c, dims, acts)


def unit_object(ctx: TensorContext, c: Companion | None = None) -> Rep:
    c = c or ctx.companion(True)
    b = ctx.bialgebra
    f = c.field
    dims = {o: 1 for o in c.objects}
    acts = {p: [Mat.from_rows(f, [[b.eps(r)]], 1) for r in c.hom_basis(*p)] for p in c.pairs}
    return Rep(c, dims, acts)


def tensor_mor(f: RepMor, g: RepMor, ctx: TensorContext) -> RepMor:
    src = tensor_rep(f.source, g.source, ctx)
    tgt = tensor_rep(f.target, g.target, ctx)
    return RepMor(src, tgt, {o: kron(f.comps[o], g.comps[o]) for o in f.companion.objects})


def associator(m: Rep, n: Rep, p: Rep, ctx: TensorContext) -> RepMor:
    """((m (x) n) (x) p) -> (m (x) (n (x) p)): the Kronecker reassociation, i.e. identity matrices."""
    left = tensor_rep(tensor_rep(m, n, ctx), p, ctx)
    right = tensor_rep(m, tensor_rep(n, p, ctx), ctx)
    return RepMor(left, right, {o: Mat.identity(m.field, left.dims[o]) for o in m.companion.objects})


def left_unitor(m: Rep, ctx: TensorContext) -> RepMor:
    u = unit_object(ctx, m.companion)
    return RepMor(tensor_rep(u, m, ctx), m, {o: Mat.identity(m.field, m.dims[o]) for o in m.companion.objects})


def right_unitor(m: Rep, ctx: TensorContext) -> RepMor:
    u = unit_object(ctx, m.companion)
    return RepMor(tensor_rep(m, u, ctx), m, {o: Mat.identity(m.field, m.dims[o]) for o in m.companion.objects})
