"""Representations of companion categories and their morphisms."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .exactlin import (Field, LinAlgError, Mat, Subspace, block_diag, image_basis, inverse,
                       is_invertible, kernel_basis, quotient, solve)
from .filtalg import INF, Algebra, Companion


class RepError(ValueError):
    pass


def obj_key(o) -> str:
    return str(o)


def parse_obj(s):
    return INF if str(s) in ("inf", "∞") else int(s)


class Rep:
    """Dimension per object, one action matrix per hom-basis element."""

    __slots__ = ("companion", "dims", "actions", "_hash")

    def __init__(self, companion: Companion, dims: dict, actions: dict):
        self.companion = companion
        self.dims = {o: int(dims[o]) for o in companion.objects}
        self.actions = {p: tuple(actions[p]) for p in companion.pairs}
        self._hash = None
        f = companion.field
        for (a, b), mats in self.actions.items():
            if len(mats) != companion.hom_dim(a, b):
                raise RepError(f"wrong number of action matrices on {a}->{b}")
            for m in mats:
                if m.field != f or m.shape != (self.dims[b], self.dims[a]):
                    raise RepError(f"action on {a}->{b} has wrong shape")

    @property
    def field(self) -> Field:
        return self.companion.field

    def space(self, o) -> int:
        return self.dims[o]

    def action(self, a, b, i: int) -> Mat:
        return self.actions[(a, b)][i]

    def act(self, a, b, coords: Sequence) -> Mat:
        """Action of the hom(a,b) element with the given coordinates."""
        out = Mat.zeros(self.field, self.dims[b], self.dims[a])
        for c, m in zip(coords, self.actions[(a, b)]):
            if c != 0:
                out = out + m.scale(c)
        return out

    def act_elem(self, a, b, r: Sequence) -> Mat:
        return self.act(a, b, self.companion.coords(a, b, r))

    def unit_map(self, a, b) -> Mat:
        """Action of 1_{a,b}."""
        return self.act(a, b, self.companion.unit_coords(a, b))

    def total_dim(self, objs=None) -> int:
        objs = self.companion.objects if objs is None else objs
        return sum(self.dims[o] for o in objs)

    def __eq__(self, other):
        if not isinstance(other, Rep):
            return NotImplemented
        return (self.companion == other.companion and self.dims == other.dims
                and self.actions == other.actions)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(sorted(self.dims.items(), key=str)),
                               tuple(self.actions[p] for p in self.companion.pairs)))
        return self._hash

    def __repr__(self):
        return "Rep(" + ", ".join(f"{o}:{d}" for o, d in self.dims.items()) + ")"

    def to_json(self) -> dict:
        c = self.companion
        return {"objects": [obj_key(o) for o in c.objects],
                "dims": {obj_key(o): self.dims[o] for o in c.objects},
                "actions": {f"{obj_key(a)}→{obj_key(b)}": [m.to_json() for m in self.actions[(a, b)]]
                            for (a, b) in c.pairs}}


def rep_from_json(c: Companion, data: dict) -> Rep:
    f = c.field
    objs = [parse_obj(o) for o in data.get("objects", [obj_key(o) for o in c.objects])]
    if tuple(objs) != c.objects:
        raise RepError(f"objects {objs} do not match the companion {list(c.objects)}")
    dims = {parse_obj(k): int(v) for k, v in data["dims"].items()}
    acts = {}
    raw = {}
    for k, v in data.get("actions", {}).items():
        sep = "→" if "→" in k else "->"
        a, b = k.split(sep)
        raw[(parse_obj(a), parse_obj(b))] = v
    for (a, b) in c.pairs:
        mats = raw.get((a, b))
        if mats is None:
            if dims[a] * dims[b] and c.hom_dim(a, b):
                raise RepError(f"missing actions for {a}->{b}")
            mats = [[[0] * dims[a] for _ in range(dims[b])]] * c.hom_dim(a, b)
        acts[(a, b)] = [Mat.from_rows(f, m, dims[a]) for m in mats]
    return Rep(c, dims, acts)


class RepMor:
    __slots__ = ("source", "target", "comps")

    def __init__(self, source: Rep, target: Rep, comps: dict):
        if source.companion != target.companion:
            raise RepError("morphism between reps of different companions")
        self.source = source
        self.target = target
        self.comps = {o: comps[o] for o in source.companion.objects}
        for o, m in self.comps.items():
            if m.shape != (target.dims[o], source.dims[o]):
                raise RepError(f"component at {o} has wrong shape")

    @property
    def companion(self) -> Companion:
        return self.source.companion

    def __getitem__(self, o) -> Mat:
        return self.comps[o]

    def __eq__(self, other):
        if not isinstance(other, RepMor):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.comps == other.comps

    def __hash__(self):
        return hash(tuple(self.comps.values()))

    def __repr__(self):
        return f"RepMor({self.source} -> {self.target})"

    def __matmul__(self, other: "RepMor") -> "RepMor":
        """self after other."""
        if other.target.dims != self.source.dims:
            raise RepError("morphisms are not composable")
        return RepMor(other.source, self.target, {o: self.comps[o] @ other.comps[o] for o in self.comps})

    def __add__(self, other: "RepMor") -> "RepMor":
        return RepMor(self.source, self.target, {o: self.comps[o] + other.comps[o] for o in self.comps})

    def __sub__(self, other: "RepMor") -> "RepMor":
        return RepMor(self.source, self.target, {o: self.comps[o] - other.comps[o] for o in self.comps})

    def scale(self, c) -> "RepMor":
        return RepMor(self.source, self.target, {o: m.scale(c) for o, m in self.comps.items()})

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comps.values())

    def is_iso(self, objs=None) -> bool:
        objs = self.companion.objects if objs is None else objs
        return all(is_invertible(self.comps[o]) for o in objs)

    def is_injective(self, objs=None) -> bool:
        objs = self.companion.objects if objs is None else objs
        return all(self.comps[o].rank() == self.comps[o].ncols for o in objs)

    def is_surjective(self, objs=None) -> bool:
        objs = self.companion.objects if objs is None else objs
        return all(self.comps[o].rank() == self.comps[o].nrows for o in objs)

    def vector(self) -> list:
        out = []
        for o in self.companion.objects:
            out.extend(self.comps[o].entries())
        return out

    def to_json(self) -> dict:
        return {"components": {obj_key(o): m.to_json() for o, m in self.comps.items()}}


def mor_from_json(m: Rep, n: Rep, data: dict) -> RepMor:
    f = m.field
    comps = {}
    raw = {parse_obj(k): v for k, v in data["components"].items()}
    for o in m.companion.objects:
        rows = raw.get(o)
        comps[o] = (Mat.zeros(f, n.dims[o], m.dims[o]) if rows is None or not rows
                    else Mat.from_rows(f, rows, m.dims[o]))
    return RepMor(m, n, comps)


# basic constructions ------------------------------------------------------

def zero_rep(c: Companion) -> Rep:
    f = c.field
    return Rep(c, {o: 0 for o in c.objects},
               {(a, b): [Mat.zeros(f, 0, 0)] * c.hom_dim(a, b) for (a, b) in c.pairs})


def identity(m: Rep) -> RepMor:
    return RepMor(m, m, {o: Mat.identity(m.field, d) for o, d in m.dims.items()})


def zero_mor(m: Rep, n: Rep) -> RepMor:
    return RepMor(m, n, {o: Mat.zeros(m.field, n.dims[o], m.dims[o]) for o in m.companion.objects})


def validate_rep(m: Rep) -> bool:
    c = m.companion
    for o in c.objects:
        if not m.unit_map(o, o).is_identity():
            return False
    objs = c.objects
    for a in objs:
        for b in objs:
            if (a, b) not in m.actions:
                continue
            for d in objs:
                if (b, d) not in m.actions:
                    continue
                comp = c.comp(a, b, d)
                for si, S in enumerate(m.actions[(b, d)]):
                    for ri, R in enumerate(m.actions[(a, b)]):
                        if S @ R != m.act(a, d, comp[si][ri]):
                            return False
    return True


def validate_mor(f: RepMor) -> bool:
    m, n = f.source, f.target
    for (a, b) in m.companion.pairs:
        for R, S in zip(m.actions[(a, b)], n.actions[(a, b)]):
            if f.comps[b] @ R != S @ f.comps[a]:
                return False
    return True


def _restrict_actions(m: Rep, subspaces: dict) -> dict:
    c = m.companion
    acts = {}
    for (a, b) in c.pairs:
        E = subspaces[a].inclusion()
        try:
            acts[(a, b)] = [subspaces[b].coords_matrix(R @ E) for R in m.actions[(a, b)]]
        except LinAlgError:
            raise RepError(f"subspaces are not stable under {a}->{b}") from None
    return acts


def subrep(m: Rep, subspaces: dict) -> tuple[Rep, RepMor]:
    """Sub-representation on the given stable subspaces, with its inclusion."""
    c = m.companion
    s = Rep(c, {o: subspaces[o].dim for o in c.objects}, _restrict_actions(m, subspaces))
    return s, RepMor(s, m, {o: subspaces[o].inclusion() for o in c.objects})


def quotient_rep(m: Rep, subspaces: dict) -> tuple[Rep, RepMor]:
    """Quotient by stable subspaces, with the projection."""
    c = m.companion
    qs = {o: quotient(m.dims[o], subspaces[o]) for o in c.objects}
    acts = {}
    for (a, b) in c.pairs:
        acts[(a, b)] = [qs[b].projection @ R @ qs[a].section for R in m.actions[(a, b)]]
    q = Rep(c, {o: qs[o].dim for o in c.objects}, acts)
    return q, RepMor(m, q, {o: qs[o].projection for o in c.objects})


def kernel(f: RepMor) -> tuple[Rep, RepMor]:
    return subrep(f.source, {o: kernel_basis(f.comps[o]) for o in f.companion.objects})


def image_pointwise(f: RepMor) -> tuple[Rep, RepMor]:
    return subrep(f.target, {o: image_basis(f.comps[o]) for o in f.companion.objects})


def cokernel_pointwise(f: RepMor) -> tuple[Rep, RepMor]:
    return quotient_rep(f.target, {o: image_basis(f.comps[o]) for o in f.companion.objects})


def direct_sum(ms: Sequence[Rep]) -> tuple[Rep, list[RepMor], list[RepMor]]:
    c = ms[0].companion
    f = c.field
    dims = {o: sum(m.dims[o] for m in ms) for o in c.objects}
    acts = {}
    for p in c.pairs:
        acts[p] = [block_diag(f, [m.actions[p][i] for m in ms]) for i in range(c.hom_dim(*p))]
    s = Rep(c, dims, acts)
    incs, projs = [], []
    off = {o: 0 for o in c.objects}
    for m in ms:
        ic, pc = {}, {}
        for o in c.objects:
            d, k = dims[o], m.dims[o]
            ic[o] = Mat.from_rows(f, [[1 if i == off[o] + j else 0 for j in range(k)] for i in range(d)], k)
            pc[o] = ic[o].T()
            off[o] += k
        incs.append(RepMor(m, s, ic))
        projs.append(RepMor(s, m, pc))
    return s, incs, projs


def pullback(f: RepMor, g: RepMor) -> tuple[Rep, RepMor, RepMor]:
    """Pullback of f: A -> C and g: B -> C; returns (P, P -> A, P -> B)."""
    if f.target != g.target:
        raise RepError("pullback needs a common target")
    s, _, (pa, pb) = direct_sum([f.source, g.source])
    d = f @ pa - g @ pb
    k, inc = kernel(d)
    return k, pa @ inc, pb @ inc


def hstack_mor(fs: Sequence[RepMor]) -> RepMor:
    """Copairing  (f_1 ... f_k): A_1 + ... + A_k -> B."""
    s, _, projs = direct_sum([f.source for f in fs])
    out = fs[0] @ projs[0]
    for f, p in zip(fs[1:], projs[1:]):
        out = out + f @ p
    return out


# hom spaces ---------------------------------------------------------------

def _unknown_offsets(m: Rep, n: Rep):
    off, pos = {}, 0
    for o in m.companion.objects:
        off[o] = pos
        pos += n.dims[o] * m.dims[o]
    return off, pos


def naturality_system(m: Rep, n: Rep) -> tuple[list[dict], int]:
    """Sparse rows of the linear system whose solutions are the morphisms m -> n."""
    if m.companion != n.companion:
        raise RepError("reps over different companions")
    off, N = _unknown_offsets(m, n)
    rows = []
    for (a, b) in m.companion.pairs:
        ma, mb, na, nb = m.dims[a], m.dims[b], n.dims[a], n.dims[b]
        if ma == 0 or nb == 0:
            continue
        for R, S in zip(m.actions[(a, b)], n.actions[(a, b)]):
            if a == b and R.is_identity() and S.is_identity():
                continue
            Rr, Sr = R.rows(), S.rows()
            # (X_b R - S X_a)[i, j] = 0
            for i in range(nb):
                for j in range(ma):
                    row = {}
                    for k in range(mb):
                        if Rr[k][j] != 0:
                            key = off[b] + i * mb + k
                            row[key] = row.get(key, 0) + Rr[k][j]
                    for k in range(na):
                        if Sr[i][k] != 0:
                            key = off[a] + k * ma + j
                            row[key] = row.get(key, 0) - Sr[i][k]
                    row = {k: x for k, x in row.items() if m.field.scalar(x) != 0}
                    if row:
                        rows.append(row)
    return rows, N


def mor_from_vector(m: Rep, n: Rep, v: Sequence) -> RepMor:
    off, _ = _unknown_offsets(m, n)
    f = m.field
    comps = {}
    for o in m.companion.objects:
        r, c = n.dims[o], m.dims[o]
        comps[o] = Mat.from_rows(f, [list(v[off[o] + i * c: off[o] + (i + 1) * c]) for i in range(r)], c)
    return RepMor(m, n, comps)


def hom_space(m: Rep, n: Rep) -> list[RepMor]:
    rows, N = naturality_system(m, n)
    if N == 0:
        return []
    if not rows:
        sol = Subspace.full(m.field, N)
    else:
        sol = kernel_basis(Mat.from_sparse(m.field, len(rows), N,
                                           {(i, k): x for i, r in enumerate(rows) for k, x in r.items()}))
    return [mor_from_vector(m, n, v) for v in sol.vectors()]


def combine(basis: Sequence[RepMor], coeffs: Sequence, m: Rep, n: Rep) -> RepMor:
    out = zero_mor(m, n)
    for c, g in zip(coeffs, basis):
        if c != 0:
            out = out + g.scale(c)
    return out


def _solve_combination(vectors: list[list], target: list, field: Field):
    """Coefficients c with sum c_i vectors[i] = target, plus whether they are unique."""
    if not vectors:
        return ([] if all(x == 0 for x in target) else None), True
    A = Mat.from_columns(field, vectors, len(target))
    x = solve(A, Mat.column(field, target))
    unique = A.rank() == len(vectors)
    return (None if x is None else x.col(0)), unique


def factor_through(u: RepMor, f: RepMor) -> tuple[RepMor | None, bool]:
    """g with g u = f  (u: m -> k, f: m -> p); also reports uniqueness."""
    k, p = u.target, f.target
    basis = hom_space(k, p)
    coeffs, unique = _solve_combination([(g @ u).vector() for g in basis], f.vector(), u.source.field)
    if coeffs is None:
        return None, unique
    return combine(basis, coeffs, k, p), unique


def lift_through(d: RepMor, f: RepMor) -> tuple[RepMor | None, bool]:
    """g with d g = f  (d: k -> p, f: m -> p); also reports uniqueness."""
    m, k = f.source, d.source
    basis = hom_space(m, k)
    coeffs, unique = _solve_combination([(d @ g).vector() for g in basis], f.vector(), m.field)
    if coeffs is None:
        return None, unique
    return combine(basis, coeffs, m, k), unique


def find_isomorphism(m: Rep, n: Rep, seed: int = 0, tries: int = 8) -> RepMor | None:
    """Search the hom-space for an isomorphism by random combinations."""
    if m.dims != n.dims:
        return None
    basis = hom_space(m, n)
    if not basis:
        return identity(m) if all(d == 0 for d in m.dims.values()) else None
    rng = random.Random(seed)
    for _ in range(tries):
        g = combine(basis, [rng.randint(-9, 9) for _ in basis], m, n)
        if g.is_iso():
            return g
    return None


def inverse_mor(f: RepMor) -> RepMor:
    return RepMor(f.target, f.source, {o: inverse(m) for o, m in f.comps.items()})


# projectives --------------------------------------------------------------

def standard_projective(c: Companion, lam) -> Rep:
    if lam not in c.objects:
        raise RepError(f"{lam} is not an object")
    f = c.field
    dims = {o: c.hom_dim(lam, o) for o in c.objects}
    acts = {}
    for (a, b) in c.pairs:
        da, db = dims[a], dims[b]
        if da == 0 or db == 0:
            acts[(a, b)] = [Mat.zeros(f, db, da)] * c.hom_dim(a, b)
            continue
        comp = c.comp(lam, a, b)  # comp[r][x] = r x in hom(lam, b)
        acts[(a, b)] = [Mat.from_columns(f, comp[ri], db) for ri in range(c.hom_dim(a, b))]
    return Rep(c, dims, acts)


def projective_map(c: Companion, lam, mu, a: Sequence) -> RepMor:
    """P(lam) -> P(mu), x -> x a, for a in hom(mu, lam)."""
    P, Q = standard_projective(c, lam), standard_projective(c, mu)
    A = c.algebra
    f = c.field
    comps = {}
    for o in c.objects:
        cols = [c.coords(mu, o, A.mul(x, a)) for x in c.hom_basis(lam, o)]
        comps[o] = Mat.from_columns(f, cols, Q.dims[o]) if cols else Mat.zeros(f, Q.dims[o], 0)
    return RepMor(P, Q, comps)


def yoneda_map(m: Rep, lam, v: Sequence) -> RepMor:
    """The morphism P(lam) -> m sending 1_lam to v in m(lam)."""
    c = m.companion
    P = standard_projective(c, lam)
    f = m.field
    col = Mat.column(f, v)
    comps = {}
    for o in c.objects:
        cols = [(m.act_elem(lam, o, x) @ col).col(0) for x in c.hom_basis(lam, o)]
        comps[o] = Mat.from_columns(f, cols, m.dims[o]) if cols else Mat.zeros(f, m.dims[o], 0)
    return RepMor(P, m, comps)


def evaluation_deflation(m: Rep) -> RepMor:
    c = m.companion
    maps = []
    for lam in c.objects:
        for i in range(m.dims[lam]):
            maps.append(yoneda_map(m, lam, [1 if j == i else 0 for j in range(m.dims[lam])]))
    if not maps:
        return zero_mor(zero_rep(c), m)
    return hstack_mor(maps)


def is_projective(m: Rep) -> bool:
    e = evaluation_deflation(m)
    s, _ = lift_through(e, identity(m))
    return s is not None


# R-modules -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RModule:
    """A module over a finite-dimensional algebra: one matrix per basis element."""

    algebra: Algebra
    dim: int
    actions: tuple

    def __eq__(self, other):
        return (isinstance(other, RModule) and self.algebra == other.algebra
                and self.dim == other.dim and self.actions == other.actions)

    def __hash__(self):
        return hash((self.dim, self.actions))

    def act(self, r: Sequence) -> Mat:
        out = Mat.zeros(self.algebra.field, self.dim, self.dim)
        for c, m in zip(r, self.actions):
            if c != 0:
                out = out + m.scale(c)
        return out

    def to_json(self) -> dict:
        return {"dim": self.dim, "actions": [m.to_json() for m in self.actions]}


def regular_module(A: Algebra) -> RModule:
    return RModule(A, A.dim, tuple(A._left))


def validate_module(v: RModule) -> bool:
    A = v.algebra
    if not v.act(A.unit).is_identity():
        return False
    for i in range(A.dim):
        for j in range(A.dim):
            if v.actions[i] @ v.actions[j] != v.act(A.mult[i][j]):
                return False
    return True


def module_hom_dim(v: RModule, w: RModule) -> int:
    """dim Hom_R(v, w)."""
    N = w.dim * v.dim
    if N == 0:
        return 0
    rows = []
    for A_, B_ in zip(v.actions, w.actions):
        Ar, Br = A_.rows(), B_.rows()
        for i in range(w.dim):
            for j in range(v.dim):
                row = [0] * N
                for k in range(v.dim):
                    row[i * v.dim + k] += Ar[k][j]
                for k in range(w.dim):
                    row[k * v.dim + j] -= Br[i][k]
                rows.append(row)
    return N - Mat.from_rows(v.algebra.field, rows, N).rank()

