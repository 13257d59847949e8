"""Filtered finite-dimensional algebras, bialgebras and companion categories."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product
from typing import Sequence

from .exactlin import Field, Mat, Subspace, kron

INF = "inf"


class AlgebraError(ValueError):
    pass


def _vec(f: Field, v) -> tuple:
    return tuple(f.scalar(x) for x in v)


@dataclass(frozen=True)
class Algebra:
    field: Field
    dim: int
    mult: tuple  # mult[i][j] = coordinates of b_i b_j
    unit: tuple

    def __post_init__(self):
        n, f = self.dim, self.field
        if len(self.mult) != n or any(len(r) != n for r in self.mult) or \
                any(len(v) != n for r in self.mult for v in r) or len(self.unit) != n:
            raise AlgebraError("structure constants do not match the dimension")
        mult = tuple(tuple(_vec(f, self.mult[i][j]) for j in range(n)) for i in range(n))
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "unit", _vec(f, self.unit))

    @cached_property
    def _left(self) -> list[Mat]:
        n = self.dim
        return [Mat.from_rows(self.field, [[self.mult[i][j][k] for j in range(n)] for k in range(n)], n)
                for i in range(n)]

    @cached_property
    def _right(self) -> list[Mat]:
        n = self.dim
        return [Mat.from_rows(self.field, [[self.mult[i][j][k] for i in range(n)] for k in range(n)], n)
                for j in range(n)]

    def left(self, x: Sequence) -> Mat:
        """Matrix of y -> x y."""
        out = Mat.zeros(self.field, self.dim, self.dim)
        for xi, m in zip(x, self._left):
            if xi != 0:
                out = out + m.scale(xi)
        return out

    def right(self, x: Sequence) -> Mat:
        """Matrix of y -> y x."""
        out = Mat.zeros(self.field, self.dim, self.dim)
        for xi, m in zip(x, self._right):
            if xi != 0:
                out = out + m.scale(xi)
        return out

    def mul(self, x: Sequence, y: Sequence) -> tuple:
        return tuple((self.left(x) @ Mat.column(self.field, y)).col(0))

    def basis_vector(self, i: int) -> tuple:
        return tuple(1 if j == i else 0 for j in range(self.dim))

    @cached_property
    def mult_matrix(self) -> Mat:
        """n x n^2 matrix of the multiplication map A (x) A -> A."""
        n = self.dim
        return Mat.from_rows(self.field, [[self.mult[i][j][k] for i in range(n) for j in range(n)]
                                          for k in range(n)], n * n)


@dataclass(frozen=True)
class Filtration:
    algebra: Algebra
    window: tuple
    layers: dict  # degree -> Subspace, for degrees in the window

    def __post_init__(self):
        lo, hi = self.window
        if lo > hi:
            raise AlgebraError("empty window")
        for d in range(lo, hi + 1):
            s = self.layers.get(d)
            if s is None or s.ambient != self.algebra.dim:
                raise AlgebraError(f"missing or malformed layer {d}")

    def __hash__(self):
        return hash((self.algebra, self.window))

    def layer(self, d: int) -> Subspace:
        lo, hi = self.window
        f, n = self.algebra.field, self.algebra.dim
        if d < lo:
            return Subspace.zero(f, n)
        if d > hi:
            return Subspace.full(f, n)
        return self.layers[d]


@dataclass(frozen=True)
class Bialgebra:
    algebra: Algebra
    comult: Mat  # n^2 x n
    counit: Mat  # 1 x n

    def __post_init__(self):
        n = self.algebra.dim
        if self.comult.shape != (n * n, n) or self.counit.shape != (1, n):
            raise AlgebraError("coalgebra maps do not match the dimension")

    @property
    def field(self) -> Field:
        return self.algebra.field

    def delta(self, x: Sequence) -> list:
        return (self.comult @ Mat.column(self.field, x)).col(0)

    def eps(self, x: Sequence):
        return (self.counit @ Mat.column(self.field, x))[0, 0]


# validators ---------------------------------------------------------------

def validate_algebra(a: Algebra) -> bool:
    n = a.dim
    L = a._left
    for i, j in product(range(n), repeat=2):
        bij = a.mult[i][j]
        # (b_i b_j) b_k = b_i (b_j b_k) for all k, as matrices of left multiplication
        if a.left(bij) != L[i] @ L[j]:
            return False
    u = a.left(a.unit)
    if not u.is_identity() or not a.right(a.unit).is_identity():
        return False
    return True


def _layer_product_ok(f: Filtration, a: int, b: int) -> bool:
    A = f.algebra
    target = f.layer(a + b)
    for x in f.layer(a).vectors():
        for y in f.layer(b).vectors():
            if not target.contains(A.mul(x, y)):
                return False
    return True


def validate_filtration(f: Filtration) -> bool:
    lo, hi = f.window
    for d in range(lo - 1, hi + 1):
        if not f.layer(d + 1).contains_space(f.layer(d)):
            return False
    if not f.layer(0).contains(f.algebra.unit):
        return False
    degs = range(lo, hi + 2)
    return all(_layer_product_ok(f, a, b) for a in degs for b in degs)


def _tensor_mult(A: Algebra) -> Mat:
    """n^2 x n^4 matrix of the product on A (x) A."""
    n = A.dim
    rows = [[0] * (n ** 4) for _ in range(n * n)]
    for i, j, k, l in product(range(n), repeat=4):
        col = ((i * n + j) * n + k) * n + l  # (b_i (x) b_j) (x) (b_k (x) b_l)
        x, y = A.mult[i][k], A.mult[j][l]
        for p in range(n):
            if x[p] == 0:
                continue
            for q in range(n):
                if y[q] != 0:
                    rows[p * n + q][col] += x[p] * y[q]
    return Mat.from_rows(A.field, rows, n ** 4)


def validate_bialgebra(b: Bialgebra) -> bool:
    A, f = b.algebra, b.field
    n = A.dim
    if not validate_algebra(A):
        return False
    I = Mat.identity(f, n)
    D, e = b.comult, b.counit
    if kron(D, I) @ D != kron(I, D) @ D:
        return False
    if kron(e, I) @ D != I or kron(I, e) @ D != I:
        return False
    # Delta and eps multiplicative and unital
    m2 = _tensor_mult(A)
    if D @ A.mult_matrix != m2 @ kron(D, D):
        return False
    if e @ A.mult_matrix != kron(e, e):
        return False
    u = Mat.column(f, A.unit)
    if D @ u != kron(u, u) or (e @ u)[0, 0] != 1:
        return False
    return True


def tensor_subspace(s: Subspace, t: Subspace) -> Subspace:
    vecs = [[x * y for x in v for y in w] for v in s.vectors() for w in t.vectors()]
    return Subspace.span(s.field, vecs, s.ambient * t.ambient)


def validate_bialgebra_filtration(b: Bialgebra, f: Filtration) -> bool:
    if f.algebra != b.algebra:
        raise AlgebraError("filtration and bialgebra live on different algebras")
    if not validate_filtration(f):
        return False
    A = b.algebra
    lo, hi = f.window
    for d in range(max(lo, 0), hi + 1):
        V = f.layer(d)
        if not V.contains(A.unit):
            return False
        VV = tensor_subspace(V, V)
        for x in V.vectors():
            if not VV.contains(b.delta(x)):
                return False
            for y in V.vectors():
                if not V.contains(A.mul(x, y)):
                    return False
    return True


# constructors -------------------------------------------------------------

def check_group_table(table: Sequence[Sequence[int]]) -> int:
    """Validate a group multiplication table; return the identity index."""
    n = len(table)
    if n == 0 or any(len(r) != n for r in table):
        raise AlgebraError("group table must be square and non-empty")
    if any(not (0 <= x < n) for r in table for x in r):
        raise AlgebraError("group table entry out of range")
    ids = [e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))]
    if not ids:
        raise AlgebraError("group table has no identity")
    e = ids[0]
    for g in range(n):
        if not any(table[g][h] == e for h in range(n)):
            raise AlgebraError("group table has an element without inverse")
    for a, b, c in product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise AlgebraError("group table is not associative")
    return e


def group_algebra(table: Sequence[Sequence[int]], field: Field) -> Bialgebra:
    e = check_group_table(table)
    n = len(table)
    mult = [[tuple(1 if k == table[i][j] else 0 for k in range(n)) for j in range(n)] for i in range(n)]
    A = Algebra(field, n, tuple(map(tuple, mult)), tuple(1 if k == e else 0 for k in range(n)))
    comult = [[0] * n for _ in range(n * n)]
    for g in range(n):
        comult[g * n + g][g] = 1
    return Bialgebra(A, Mat.from_rows(field, comult, n), Mat.from_rows(field, [[1] * n], n))


def one_step_filtration(a: Algebra) -> Filtration:
    f, n = a.field, a.dim
    return Filtration(a, (-1, 1), {-1: Subspace.zero(f, n), 0: Subspace.span(f, [a.unit], n),
                                   1: Subspace.full(f, n)})


def degree_filtration(a: Algebra, degrees: Sequence[int]) -> Filtration:
    """Filtration spanned by basis elements: b_i sits in every layer >= degrees[i]."""
    f, n = a.field, a.dim
    lo, hi = min(min(degrees), 0) - 1, max(degrees)
    layers = {d: Subspace.span(f, [a.basis_vector(i) for i in range(n) if degrees[i] <= d], n)
              for d in range(lo, hi + 1)}
    return Filtration(a, (lo, hi), layers)


def subgroup_chain_filtration(b: Bialgebra, chain: Sequence[Sequence[int]]) -> Filtration:
    A = b.algebra
    n = A.dim
    basis_prod = {}
    for i, j in product(range(n), repeat=2):
        v = A.mult[i][j]
        nz = [k for k, x in enumerate(v) if x != 0]
        if len(nz) != 1 or v[nz[0]] != 1:
            raise AlgebraError("basis is not a group")
        basis_prod[i, j] = nz[0]
    prev: set[int] = set()
    for idx, H in enumerate(chain):
        H = set(H)
        if not H or any(not (0 <= g < n) for g in H):
            raise AlgebraError("empty subgroup or element out of range")
        if any(basis_prod[g, h] not in H for g in H for h in H):
            raise AlgebraError(f"chain member {idx} is not a subgroup")
        if not prev <= H:
            raise AlgebraError("chain is not nested")
        prev = H
    f = A.field
    layers = {-1: Subspace.zero(f, n)}
    for d, H in enumerate(chain):
        layers[d] = Subspace.span(f, [A.basis_vector(g) for g in sorted(H)], n)
    return Filtration(A, (-1, len(chain) - 1), layers)


# companion categories -----------------------------------------------------

def obj_le(a, b) -> bool:
    if b == INF:
        return True
    if a == INF:
        return False
    return a <= b


@dataclass(frozen=True)
class Companion:
    filtration: Filtration
    lam: tuple
    extended: bool
    _cache: dict = dc_field(default_factory=dict, compare=False, repr=False, hash=False)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Companion):
            return NotImplemented
        return (self.lam == other.lam and self.extended == other.extended
                and self.filtration == other.filtration)

    def __hash__(self):
        return hash((self.lam, self.extended))

    @property
    def algebra(self) -> Algebra:
        return self.filtration.algebra

    @property
    def field(self) -> Field:
        return self.filtration.algebra.field

    @cached_property
    def objects(self) -> tuple:
        return tuple(self.lam) + ((INF,) if self.extended else ())

    @cached_property
    def pairs(self) -> tuple:
        """Ordered pairs (a, b) with a <= b, i.e. the possibly nonzero hom-spaces."""
        return tuple((a, b) for a in self.objects for b in self.objects if obj_le(a, b))

    def hom(self, a, b) -> Subspace:
        key = ("hom", a, b)
        if key not in self._cache:
            F = self.filtration
            if not obj_le(a, b):
                s = Subspace.zero(self.field, self.algebra.dim)
            elif b == INF:
                s = Subspace.full(self.field, self.algebra.dim)
            else:
                s = F.layer(b - a)
            self._cache[key] = s
        return self._cache[key]

    def hom_basis(self, a, b) -> list:
        return self.hom(a, b).vectors()

    def hom_dim(self, a, b) -> int:
        return self.hom(a, b).dim

    def coords(self, a, b, r: Sequence) -> list:
        c = self.hom(a, b).coords(r)
        if c is None:
            raise AlgebraError(f"element not in hom({a},{b})")
        return c

    def unit_coords(self, a, b) -> list:
        return self.coords(a, b, self.algebra.unit)

    def comp(self, a, b, c) -> list:
        """comp[s][r] = coordinates in hom(a,c) of s r, s in hom(b,c), r in hom(a,b)."""
        key = ("comp", a, b, c)
        if key not in self._cache:
            A = self.algebra
            self._cache[key] = [[self.coords(a, c, A.mul(s, r)) for r in self.hom_basis(a, b)]
                                for s in self.hom_basis(b, c)]
        return self._cache[key]

    def restricted(self) -> "Companion":
        key = ("restricted",)
        if key not in self._cache:
            self._cache[key] = self if not self.extended else Companion(self.filtration, self.lam, False)
        return self._cache[key]

    def with_infinity(self) -> "Companion":
        key = ("ext",)
        if key not in self._cache:
            self._cache[key] = self if self.extended else Companion(self.filtration, self.lam, True)
        return self._cache[key]


def companion(f: Filtration, lam: Sequence[int], extended: bool) -> Companion:
    lam = tuple(int(x) for x in lam)
    if not lam or any(lam[i] >= lam[i + 1] for i in range(len(lam) - 1)):
        raise AlgebraError("lambda must be a non-empty strictly increasing list")
    if not validate_filtration(f):
        raise AlgebraError("filtration fails validation")
    c = Companion(f, lam, bool(extended))
    objs = c.objects
    for a in objs:
        for b in objs:
            for d in objs:
                if obj_le(a, b) and obj_le(b, d):
                    c.comp(a, b, d)  # raises if composition leaves hom(a,d)
    return c

