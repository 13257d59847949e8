"""Recovering a bialgebra (or an algebra) from the one-step glider category."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .exactlin import Field, Mat, inverse, is_invertible, kernel_basis, kron, solve, vstack
from .filtalg import Algebra, Bialgebra, Companion, companion, one_step_filtration
from .groups import involution_count
from .monoidal import TensorContext, tensor_rep, unit_object
from .repmod import RModule, Rep, hom_space, standard_projective


class TannakaError(ValueError):
    pass


GROUPLIKE_BOUND = 10 ** 7


def regular_glider(c: Companion) -> Rep:
    """Both levels equal to B, every hom element acting by left multiplication."""
    A = c.algebra
    dims = {o: A.dim for o in c.objects}
    return Rep(c, dims, {p: [A.left(r) for r in c.hom_basis(*p)] for p in c.pairs})


@dataclass
class FiberSetup:
    companion: Companion
    algebra: Algebra
    ctx: TensorContext | None
    P0: Rep
    Pm1: Rep
    regular: Rep
    pattern: tuple


def classify_projectives(c: Companion, candidates=None) -> tuple[Rep, Rep, tuple]:
    """Tell the two standard projectives apart by which hom-space vanishes.

    Returns (P0, Pm1, (dim hom(P0, Pm1), dim hom(Pm1, P0))).
    """
    if candidates is None:
        candidates = [standard_projective(c, l) for l in c.lam]
    if len(candidates) != 2:
        raise TannakaError("expected exactly two indecomposable projectives")
    X, Y = candidates
    xy, yx = len(hom_space(X, Y)), len(hom_space(Y, X))
    if yx == 0 and xy > 0:
        return X, Y, (xy, yx)
    if xy == 0 and yx > 0:
        return Y, X, (yx, xy)
    raise TannakaError(f"ambiguous hom pattern ({xy}, {yx})")


def fiber_setup(b: Bialgebra | Algebra) -> FiberSetup:
    if isinstance(b, Bialgebra):
        A = b.algebra
        ctx = TensorContext(b, one_step_filtration(A), (-1, 0))
        c = ctx.companion(False)
    else:
        A, ctx = b, None
        c = companion(one_step_filtration(A), (-1, 0), False)
    P0, Pm1, pattern = classify_projectives(c)
    return FiberSetup(c, A, ctx, P0, Pm1, regular_glider(c), pattern)


def in_M(m: Rep) -> bool:
    return m.dims[-1] == m.dims[0]


def in_V(m: Rep) -> bool:
    return m.dims[-1] == 0


def in_M_by_hom(s: FiberSetup, m: Rep) -> bool:
    return len(hom_space(s.P0, m)) == len(hom_space(s.Pm1, m))


def in_V_by_hom(s: FiberSetup, m: Rep) -> bool:
    return len(hom_space(s.Pm1, m)) == 0


def fiber(m: Rep) -> RModule:
    """Level 0 with B acting through level -1."""
    if not in_M(m):
        raise TannakaError("fiber is only defined on objects with equal level dimensions")
    u = m.unit_map(-1, 0)
    if not is_invertible(u):
        raise TannakaError("level inclusion is not invertible")
    ui = inverse(u)
    A = m.companion.algebra
    return RModule(A, m.dims[0], tuple(m.act_elem(-1, 0, A.basis_vector(i)) @ ui for i in range(A.dim)))


@dataclass
class ReconstructionResult:
    end_algebra: Algebra
    comult: Mat | None
    counit: Mat | None
    comparison: Mat
    is_algebra_iso: bool
    is_bialgebra_iso: bool | None

    def to_json(self) -> dict:
        f = self.end_algebra.field
        return {"dims": self.end_algebra.dim,
                "field": str(f),
                "comparison_matrix": self.comparison.to_json(),
                "is_algebra_iso": self.is_algebra_iso,
                "is_bialgebra_iso": self.is_bialgebra_iso}


def _commutant(s: FiberSetup) -> list[Mat]:
    """Linear maps on the fiber of the regular object commuting with all its endomorphisms."""
    n = s.algebra.dim
    f = s.algebra.field
    ends = [phi.comps[0] for phi in hom_space(s.regular, s.regular)]
    I = Mat.identity(f, n)
    # X E - E X = 0, with X vectorised row-major: vec(X E) = kron(I, E^T) vec X
    rows = []
    for E in ends:
        rows.append(kron(I, E.T()) - kron(E, I))
    if rows:
        K = kernel_basis(vstack(f, rows, n * n))
        vecs = K.vectors()
    else:
        vecs = [[1 if i == j else 0 for j in range(n * n)] for i in range(n * n)]
    return [Mat.from_rows(f, [v[i * n:(i + 1) * n] for i in range(n)], n) for v in vecs]


def _coords(f: Field, basis_cols: list[list], target: list) -> list:
    M = Mat.from_columns(f, basis_cols, len(target))
    X = solve(M, Mat.column(f, target))
    if X is None:
        raise TannakaError("vector outside the expected span")
    return X.col(0)


def end_of_fiber(s: FiberSetup, with_coalgebra: bool = True) -> ReconstructionResult:
    A = s.algebra
    f = A.field
    n = A.dim
    etas = _commutant(s)
    if len(etas) != n:
        raise TannakaError(f"commutant has dimension {len(etas)}, expected {n}")
    flat = [[x for row in e.rows() for x in row] for e in etas]
    def ecoords(M: Mat) -> list:
        return _coords(f, flat, [x for row in M.rows() for x in row])
    mult = tuple(tuple(tuple(ecoords(etas[i] @ etas[j])) for j in range(n)) for i in range(n))
    unit = tuple(ecoords(Mat.identity(f, n)))
    E = Algebra(f, n, mult, unit)
    # comparison: b -> action of b on the fiber of the regular object
    F = fiber(s.regular)
    C = Mat.from_columns(f, [ecoords(F.actions[i]) for i in range(n)], n)
    alg_ok = is_invertible(C) and C @ Mat.column(f, A.unit) == Mat.column(f, E.unit)
    if alg_ok:
        for i in range(n):
            for j in range(n):
                lhs = C @ Mat.column(f, A.mul(A.basis_vector(i), A.basis_vector(j)))
                rhs = E.mul(C.col(i), C.col(j))
                if lhs != Mat.column(f, rhs):
                    alg_ok = False
    if s.ctx is None or not with_coalgebra:
        return ReconstructionResult(E, None, None, C, alg_ok, None)
    b = s.ctx.bialgebra
    reg = s.regular
    one = list(A.unit)
    # phi: reg -> reg (x) reg with phi_0(1) = 1 (x) 1
    T = tensor_rep(reg, reg, s.ctx)
    D = _pick(hom_space(reg, T), f, one, kron(Mat.column(f, one), Mat.column(f, one)).col(0))
    # psi: reg -> unit with psi_0(1) = 1
    U = unit_object(s.ctx, s.companion)
    e = _pick(hom_space(reg, U), f, one, [1])
    u = Mat.column(f, one)
    pairs = [kron(etas[i] @ u, etas[j] @ u).col(0) for i in range(n) for j in range(n)]
    dcols, ecols = [], []
    for eta in etas:
        x = eta @ u
        dcols.append(_coords(f, pairs, (D @ x).col(0)))
        ecols.append((e @ x).col(0))
    comult = Mat.from_columns(f, dcols, n * n)
    counit = Mat.from_columns(f, ecols, 1)
    bi_ok = alg_ok and comult @ C == kron(C, C) @ b.comult and counit @ C == b.counit
    return ReconstructionResult(E, comult, counit, C, alg_ok, bi_ok)


def _pick(basis, f: Field, one: list, want: list) -> Mat:
    """Level-0 component of the unique combination sending 1 to want."""
    u = Mat.column(f, one)
    cols = [(phi.comps[0] @ u).col(0) for phi in basis]
    if not cols:
        raise TannakaError("no morphism with the required value on 1")
    c = _coords(f, cols, want)
    out = Mat.zeros(f, basis[0].comps[0].nrows, basis[0].comps[0].ncols)
    for x, phi in zip(c, basis):
        out = out + phi.comps[0].scale(x)
    return out


def reconstruct_algebra(s: FiberSetup) -> tuple[Algebra, Mat, bool]:
    r = end_of_fiber(s, with_coalgebra=False)
    return r.end_algebra, r.comparison, r.is_algebra_iso


# grouplikes -----------------------------------------------------------------

def _threads() -> int:
    try:
        return max(1, int(os.environ.get("GLIDER_THREADS", "1")))
    except ValueError:
        return 1


def _scan(p: int, n: int, D: np.ndarray, e: np.ndarray, start: int, stop: int) -> list[tuple]:
    idx = np.arange(start, stop, dtype=np.int64)
    X = np.empty((stop - start, n), dtype=np.int64)
    for k in range(n):
        X[:, n - 1 - k] = idx % p
        idx //= p
    ok = (X @ e) % p == 1
    X = X[ok]
    if not len(X):
        return []
    dx = (X @ D.T) % p
    xx = (X[:, :, None] * X[:, None, :]).reshape(len(X), n * n) % p
    good = (dx == xx).all(axis=1)
    return [tuple(int(v) for v in row) for row in X[good]]


def grouplikes(b: Bialgebra, chunk: int = 1 << 16) -> list[tuple]:
    f = b.field
    if f.p == 0:
        raise TannakaError("grouplike search needs a prime field")
    p, n = f.p, b.algebra.dim
    total = p ** n
    if total > GROUPLIKE_BOUND:
        raise TannakaError(f"search space {p}^{n} exceeds {GROUPLIKE_BOUND}; use a smaller prime")
    D = np.array([[int(x) for x in row] for row in b.comult.rows()], dtype=np.int64)
    e = np.array([int(x) for x in b.counit.rows()[0]], dtype=np.int64)
    ranges = [(s, min(s + chunk, total)) for s in range(0, total, chunk)]
    with ThreadPoolExecutor(_threads()) as ex:
        parts = list(ex.map(lambda r: _scan(p, n, D, e, *r), ranges))
    return [x for part in parts for x in part]


def grouplike_table(b: Bialgebra, gs: list[tuple]) -> list[list[int]] | None:
    """Multiplication table of the grouplikes, or None if they are not closed."""
    index = {g: i for i, g in enumerate(gs)}
    f = b.field
    table = []
    for x in gs:
        row = []
        for y in gs:
            z = tuple(int(f.scalar(v)) for v in b.algebra.mul(x, y))
            if z not in index:
                return None
            row.append(index[z])
        table.append(row)
    return table


def group_report(b: Bialgebra) -> dict:
    gs = grouplikes(b)
    t = grouplike_table(b, gs)
    return {"grouplikes": [list(g) for g in gs], "group_table": t,
            "involution_count": involution_count(t) if t else None}
