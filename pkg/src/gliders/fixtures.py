"""Built-in example data: symmetric group examples and truncated polynomial examples."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactlin import QQ, Field, Mat, Subspace, block_diag, solve
from .filtalg import (INF, Algebra, Bialgebra, Companion, Filtration, companion, degree_filtration,
                      group_algebra, one_step_filtration)
from .glider import GliderError, glider_mor, module_quotient, preglider_on, restrict_mor
from .groups import s3_elements, symmetric3
from .repmod import RModule, Rep, RepMor, cokernel_pointwise, direct_sum, regular_module


# helpers ------------------------------------------------------------------

def module_matrices(v: RModule) -> list[Mat]:
    return list(v.actions)


def submodule(v: RModule, s: Subspace) -> RModule:
    """Restriction of v to an R-stable subspace, in the coordinates of its basis."""
    E = s.inclusion()
    return RModule(v.algebra, s.dim, tuple(s.coords_matrix(a @ E) for a in v.actions))


def quotient_module(v: RModule, s: Subspace) -> RModule:
    return module_quotient(v, s)[0]


def direct_sum_module(vs: Sequence[RModule]) -> RModule:
    A = vs[0].algebra
    return RModule(A, sum(v.dim for v in vs),
                   tuple(block_diag(A.field, [v.actions[i] for v in vs]) for i in range(A.dim)))


def preglider(c: Companion, omega: RModule, levels: dict) -> Rep:
    """Preglider with ambient module omega and levels given by spanning vectors."""
    f, N = omega.algebra.field, omega.dim
    subs = {l: Subspace.span(f, levels.get(l, []), N) for l in c.lam}
    return preglider_on(c, list(omega.actions), subs)


def mor_from_inf(src: Rep, tgt: Rep, g_inf: Mat) -> RepMor:
    """Preglider morphism determined by its component at inf."""
    comps = {INF: g_inf}
    for l in src.companion.lam:
        X = solve(tgt.unit_map(l, INF), g_inf @ src.unit_map(l, INF))
        if X is None:
            raise GliderError(f"map at inf does not respect level {l}")
        comps[l] = X
    return RepMor(src, tgt, comps)


def _mat(rows, f: Field = QQ) -> Mat:
    return Mat.from_rows(f, rows, len(rows[0]) if rows else 0)


# symmetric group ----------------------------------------------------------

def s3_bialgebra(f: Field = QQ) -> Bialgebra:
    return group_algebra(symmetric3(), f)


def s3_standard_module(f: Field = QQ) -> RModule:
    """The 2-dim rep: basis e_a, e_b with e_c = -(e_a + e_b); S3 permutes a, b, c."""
    vecs = {0: (1, 0), 1: (0, 1), 2: (-1, -1)}
    mats = []
    for p in s3_elements():
        cols = [vecs[p[0]], vecs[p[1]]]
        mats.append(Mat.from_rows(f, [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]], 2))
    A = s3_bialgebra(f).algebra
    return RModule(A, 2, tuple(mats))


def s3_companion(f: Field = QQ) -> Companion:
    B = s3_bialgebra(f)
    return companion(one_step_filtration(B.algebra), (-1, 0), True)


@dataclass
class Example:
    companion: Companion
    objects: dict
    morphisms: dict
    notes: dict = field(default_factory=dict)


E_A, E_B = (1, 0), (0, 1)


def s3_standard() -> Example:
    """M = (0 < Qe_a), N = (Qe_b < V), S = (Qe_b -> V/Qe_a); f: M -> N, g: N -> S."""
    c = s3_companion()
    V = s3_standard_module()
    M = preglider(c, V, {-1: [], 0: [E_A]})
    N = preglider(c, V, {-1: [E_B], 0: [E_A, E_B]})
    f = mor_from_inf(M, N, Mat.identity(QQ, 2))
    S, g = cokernel_pointwise(restrict_mor(f))
    return Example(c, {"M": M, "N": N, "S": S},
                   {"f": f, "f_frag": restrict_mor(f), "g_frag": g})


def s3_chain2() -> Example:
    """A = (0, Qe_a), B = (0, V), C = (Qe_b, V+V diagonally), D = (Qe_b, V)."""
    c = s3_companion()
    V = s3_standard_module()
    VV = direct_sum_module([V, V])
    A = preglider(c, V, {-1: [], 0: [E_A]})
    B = preglider(c, V, {-1: [], 0: [E_A, E_B]})
    C = preglider(c, VV, {-1: [(0, 1, 0, 1)], 0: [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]})
    D = preglider(c, V, {-1: [E_B], 0: [E_A, E_B]})
    f = mor_from_inf(A, B, Mat.identity(QQ, 2))
    g = mor_from_inf(B, C, _mat([[1, 0], [0, 1], [0, 0], [0, 0]]))
    h = mor_from_inf(C, D, _mat([[0, 0, 1, 0], [0, 0, 0, 1]]))
    return Example(c, {"A": A, "B": B, "C": C, "D": D},
                   {"f": f, "g": g, "h": h,
                    "Qf": glider_mor(f), "Qg": glider_mor(g), "Qh": glider_mor(h)})


# truncated polynomial rings -----------------------------------------------

def truncated_poly(N: int, f: Field = QQ) -> Algebra:
    """k[t]/(t^N) with basis 1, t, ..., t^(N-1)."""
    if N < 1:
        raise ValueError("truncation order must be positive")
    mult = [[tuple(1 if (k == i + j) else 0 for k in range(N)) for j in range(N)] for i in range(N)]
    return Algebra(f, N, tuple(map(tuple, mult)), tuple(1 if k == 0 else 0 for k in range(N)))


def truncated_tx(N: int, f: Field = QQ) -> Algebra:
    """k[t,x]/(xt, t^N, x^N) with basis 1, t..t^(N-1), x..x^(N-1)."""
    n = 2 * N - 1
    # monomial of basis index: (var, power); index 0 is 1
    mono = [(None, 0)] + [("t", i) for i in range(1, N)] + [("x", i) for i in range(1, N)]

    def index(var, p):
        if p == 0:
            return 0
        if p >= N:
            return None
        return p if var == "t" else N - 1 + p

    mult = []
    for a in mono:
        row = []
        for b in mono:
            v = [0] * n
            if a[0] is None:
                k = index(b[0], b[1])
            elif b[0] is None:
                k = index(a[0], a[1])
            elif a[0] == b[0]:
                k = index(a[0], a[1] + b[1])
            else:
                k = None
            if k is not None:
                v[k] = 1
            row.append(tuple(v))
        mult.append(tuple(row))
    return Algebra(f, n, tuple(mult), tuple(1 if k == 0 else 0 for k in range(n)))


def _t_power(N: int, k: int) -> tuple:
    return tuple(1 if i == k else 0 for i in range(N))


def kt_trunc(N: int = 4) -> Example:
    """Truncation of the example showing a composite of inflations that is not obviously one.

    R = k[t]/(t^N) filtered by degree, levels -1 < 0.
    L = (0, kt, tR), M = (0, kt + kt^2, tR), N = (k, k + kt + kt^2, R),
    f = (1,0): L -> L+L, g = (1 t): L+L -> M, h: M -> N the inclusion.
    """
    if N < 4:
        raise ValueError("truncation order must be at least 4")
    A = truncated_poly(N)
    F = degree_filtration(A, list(range(N)))
    c = companion(F, (-1, 0), True)
    R = regular_module(A)
    tR = Subspace.span(QQ, [_t_power(N, k) for k in range(1, N)], N)
    Om = submodule(R, tR)  # basis t, ..., t^(N-1)
    u = lambda k: tuple(1 if i == k - 1 else 0 for i in range(N - 1))  # t^k in tR coordinates
    L = preglider(c, Om, {-1: [], 0: [u(1)]})
    M = preglider(c, Om, {-1: [], 0: [u(1), u(2)]})
    Nn = preglider(c, R, {-1: [_t_power(N, 0)], 0: [_t_power(N, 0), _t_power(N, 1), _t_power(N, 2)]})
    LL, incs, _ = direct_sum([L, L])
    f = incs[0]
    shift = [[1 if i == j + 1 else 0 for j in range(N - 1)] for i in range(N - 1)]
    g_inf = Mat.from_rows(QQ, [[1 if i == j else 0 for j in range(N - 1)] + shift[i] for i in range(N - 1)],
                          2 * (N - 1))
    g = mor_from_inf(LL, M, g_inf)
    h_inf = Mat.from_rows(QQ, [[1 if i == j + 1 else 0 for j in range(N - 1)] for i in range(N)], N - 1)
    h = mor_from_inf(M, Nn, h_inf)
    return Example(c, {"L": L, "LL": LL, "M": M, "N": Nn},
                   {"f": f, "g": g, "h": h, "gf": g @ f, "hgf": h @ g @ f,
                    "Qgf": glider_mor(g @ f), "Qh": glider_mor(h), "Qhgf": glider_mor(h @ g @ f)},
                   {"N": N})


def kt_natural(N: int = 4, lam: Sequence[int] = (-2, -1, 0)) -> Example:
    """Truncation of the natural-preglider cokernel example.

    R = k[t]/(t^N) with F_0 = k and F_1 = R; M = (0, k, R), N = (0, k + kt, R),
    f = multiplication by t.
    """
    if N < 3:
        raise ValueError("truncation order must be at least 3")
    A = truncated_poly(N)
    c = companion(one_step_filtration(A), tuple(lam), True)
    R = regular_module(A)
    top = max(lam)
    M = preglider(c, R, {top: [_t_power(N, 0)]})
    Nn = preglider(c, R, {top: [_t_power(N, 0), _t_power(N, 1)]})
    f = mor_from_inf(M, Nn, A.left(_t_power(N, 1)))
    return Example(c, {"M": M, "N": Nn}, {"f": f}, {"N": N})


def left_adjoint_not_exact(N: int = 4) -> Example:
    """Truncation of k[t,x]/(xt): F_0 = k[t], F_1 = R, one level 0.

    M = (k[t], R), N = (k, R/(t)), g: M -> N the quotient map.
    """
    A = truncated_tx(N)
    n = A.dim
    e = lambda k: tuple(1 if i == k else 0 for i in range(n))
    kt = Subspace.span(QQ, [e(i) for i in range(N)], n)
    F = Filtration(A, (-1, 0), {-1: Subspace.zero(QQ, n), 0: kt})
    c = companion(F, (0,), True)
    R = regular_module(A)
    tR = Subspace.span(QQ, [e(i) for i in range(1, N)], n)
    Rt, proj = module_quotient(R, tR)
    M = preglider(c, R, {0: [e(i) for i in range(N)]})
    Nn = preglider(c, Rt, {0: [(proj @ Mat.column(QQ, e(0))).col(0)]})
    g = mor_from_inf(M, Nn, proj)
    return Example(c, {"M": M, "N": Nn}, {"g": g}, {"N": N, "tR": tR})


def easy_gliders() -> Example:
    """R = k[t]/(t^2), one level 0: M = (k, R/(t)), N = (k, R) = P, roof M <- P -> N."""
    A = truncated_poly(2)
    c = companion(one_step_filtration(A), (0,), True)
    R = regular_module(A)
    one, t = (1, 0), (0, 1)
    Rt = quotient_module(R, Subspace.span(QQ, [t], 2))
    M = preglider(c, Rt, {0: [(1,)]})
    Nn = preglider(c, R, {0: [one]})
    s = mor_from_inf(Nn, M, Mat.from_rows(QQ, [[1, 0]], 2))
    return Example(c, {"M": M, "N": Nn, "P": Nn}, {"s": s}, {})


# bialgebras for reconstruction ---------------------------------------------

def dual_numbers(f: Field = QQ) -> Algebra:
    return truncated_poly(2, f)
