"""Exact linear algebra over the rationals and prime fields.

Matrices wrap python-flint dense matrices (``fmpq_mat`` / ``nmod_mat``).
Vectors are columns; a map V -> W is a dim W x dim V matrix.  Subspaces are
stored by their reduced row echelon basis, so equal subspaces compare equal
as data.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint


class LinAlgError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """p == 0 means the rationals."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and (not _is_prime(self.p) or self.p > 2**31):
            raise LinAlgError(f"not a supported prime: {self.p}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self):
        return "Q" if self.p == 0 else f"F{self.p}"

    @classmethod
    def parse(cls, s) -> "Field":
        if isinstance(s, Field):
            return s
        s = str(s).strip()
        if s in ("Q", "QQ", "rationals", "0"):
            return cls(0)
        for pre in ("F", "GF", "Fp"):
            if s.startswith(pre) and s[len(pre):].isdigit():
                return cls(int(s[len(pre):]))
        if s.isdigit():
            return cls(int(s))
        raise LinAlgError(f"unknown field {s!r}")

    # scalars -----------------------------------------------------------
    def scalar(self, x):
        """Canonical python scalar: Fraction over Q, int in [0, p) over F_p."""
        if isinstance(x, str):
            x = x.strip()
            if self.p == 0:
                return Fraction(x)
            if "/" in x:
                a, b = x.split("/")
                return int(a) * pow(int(b), -1, self.p) % self.p
            return int(x) % self.p
        if isinstance(x, flint.fmpq):
            x = Fraction(int(x.p), int(x.q))
        elif isinstance(x, flint.nmod):
            x = int(x)
        if self.p == 0:
            return Fraction(x)
        x = Fraction(x)
        return x.numerator * pow(x.denominator, -1, self.p) % self.p

    def fmt(self, x) -> str:
        x = self.scalar(x)
        if self.p:
            return str(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def _zero_raw(self, r: int, c: int):
        return flint.fmpq_mat(r, c) if self.p == 0 else flint.nmod_mat(r, c, self.p)

    def _raw(self, r: int, c: int, entries: Sequence):
        if self.p == 0:
            vals = [e if isinstance(e, (int, flint.fmpq)) else flint.fmpq(e.numerator, e.denominator)
                    for e in entries]
            return flint.fmpq_mat(r, c, vals)
        return flint.nmod_mat(r, c, [int(e) % self.p if not isinstance(e, Fraction)
                                     else self.scalar(e) for e in entries], self.p)


QQ = Field(0)


class Mat:
    """Immutable exact matrix."""

    __slots__ = ("field", "raw", "nrows", "ncols", "_hash")

    def __init__(self, field: Field, raw):
        self.field = field
        self.raw = raw
        self.nrows = raw.nrows()
        self.ncols = raw.ncols()
        self._hash = None

    # construction ------------------------------------------------------
    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], ncols: int | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise LinAlgError("ragged rows")
        flat = [field.scalar(x) if isinstance(x, str) else x for r in rows for x in r]
        return cls(field, field._raw(len(rows), ncols, flat))

    @classmethod
    def zeros(cls, field: Field, r: int, c: int) -> "Mat":
        return cls(field, field._zero_raw(r, c))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        return cls(field, field._raw(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)]))

    @classmethod
    def from_sparse(cls, field: Field, r: int, c: int, entries: dict) -> "Mat":
        raw = field._zero_raw(r, c)
        for (i, j), x in entries.items():
            if x != 0:
                if field.p:
                    raw[i, j] = field.scalar(x)
                else:
                    x = Fraction(x)
                    raw[i, j] = flint.fmpq(x.numerator, x.denominator)
        return cls(field, raw)

    @classmethod
    def column(cls, field: Field, v: Sequence) -> "Mat":
        return cls.from_rows(field, [[x] for x in v], 1)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence], nrows: int) -> "Mat":
        return cls.from_rows(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    # access ------------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def entries(self) -> list:
        if self.field.p:
            return [int(x) for x in self.raw.entries()]
        return [int(x.p) if x.q == 1 else Fraction(int(x.p), int(x.q)) for x in self.raw.entries()]

    def rows(self) -> list[list]:
        e = self.entries()
        c = self.ncols
        return [e[i * c:(i + 1) * c] for i in range(self.nrows)]

    def col(self, j: int) -> list:
        return [self.field.scalar(self.raw[i, j]) for i in range(self.nrows)]

    def columns(self) -> list[list]:
        r = self.rows()
        return [[r[i][j] for i in range(self.nrows)] for j in range(self.ncols)]

    def __getitem__(self, ij):
        return self.field.scalar(self.raw[ij[0], ij[1]])

    def to_json(self) -> list[list[str]]:
        return [[self.field.fmt(x) for x in r] for r in self.rows()]

    # algebra -----------------------------------------------------------
    def _check(self, other: "Mat"):
        if self.field != other.field:
            raise LinAlgError("field mismatch")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.ncols != other.nrows:
            raise LinAlgError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.ncols == 0:
            return Mat.zeros(self.field, self.nrows, other.ncols)
        return Mat(self.field, self.raw * other.raw)

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise LinAlgError("shape mismatch in sum")
        return Mat(self.field, self.raw + other.raw)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.shape != other.shape:
            raise LinAlgError("shape mismatch in difference")
        return Mat(self.field, self.raw - other.raw)

    def __neg__(self) -> "Mat":
        return Mat(self.field, -self.raw)

    def scale(self, c) -> "Mat":
        c = self.field.scalar(c)
        if self.nrows * self.ncols == 0:
            return self
        if self.field.p == 0:
            return Mat(self.field, self.raw * flint.fmpq(c.numerator, c.denominator))
        return Mat(self.field, self.raw * int(c))

    def T(self) -> "Mat":
        return Mat(self.field, self.raw.transpose())

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and (self.nrows * self.ncols == 0 or self.raw == other.raw))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.shape, tuple(self.entries())))
        return self._hash

    def __repr__(self):
        return f"Mat({self.field}, {self.to_json()})"

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.raw.entries())

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == Mat.identity(self.field, self.nrows)

    def rank(self) -> int:
        if self.nrows * self.ncols == 0:
            return 0
        return self.raw.rank()

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Mat":
        rows, cols = list(rows), list(cols)
        r = self.rows()
        return Mat.from_rows(self.field, [[r[i][j] for j in cols] for i in rows], len(cols))


# block constructions -----------------------------------------------------

def hstack(field: Field, mats: Sequence[Mat], nrows: int | None = None) -> Mat:
    if not mats:
        return Mat.zeros(field, nrows or 0, 0)
    n = mats[0].nrows
    if any(m.nrows != n for m in mats):
        raise LinAlgError("hstack row mismatch")
    rows = [[] for _ in range(n)]
    for m in mats:
        for i, r in enumerate(m.rows()):
            rows[i].extend(r)
    return Mat.from_rows(field, rows, sum(m.ncols for m in mats))


def vstack(field: Field, mats: Sequence[Mat], ncols: int | None = None) -> Mat:
    if not mats:
        return Mat.zeros(field, 0, ncols or 0)
    c = mats[0].ncols
    if any(m.ncols != c for m in mats):
        raise LinAlgError("vstack column mismatch")
    rows = []
    for m in mats:
        rows.extend(m.rows())
    return Mat.from_rows(field, rows, c)


def block_diag(field: Field, mats: Sequence[Mat]) -> Mat:
    R = sum(m.nrows for m in mats)
    C = sum(m.ncols for m in mats)
    out = [[0] * C for _ in range(R)]
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m.rows()):
            out[r0 + i][c0:c0 + m.ncols] = row
        r0 += m.nrows
        c0 += m.ncols
    return Mat.from_rows(field, out, C)


def kron(a: Mat, b: Mat) -> Mat:
    a._check(b)
    ar, br = a.rows(), b.rows()
    rows = []
    for i in range(a.nrows):
        for k in range(b.nrows):
            rows.append([x * y for x in ar[i] for y in br[k]])
    return Mat.from_rows(a.field, rows, a.ncols * b.ncols)


# echelon forms -----------------------------------------------------------

def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form with zero rows kept, and the pivot columns."""
    if m.nrows * m.ncols == 0:
        return m, []
    raw, rk = m.raw.rref()
    pivots = []
    j = 0
    for i in range(rk):
        while raw[i, j] == 0:
            j += 1
        pivots.append(j)
        j += 1
    return Mat(m.field, raw), pivots


def _row_space(field: Field, rows: Sequence[Sequence], n: int) -> "Subspace":
    if not rows:
        return Subspace.zero(field, n)
    red, piv = rref(Mat.from_rows(field, rows, n))
    return Subspace(field, n, red.submatrix(range(len(piv)), range(n)), tuple(piv))


class Subspace:
    """Subspace of field^n given by an RREF basis (rows)."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: Field, ambient: int, basis: Mat, pivots: tuple):
        self.field = field
        self.ambient = ambient
        self.basis = basis
        self.pivots = pivots

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, Mat.zeros(field, 0, n), ())

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, Mat.identity(field, n), tuple(range(n)))

    @classmethod
    def span(cls, field: Field, vectors: Sequence[Sequence], n: int) -> "Subspace":
        return _row_space(field, [list(v) for v in vectors], n)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> list[list]:
        return self.basis.rows()

    def inclusion(self) -> Mat:
        """ambient x dim matrix whose columns are the basis vectors."""
        return self.basis.T()

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field == other.field and self.ambient == other.ambient
                and self.pivots == other.pivots and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient, self.pivots, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}/{self.ambient}, {self.basis.to_json()})"

    def _check(self, other: "Subspace"):
        if self.ambient != other.ambient or self.field != other.field:
            raise LinAlgError("ambient mismatch")

    def coords(self, v: Sequence) -> list | None:
        """Coordinates of v in the basis, or None if v is not in the subspace."""
        v = list(v)
        if len(v) != self.ambient:
            raise LinAlgError("vector length mismatch")
        c = [v[p] for p in self.pivots]
        rest = list(v)
        for ci, row in zip(c, self.vectors()):
            if ci != 0:
                rest = [a - ci * b for a, b in zip(rest, row)]
        if self.field.p:
            rest = [x % self.field.p for x in rest]
        if any(x != 0 for x in rest):
            return None
        return [self.field.scalar(x) for x in c]

    def coords_matrix(self, m: Mat) -> Mat:
        """Coordinates of each column of m; raises if some column is outside."""
        if m.nrows != self.ambient:
            raise LinAlgError("ambient mismatch")
        if self.dim == 0:
            if not m.is_zero():
                raise LinAlgError("column outside subspace")
            return Mat.zeros(self.field, 0, m.ncols)
        c = m.submatrix(self.pivots, range(m.ncols))
        if self.inclusion() @ c != m:
            raise LinAlgError("column outside subspace")
        return c

    def contains(self, v: Sequence) -> bool:
        return self.coords(v) is not None

    def contains_space(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.vectors())

    def annihilator(self) -> "Subspace":
        return kernel_basis(self.basis) if self.dim else Subspace.full(self.field, self.ambient)


def kernel_basis(m: Mat) -> Subspace:
    n = m.ncols
    if m.nrows == 0:
        return Subspace.full(m.field, n)
    red, piv = rref(m)
    raw = red.raw
    pset = set(piv)
    free = [j for j in range(n) if j not in pset]
    sc = m.field.scalar
    vecs = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, p in enumerate(piv):
            x = raw[i, f]
            if x != 0:
                v[p] = -sc(x)
        vecs.append(v)
    return Subspace.span(m.field, vecs, n)


def image_basis(m: Mat) -> Subspace:
    return _row_space(m.field, m.T().rows(), m.nrows)


def rank(m: Mat) -> int:
    return m.rank()


def solve(m: Mat, b: Mat) -> Mat | None:
    """Some X with m X = b (b may have several columns), or None."""
    if b.nrows != m.nrows:
        raise LinAlgError("shape mismatch in solve")
    n, k = m.ncols, b.ncols
    if m.nrows == 0:
        return Mat.zeros(m.field, n, k)
    aug = hstack(m.field, [m, b])
    red, piv = rref(aug)
    if any(p >= n for p in piv):
        return None
    rows = red.rows()
    x = [[0] * k for _ in range(n)]
    for i, p in enumerate(piv):
        x[p] = rows[i][n:]
    return Mat.from_rows(m.field, x, k)


def inverse(m: Mat) -> Mat:
    if m.nrows != m.ncols:
        raise LinAlgError("not square")
    if m.nrows == 0:
        return m
    if m.rank() != m.nrows:
        raise LinAlgError("singular matrix")
    return Mat(m.field, m.raw.inv())


def is_invertible(m: Mat) -> bool:
    return m.nrows == m.ncols and m.rank() == m.nrows


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    return Subspace.span(a.field, a.vectors() + b.vectors(), a.ambient)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    eqs = a.annihilator().vectors() + b.annihilator().vectors()
    if not eqs:
        return Subspace.full(a.field, a.ambient)
    return kernel_basis(Mat.from_rows(a.field, eqs, a.ambient))


def preimage(m: Mat, s: Subspace) -> Subspace:
    if m.nrows != s.ambient:
        raise LinAlgError("ambient mismatch in preimage")
    ann = s.annihilator()
    if ann.dim == 0:
        return Subspace.full(m.field, m.ncols)
    return kernel_basis(ann.basis @ m)


def image_of(m: Mat, s: Subspace) -> Subspace:
    if m.ncols != s.ambient:
        raise LinAlgError("ambient mismatch in image")
    if s.dim == 0:
        return Subspace.zero(m.field, m.nrows)
    return image_basis(m @ s.inclusion())


def contains(a: Subspace, v: Sequence) -> bool:
    return a.contains(v)


@dataclass(frozen=True, eq=False)
class Quotient:
    ambient: int
    kernel: Subspace
    projection: Mat
    section: Mat

    @property
    def dim(self) -> int:
        return self.projection.nrows


def quotient(n: int, s: Subspace) -> Quotient:
    """Quotient field^n / s with coordinates on the non-pivot columns of s."""
    if s.ambient != n:
        raise LinAlgError("ambient mismatch in quotient")
    f = s.field
    piv = set(s.pivots)
    free = [j for j in range(n) if j not in piv]
    brows = s.vectors()
    where = {p: i for i, p in enumerate(s.pivots)}
    proj = [[0] * n for _ in free]
    for c in range(n):
        if c in piv:
            row = brows[where[c]]
            for k, j in enumerate(free):
                proj[k][c] = -row[j]
        else:
            proj[free.index(c)][c] = 1
    sec = [[1 if free[k] == r else 0 for k in range(len(free))] for r in range(n)]
    return Quotient(n, s, Mat.from_rows(f, proj, n), Mat.from_rows(f, sec, len(free)))
