"""JSON documents for algebras, companions, representations and morphisms.

Every document is self-contained: a rep embeds its companion (algebra, filtration,
lambda, extended flag) and a morphism embeds its source and target.
"""
from __future__ import annotations

import json
from pathlib import Path

from .exactlin import Field, LinAlgError, Mat, Subspace
from .filtalg import (INF, Algebra, AlgebraError, Bialgebra, Companion, Filtration, check_group_table,
                      companion, group_algebra, one_step_filtration)
from .repmod import Rep, RepError, RepMor, obj_key, parse_obj


class InputError(ValueError):
    """Malformed input, with a location: file and JSON path."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where
        self.msg = msg


# writing ------------------------------------------------------------------

def algebra_doc(A: Algebra, filtration: Filtration | None = None, bialgebra: Bialgebra | None = None) -> dict:
    f = A.field
    d = {"field": str(f), "dim": A.dim,
         "mult": [[[f.fmt(x) for x in v] for v in row] for row in A.mult],
         "unit": [f.fmt(x) for x in A.unit]}
    if bialgebra is not None:
        # row i of "comult" is Delta(b_i) as an n^2-vector, index i*n+j for b_i (x) b_j
        d["comult"] = bialgebra.comult.T().to_json()
        d["counit"] = bialgebra.counit.to_json()[0]
    if filtration is not None:
        lo, hi = filtration.window
        d["filtration"] = {"window": [lo, hi],
                           "layers": {str(k): filtration.layer(k).basis.to_json() for k in range(lo, hi + 1)}}
    return d


def companion_doc(c: Companion, bialgebra: Bialgebra | None = None) -> dict:
    d = algebra_doc(c.algebra, c.filtration, bialgebra)
    d["lambda"] = list(c.lam)
    d["extended"] = c.extended
    return d


def rep_doc(m: Rep, bialgebra: Bialgebra | None = None) -> dict:
    d = {"kind": "rep", "companion": companion_doc(m.companion, bialgebra)}
    d.update(m.to_json())
    return d


def mor_doc(f: RepMor) -> dict:
    d = {"kind": "morphism", "source": rep_doc(f.source), "target": rep_doc(f.target)}
    d.update(f.to_json())
    return d


def dump(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True, ensure_ascii=False)


# reading ------------------------------------------------------------------

def read_json(path: str | Path) -> dict:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise InputError(str(p), f"cannot read file ({e.strerror})")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{p}:{e.lineno}:{e.colno}", e.msg)
    if not isinstance(data, dict):
        raise InputError(f"{p}:$", "top level must be a JSON object")
    return data


def _need(d: dict, key: str, where: str):
    if not isinstance(d, dict):
        raise InputError(where, "expected an object")
    if key not in d:
        raise InputError(where, f"missing field {key!r}")
    return d[key]


def _scalar(f: Field, x, where: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise InputError(where, f"scalar must be a string or integer, got {x!r}")
    try:
        return f.scalar(x)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(where, f"bad scalar {x!r} ({e})")


def _vector(f: Field, v, n: int, where: str) -> list:
    if not isinstance(v, list) or len(v) != n:
        raise InputError(where, f"expected a list of {n} scalars")
    return [_scalar(f, x, f"{where}[{i}]") for i, x in enumerate(v)]


def _matrix(f: Field, rows, nrows: int, ncols: int, where: str) -> Mat:
    if not isinstance(rows, list) or len(rows) != nrows:
        raise InputError(where, f"expected {nrows} rows")
    return Mat.from_rows(f, [_vector(f, r, ncols, f"{where}[{i}]") for i, r in enumerate(rows)], ncols)


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        try:
            return int(str(x))
        except ValueError:
            raise InputError(where, f"expected an integer, got {x!r}")
    return x


def load_field(d: dict, where: str = "$") -> Field:
    try:
        return Field.parse(d.get("field", "Q"))
    except LinAlgError as e:
        raise InputError(f"{where}.field", str(e))


def load_algebra(d: dict, where: str = "$", field: Field | None = None) -> tuple[Algebra, Bialgebra | None]:
    """Algebra plus the bialgebra if "comult" is present. A bare group table gives its group algebra."""
    f = field or load_field(d, where)
    if "table" in d:
        table = _need(d, "table", where)
        try:
            if "order" in d and _int(d["order"], f"{where}.order") != len(table):
                raise InputError(f"{where}.order", "does not match the table size")
            check_group_table(table)
            b = group_algebra(table, f)
        except (AlgebraError, TypeError, IndexError) as e:
            raise InputError(f"{where}.table", str(e) or "malformed group table")
        return b.algebra, b
    n = _int(_need(d, "dim", where), f"{where}.dim")
    mult = _need(d, "mult", where)
    if not isinstance(mult, list) or len(mult) != n:
        raise InputError(f"{where}.mult", f"expected {n} rows")
    grid = []
    for i, row in enumerate(mult):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"{where}.mult[{i}]", f"expected {n} entries")
        grid.append(tuple(tuple(_vector(f, v, n, f"{where}.mult[{i}][{j}]")) for j, v in enumerate(row)))
    unit = _vector(f, _need(d, "unit", where), n, f"{where}.unit")
    A = Algebra(f, n, tuple(grid), tuple(unit))
    b = None
    if "comult" in d:
        rows = _matrix(f, d["comult"], n, n * n, f"{where}.comult")
        eps = _vector(f, _need(d, "counit", where), n, f"{where}.counit")
        b = Bialgebra(A, rows.T(), Mat.from_rows(f, [eps], n))
    return A, b


def load_filtration(d: dict, A: Algebra, where: str = "$") -> Filtration:
    """The "filtration" field, or the one-step filtration when it is absent."""
    fd = d.get("filtration")
    if fd is None or fd == "one-step":
        return one_step_filtration(A)
    w = f"{where}.filtration"
    win = _need(fd, "window", w)
    if not isinstance(win, list) or len(win) != 2:
        raise InputError(f"{w}.window", "expected [lo, hi]")
    lo, hi = (_int(x, f"{w}.window") for x in win)
    layers_raw = _need(fd, "layers", w)
    f, n = A.field, A.dim
    layers = {}
    for k in range(lo, hi + 1):
        rows = layers_raw.get(str(k))
        if rows is None:
            raise InputError(f"{w}.layers", f"missing layer {k}")
        if not isinstance(rows, list):
            raise InputError(f"{w}.layers.{k}", "expected a list of basis rows")
        vecs = [_vector(f, r, n, f"{w}.layers.{k}[{i}]") for i, r in enumerate(rows)]
        layers[k] = Subspace.span(f, vecs, n)
    try:
        return Filtration(A, (lo, hi), layers)
    except AlgebraError as e:
        raise InputError(w, str(e))


def load_companion(d: dict, where: str = "$") -> tuple[Companion, Bialgebra | None]:
    A, b = load_algebra(d, where)
    F = load_filtration(d, A, where)
    lam = d.get("lambda", [-1, 0])
    if not isinstance(lam, list):
        raise InputError(f"{where}.lambda", "expected a list of integers")
    lam = [_int(x, f"{where}.lambda[{i}]") for i, x in enumerate(lam)]
    try:
        return companion(F, lam, bool(d.get("extended", True))), b
    except AlgebraError as e:
        raise InputError(where, str(e))


def load_rep(d: dict, where: str = "$", c: Companion | None = None) -> Rep:
    if c is None:
        c, _ = load_companion(_need(d, "companion", where), f"{where}.companion")
    f = c.field
    if "objects" in d:
        try:
            objs = tuple(parse_obj(o) for o in d["objects"])
        except (ValueError, TypeError):
            raise InputError(f"{where}.objects", "unknown object name")
        if objs != c.objects:
            raise InputError(f"{where}.objects", f"expected {[obj_key(o) for o in c.objects]}")
    dims_raw = _need(d, "dims", where)
    dims = {}
    for o in c.objects:
        if obj_key(o) not in dims_raw:
            raise InputError(f"{where}.dims", f"missing object {obj_key(o)}")
        dims[o] = _int(dims_raw[obj_key(o)], f"{where}.dims.{obj_key(o)}")
        if dims[o] < 0:
            raise InputError(f"{where}.dims.{obj_key(o)}", "negative dimension")
    raw = {}
    for k, v in d.get("actions", {}).items():
        sep = "→" if "→" in k else "->"
        try:
            a, b = k.split(sep)
            raw[(parse_obj(a), parse_obj(b))] = (k, v)
        except ValueError:
            raise InputError(f"{where}.actions", f"bad pair key {k!r}")
    acts = {}
    for (a, b) in c.pairs:
        h = c.hom_dim(a, b)
        if (a, b) not in raw:
            if dims[a] and dims[b] and h:
                raise InputError(f"{where}.actions", f"missing actions for {obj_key(a)}→{obj_key(b)}")
            acts[(a, b)] = [Mat.zeros(f, dims[b], dims[a]) for _ in range(h)]
            continue
        k, mats = raw[(a, b)]
        w = f"{where}.actions[{k!r}]"
        if not isinstance(mats, list) or len(mats) != h:
            raise InputError(w, f"expected {h} matrices (dim hom = {h})")
        acts[(a, b)] = [_matrix(f, m, dims[b], dims[a], f"{w}[{i}]") if dims[a] and dims[b]
                        else Mat.zeros(f, dims[b], dims[a]) for i, m in enumerate(mats)]
    try:
        return Rep(c, dims, acts)
    except RepError as e:
        raise InputError(where, str(e))


def load_mor(d: dict, where: str = "$") -> RepMor:
    m = load_rep(_need(d, "source", where), f"{where}.source")
    c = m.companion
    tgt = _need(d, "target", where)
    if tgt.get("companion") is not None:
        c2, _ = load_companion(tgt["companion"], f"{where}.target.companion")
        if c2 != c:
            raise InputError(f"{where}.target.companion", "differs from the source companion")
    n = load_rep(tgt, f"{where}.target", c)
    raw = {str(k): v for k, v in _need(d, "components", where).items()}
    comps = {}
    for o in c.objects:
        rows = raw.get(obj_key(o))
        w = f"{where}.components.{obj_key(o)}"
        if rows is None or (not rows and n.dims[o] == 0):
            if rows is None and n.dims[o] and m.dims[o]:
                raise InputError(f"{where}.components", f"missing component at {obj_key(o)}")
            comps[o] = Mat.zeros(c.field, n.dims[o], m.dims[o])
        elif not m.dims[o]:
            comps[o] = Mat.zeros(c.field, n.dims[o], 0)
        else:
            comps[o] = _matrix(c.field, rows, n.dims[o], m.dims[o], w)
    return RepMor(m, n, comps)


def kind_of(d: dict) -> str:
    if "kind" in d:
        return d["kind"]
    if "components" in d:
        return "morphism"
    if "dims" in d:
        return "rep"
    if "table" in d:
        return "group"
    return "algebra"


def load_file(path: str | Path):
    """(kind, object, document) for any supported file."""
    d = read_json(path)
    where = f"{path}:$"
    k = kind_of(d)
    if k == "rep":
        return k, load_rep(d, where), d
    if k == "morphism":
        return k, load_mor(d, where), d
    if k in ("algebra", "group", "companion"):
        return k, load_algebra(d, where), d
    raise InputError(f"{where}.kind", f"unknown document kind {k!r}")


__all__ = ["InputError", "algebra_doc", "companion_doc", "rep_doc", "mor_doc", "dump", "read_json",
           "load_algebra", "load_filtration", "load_companion", "load_rep", "load_mor", "load_file",
           "kind_of", "INF"]
