"""Command line front end: gliders <verb> ...

Exit status: 0 success, 1 a predicate came out false (or a law suite failed),
2 malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures, laws
from .exactlin import Field
from .files import (InputError, algebra_doc, dump, load_algebra, load_file,
                    load_filtration, load_mor, load_rep, mor_doc, read_json, rep_doc)
from .filtalg import (INF, AlgebraError, group_algebra, one_step_filtration, validate_algebra,
                      validate_bialgebra, validate_bialgebra_filtration, validate_filtration)
from .glider import (GliderError, GliderMor, coker_glid, coker_preglid, envelope_L, glid_hom, glider_mor,
                     glider_reflection, im_preglid, induce_jshriek, is_conflation_glid, is_deflation_glid,
                     is_deflation_preglid, is_glider, is_inflation_glid, is_inflation_preglid, is_natural,
                     is_preglider, is_prefragment, kappa, ker_glid, ker_preglid, naturalize, restrict_jstar)
from .groups import dihedral8, groups_isomorphic, quaternion8
from .monoidal import TensorContext, TensorError, check_semi_hopf, tensor_rep
from .repmod import (RepError, cokernel_pointwise, hom_space, image_pointwise, kernel, validate_mor,
                     validate_rep)
from .tannaka import TannakaError, end_of_fiber, fiber_setup, group_report


def _dims(m) -> dict:
    return {str(o): m.dims[o] for o in m.companion.objects}


def _short(m) -> str:
    return ", ".join(f"{o}:{d}" for o, d in _dims(m).items())


class Report:
    """Ordered facts plus embedded documents; printed as key=value lines or JSON."""

    def __init__(self, verb: str):
        self.verb = verb
        self.facts: dict = {}
        self.objects: dict = {}
        self.ok = True

    def fact(self, key: str, value, predicate: bool = False):
        self.facts[key] = value
        if predicate and value is False:
            self.ok = False

    def obj(self, key: str, doc: dict, summary: str):
        self.objects[key] = doc
        self.facts[key] = summary

    def to_json(self) -> dict:
        return {"verb": self.verb, "facts": self.facts, "objects": self.objects}

    def render(self) -> str:
        out = []
        for k, v in self.facts.items():
            out.append(f"{k}={_human(v)}")
        return "\n".join(out)


def _human(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _emit(r: Report, args) -> int:
    if args.json:
        print(json.dumps(r.to_json(), sort_keys=True, ensure_ascii=False))
    else:
        print(r.render())
    if getattr(args, "out", None):
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for k, doc in r.objects.items():
            (d / f"{k}.json").write_text(dump(doc) + "\n")
    return 0 if r.ok else 1


def _fail(msg: str) -> InputError:
    return InputError("argument", msg)


# loaders ------------------------------------------------------------------

def _rep(path: str):
    return load_rep(read_json(path), f"{path}:$")


def _mor(path: str):
    return load_mor(read_json(path), f"{path}:$")


def _need_preglider(m, what: str):
    if not m.companion.extended or not is_preglider(m):
        raise _fail(f"{what} must be a preglider (a rep of the extended companion with injective maps to inf)")


def _glider_mor(f, path: str) -> GliderMor:
    if not f.companion.extended:
        raise InputError(path, "glider morphisms are given by preglider morphisms (extended companion)")
    _need_preglider(f.source, "source")
    _need_preglider(f.target, "target")
    return glider_mor(f)


def _category(args, c) -> str:
    return args.category or ("preglid" if c.extended else "prefrag")


# verbs --------------------------------------------------------------------

def cmd_validate(args) -> Report:
    r = Report("validate")
    kind, obj, d = load_file(args.file)
    r.fact("kind", kind)
    if kind == "rep":
        r.fact("valid", validate_rep(obj), True)
        r.fact("dims", _dims(obj))
        r.fact("is_prefragment", is_prefragment(obj))
        if obj.companion.extended:
            r.fact("is_preglider", is_preglider(obj))
    elif kind == "morphism":
        r.fact("valid", validate_mor(obj), True)
    else:
        A, b = obj
        r.fact("dim", A.dim)
        r.fact("field", str(A.field))
        r.fact("algebra_valid", validate_algebra(A), True)
        if "filtration" in d:
            F = load_filtration(d, A, f"{args.file}:$")
            r.fact("filtration_valid", validate_filtration(F), True)
            if b is not None:
                r.fact("bialgebra_filtration_valid", validate_bialgebra_filtration(b, F), True)
        if b is not None:
            r.fact("bialgebra_valid", validate_bialgebra(b), True)
    return r


def cmd_hom(args) -> Report:
    r = Report("hom")
    m, n = _rep(args.rep_a), _rep(args.rep_b)
    if m.companion != n.companion:
        raise _fail("the two reps live over different companions")
    cat = _category(args, m.companion)
    if cat == "preglid":
        _need_preglider(m, "first rep")
        _need_preglider(n, "second rep")
        basis = hom_space(m, n)
    elif cat == "prefrag":
        mm = restrict_jstar(m) if m.companion.extended else m
        nn = restrict_jstar(n) if n.companion.extended else n
        basis = hom_space(mm, nn)
    elif cat == "glid":
        _need_preglider(m, "first rep")
        _need_preglider(n, "second rep")
        basis = [g.data for g in glid_hom(m, n)]
    else:
        raise _fail(f"unknown category {cat!r}")
    r.fact("category", cat)
    r.fact("dim", len(basis))
    for i, b in enumerate(basis):
        r.obj(f"basis{i}", mor_doc(b), "morphism")
    return r


def _universal(args, which: str) -> Report:
    r = Report(which)
    f = _mor(args.mor)
    cat = args.category or ("preglid" if f.companion.extended else "rep")
    r.fact("category", cat)
    if cat == "rep":
        op = {"kernel": kernel, "cokernel": cokernel_pointwise, "image": image_pointwise}[which]
        X, u = op(f)
    elif cat == "preglid":
        _need_preglider(f.source, "source")
        _need_preglider(f.target, "target")
        op = {"kernel": ker_preglid, "cokernel": coker_preglid, "image": im_preglid}[which]
        X, u = op(f)
    elif cat == "glid":
        g = _glider_mor(f, args.mor)
        if which == "kernel":
            X, q = ker_glid(g)
        elif which == "cokernel":
            X, q = coker_glid(g)
        else:
            _, c = coker_glid(g)
            X, q = ker_glid(c)
        u = q.data
        r.fact("levels", {str(l): X.dims[l] for l in X.companion.lam})
    else:
        raise _fail(f"unknown category {cat!r}")
    r.obj("object", rep_doc(X), _short(X))
    r.obj("map", mor_doc(u), f"{_short(u.source)} -> {_short(u.target)}")
    return r


def cmd_is_glider(args) -> Report:
    r = Report("is-glider")
    m = _rep(args.rep)
    p = restrict_jstar(m) if m.companion.extended else m
    if not is_prefragment(p):
        raise _fail("input is not a prefragment")
    r.fact("is_glider", is_glider(p), True)
    return r


def cmd_reflect(args) -> Report:
    r = Report("reflect")
    m = _rep(args.rep)
    if m.companion.extended:
        X, u = kappa(m)
        r.fact("reflection", "preglider (kappa)")
    else:
        X, u = glider_reflection(m)
        r.fact("reflection", "glider (kappa j_!)")
    r.obj("object", rep_doc(X), _short(X))
    r.obj("unit", mor_doc(u), f"{_short(u.source)} -> {_short(u.target)}")
    return r


def cmd_envelope(args) -> Report:
    r = Report("envelope")
    m = _rep(args.rep)
    _need_preglider(m, "input")
    L, eps = envelope_L(m)
    r.obj("object", rep_doc(L), _short(L))
    r.obj("counit", mor_doc(eps), f"{_short(eps.source)} -> {_short(eps.target)}")
    return r


def cmd_naturalize(args) -> Report:
    r = Report("naturalize")
    m = _rep(args.rep)
    _need_preglider(m, "input")
    r.fact("input_is_natural", is_natural(m))
    X, u = naturalize(m)
    r.obj("object", rep_doc(X), _short(X))
    r.obj("unit", mor_doc(u), f"{_short(u.source)} -> {_short(u.target)}")
    return r


def cmd_predicate(args) -> Report:
    verb = args.verb
    r = Report(verb)
    f = _mor(args.mor)
    cat = args.category or "glid"
    r.fact("category", cat)
    if verb == "is-conflation":
        g = _mor(args.mor2)
        if cat != "glid":
            raise _fail("is-conflation is implemented for the glider category only")
        r.fact("is_conflation", is_conflation_glid(_glider_mor(f, args.mor), _glider_mor(g, args.mor2)), True)
        return r
    if cat == "glid":
        q = _glider_mor(f, args.mor)
        val = is_inflation_glid(q) if verb == "is-inflation" else is_deflation_glid(q)
    elif cat == "preglid":
        _need_preglider(f.source, "source")
        _need_preglider(f.target, "target")
        val = is_inflation_preglid(f) if verb == "is-inflation" else is_deflation_preglid(f)
    else:
        raise _fail(f"unknown category {cat!r}")
    r.fact(verb.replace("-", "_"), val, True)
    return r


def _context(path: str, lam):
    d = read_json(path)
    where = f"{path}:$"
    A, b = load_algebra(d, where)
    if b is None:
        raise InputError(where, "context needs a bialgebra (comult and counit, or a group table)")
    F = load_filtration(d, A, where)
    try:
        return TensorContext(b, F, tuple(lam))
    except (TensorError, AlgebraError) as e:
        raise InputError(where, str(e))


def cmd_tensor(args) -> Report:
    r = Report("tensor")
    m, n = _rep(args.rep_a), _rep(args.rep_b)
    if m.companion != n.companion:
        raise _fail("the two reps live over different companions")
    ctx = _context(args.ctx, m.companion.lam)
    if ctx.filtration != m.companion.filtration:
        raise _fail("the reps do not live over the context filtration")
    T = tensor_rep(m, n, ctx)
    r.fact("semi_hopf", check_semi_hopf(ctx, m.companion.lam))
    r.obj("object", rep_doc(T, ctx.bialgebra), _short(T))
    return r


def cmd_reconstruct(args) -> Report:
    r = Report("reconstruct")
    d = read_json(args.ctx)
    where = f"{args.ctx}:$"
    A, b = load_algebra(d, where)
    s = fiber_setup(b if b is not None else A)
    res = end_of_fiber(s)
    r.fact("projective_hom_pattern", list(s.pattern))
    for k, v in res.to_json().items():
        r.fact(k, v, k in ("is_algebra_iso", "is_bialgebra_iso") and v is not None)
    if args.grouplikes:
        p = args.grouplikes
        try:
            _, bp = load_algebra(d, where, Field(p))
        except (InputError, ValueError) as e:
            raise _fail(f"cannot reduce the bialgebra mod {p}: {e}")
        if bp is None:
            raise _fail("grouplikes need a bialgebra")
        for k, v in group_report(bp).items():
            r.fact(k, v)
        r.fact("grouplike_count", len(r.facts["grouplikes"]))
    return r


def cmd_laws(args) -> int:
    if args.suite not in laws.SUITES:
        raise _fail(f"unknown suite {args.suite!r}; choose from {', '.join(laws.SUITES)}")
    rep = laws.SUITES[args.suite](args.seed, args.count, start=args.start)
    text = laws.to_jsonl(rep)
    if text:
        print(text)
    bad = sum(e["status"] == "fail" for e in rep)
    if not args.json:
        print(f"suite={args.suite} seed={args.seed} passed={len(rep) - bad}/{len(rep)}", file=sys.stderr)
    return 1 if bad else 0


# demos --------------------------------------------------------------------

def demo_s3(r: Report):
    e = fixtures.s3_standard()
    M, N, S = e.objects["M"], e.objects["N"], e.objects["S"]
    r.fact("is_glider(M)", is_glider(restrict_jstar(M)))
    r.fact("is_glider(N)", is_glider(restrict_jstar(N)))
    r.fact("is_glider(S)", is_glider(S))
    r.fact("dim j_!(S)(inf)", induce_jshriek(S).dims[INF])
    C, _ = coker_glid(glider_mor(e.morphisms["f"]))
    r.fact("coker_glid(f)", {str(l): C.dims[l] for l in C.companion.lam})
    return e


def demo_s3_chain(r: Report):
    e = fixtures.s3_chain2()
    Qf, Qg = e.morphisms["Qf"], e.morphisms["Qg"]
    r.fact("is_inflation_glid(f)", is_inflation_glid(Qf))
    r.fact("is_inflation_glid(g)", is_inflation_glid(Qg))
    r.fact("is_inflation_glid(g∘f)", is_inflation_glid(Qg @ Qf))
    r.fact("is_inflation_preglid(g∘f)", is_inflation_preglid(e.morphisms["g"] @ e.morphisms["f"]))
    C, _ = coker_glid(Qf)
    r.fact("coker_glid(f)", {str(l): C.dims[l] for l in C.companion.lam})
    return e


def demo_kt(r: Report, N: int):
    e = fixtures.kt_trunc(N)
    m = e.morphisms
    r.fact("N", N)
    r.fact("is_inflation_glid(Q(g∘f))", is_inflation_glid(m["Qgf"]))
    r.fact("is_inflation_glid(Q(h))", is_inflation_glid(m["Qh"]))
    r.fact("is_inflation_glid(Q(h∘g∘f))", is_inflation_glid(m["Qhgf"]))
    C, _ = coker_glid(m["Qhgf"])
    r.fact("coker_glid(Q(h∘g∘f))", {str(l): C.dims[l] for l in C.companion.lam})
    P, _ = coker_preglid(m["hgf"])
    r.fact("coker_preglid(h∘g∘f)", _dims(P))
    r.fact("formula_oracle(h∘g∘f)", laws.oracle_check(m["hgf"]))
    return e


def demo_easy(r: Report):
    e = fixtures.easy_gliders()
    M, N = e.objects["M"], e.objects["N"]
    r.fact("dim Hom_Preglid(M,N)", len(hom_space(M, N)))
    r.fact("dim Hom_Glid(M,N)", len(glid_hom(M, N)))
    r.fact("is_weak_iso(s)", e.morphisms["s"].is_iso(M.companion.lam))
    return e


def demo_d8q8(r: Report):
    p = Field(3)
    tables = {"D8": dihedral8()[1], "Q8": quaternion8()[1]}
    found = {}
    for name, t in tables.items():
        b = group_algebra(t, p)
        res = end_of_fiber(fiber_setup(b))
        g = group_report(b)
        found[name] = g["group_table"]
        r.fact(f"is_bialgebra_iso({name})", res.is_bialgebra_iso)
        r.fact(f"grouplikes({name})", len(g["grouplikes"]))
        r.fact(f"involutions({name})", g["involution_count"])
        r.fact(f"grouplikes_match_source({name})", groups_isomorphic(g["group_table"], t))
    r.fact("groups_isomorphic", groups_isomorphic(found["D8"], found["Q8"]))
    return None


def _emit_demo_files(name: str, e, outdir: Path):
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    if e is None:
        p = Field(3)
        for g, t in (("d8", dihedral8()[1]), ("q8", quaternion8()[1])):
            b = group_algebra(t, p)
            path = outdir / f"{name}_{g}_f3.json"
            path.write_text(dump(algebra_doc(b.algebra, one_step_filtration(b.algebra), b)) + "\n")
            written.append(path.name)
        return written
    path = outdir / f"{name}_companion.json"
    c = e.companion
    doc = algebra_doc(c.algebra, c.filtration, fixtures.s3_bialgebra() if name.startswith("s3") else None)
    doc.update({"lambda": list(c.lam), "extended": c.extended})
    path.write_text(dump(doc) + "\n")
    written.append(path.name)
    for k, m in e.objects.items():
        path = outdir / f"{name}_{k}.json"
        path.write_text(dump(rep_doc(m)) + "\n")
        written.append(path.name)
    for k, f in e.morphisms.items():
        if isinstance(f, GliderMor):
            continue  # stored through its preglider representative
        path = outdir / f"{name}_{k}.json"
        path.write_text(dump(mor_doc(f)) + "\n")
        written.append(path.name)
    return written


def cmd_demo(args) -> Report:
    r = Report("demo")
    name = args.name
    r.fact("demo", name)
    if name == "s3":
        e = demo_s3(r)
    elif name == "s3-chain":
        e = demo_s3_chain(r)
    elif name == "kt-trunc":
        N = args.N if args.N is not None else 4
        if N < 4:
            raise _fail("kt-trunc needs N >= 4")
        e = demo_kt(r, N)
    elif name == "easy-gliders":
        e = demo_easy(r)
    elif name == "d8q8":
        e = demo_d8q8(r)
    else:
        raise _fail(f"unknown demo {name!r}")
    if args.emit_files:
        r.fact("emitted", _emit_demo_files(name.replace("-", "_"), e, Path(args.emit_files)))
    return r


# argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gliders", description="Exact computations with glider representations.")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help):
        s = sub.add_parser(name, help=help)
        s.set_defaults(fn=fn)
        s.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        s.add_argument("--out", help="write embedded documents into this directory")
        return s

    s = verb("validate", cmd_validate, "check an algebra, rep or morphism file")
    s.add_argument("file")
    s = verb("hom", cmd_hom, "basis of a hom-space")
    s.add_argument("rep_a")
    s.add_argument("rep_b")
    s.add_argument("--category", choices=["preglid", "prefrag", "glid"])
    for name in ("kernel", "cokernel", "image"):
        s = verb(name, lambda a, n=name: _universal(a, n), f"{name} of a morphism")
        s.add_argument("mor")
        s.add_argument("--category", choices=["rep", "preglid", "glid"])
    s = verb("is-glider", cmd_is_glider, "is a prefragment a glider")
    s.add_argument("rep")
    s = verb("reflect", cmd_reflect, "preglider reflection of a rep, or glider reflection of a prefragment")
    s.add_argument("rep")
    s = verb("envelope", cmd_envelope, "L(m) and its counit")
    s.add_argument("rep")
    s = verb("naturalize", cmd_naturalize, "natural glider of a preglider")
    s.add_argument("rep")
    for name in ("is-inflation", "is-deflation"):
        s = verb(name, cmd_predicate, f"{name[3:]} test")
        s.add_argument("mor")
        s.add_argument("--category", choices=["glid", "preglid"])
    s = verb("is-conflation", cmd_predicate, "conflation test for a composable pair")
    s.add_argument("mor")
    s.add_argument("mor2")
    s.add_argument("--category", choices=["glid"])
    s = verb("tensor", cmd_tensor, "pointwise tensor product over a bialgebra filtration")
    s.add_argument("ctx")
    s.add_argument("rep_a")
    s.add_argument("rep_b")
    s = verb("reconstruct", cmd_reconstruct, "recover the (bi)algebra from the one-step glider category")
    s.add_argument("ctx")
    s.add_argument("--grouplikes", type=int, metavar="P", help="also list grouplikes over F_P")
    s = verb("laws", cmd_laws, "run a seeded law suite, JSON lines on stdout")
    s.add_argument("suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=50)
    s.add_argument("--start", type=int, default=0)
    s = verb("demo", cmd_demo, "built-in examples")
    s.add_argument("name", choices=["s3", "s3-chain", "kt-trunc", "easy-gliders", "d8q8"])
    s.add_argument("N", nargs="?", type=int)
    s.add_argument("--emit-files", metavar="DIR")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.fn(args)
        if isinstance(out, int):
            return out
        return _emit(out, args)
    except (InputError, GliderError, RepError, AlgebraError, TensorError, TannakaError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
