"""JSON encodings for every object kind, with exact scalars as strings.

Each document is a JSON object with a ``"kind"`` discriminator.  ``load``
dispatches on it; ``dump`` is the inverse, so ``load(dump(x)) == x`` for
every supported object.  docs/schemas.md lists the layouts field by field.
"""

from __future__ import annotations

import json

from gmpy2 import mpq

from .dga import DGA, GysinInput
from .deformation import LieAlgebra
from .errors import ParseError
from .exact import QI, LinearMap, Subspace, format_scalar, parse_scalar
from .filtrations import DEC, INC, FilteredSpace
from .hodge import MHS, BigradedSpace, WeightGradedSpace
from .spectral import FilteredComplex
from .splittings import FRep, SHSObject, STSObject
from .thom_whitney import CosimplicialDGA, Graph1D, constant_cosimplicial, function_cosimplicial


# -- scalars, vectors, matrices -----------------------------------------------------------

def scalar(x) -> str:
    return format_scalar(x)


def _scalar_in(text, where):
    try:
        return parse_scalar(text)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar {text!r} in {where}", witness={"at": where}) from exc


def vector(v) -> list:
    return [scalar(x) for x in v]


def matrix(m: LinearMap) -> dict:
    return {"rows": m.cod, "cols": m.dom, "entries": [vector(r) for r in m.rows]}


def _matrix_in(obj, where) -> LinearMap:
    try:
        rows = [[_scalar_in(x, where) for x in r] for r in obj["entries"]]
        return LinearMap(tuple(tuple(r) for r in rows), int(obj["cols"]), int(obj["rows"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed matrix in {where}", witness={"at": where}) from exc
    except Exception as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"inconsistent matrix in {where}: {exc}", witness={"at": where}) from exc


def subspace(s: Subspace) -> list:
    return [vector(b) for b in s.basis]


def _subspace_in(basis, ambient, where) -> Subspace:
    vecs = [[_scalar_in(x, where) for x in v] for v in basis]
    if any(len(v) != ambient for v in vecs):
        raise ParseError(f"basis vector of the wrong length in {where}", witness={"at": where})
    return Subspace.span(vecs, ambient)


def _need(obj, key, where):
    if key not in obj:
        raise ParseError(f"missing field {key!r} in {where}", witness={"at": where, "field": key})
    return obj[key]


# -- filtrations and Hodge objects ---------------------------------------------------------

def _filtration_out(f: FilteredSpace) -> dict:
    return {"direction": f.direction, "dim": f.ambient,
            "steps": [{"index": i, "basis": subspace(s)} for i, s in f.steps]}


def _filtration_in(obj, where="filtration", dim=None) -> FilteredSpace:
    direction = _need(obj, "direction", where)
    if direction not in (INC, DEC):
        raise ParseError(f"direction must be 'inc' or 'dec' in {where}", witness={"at": where})
    ambient = int(obj.get("dim", dim if dim is not None else -1))
    if ambient < 0:
        raise ParseError(f"missing dimension in {where}", witness={"at": where})
    steps = {int(_need(s, "index", where)): _subspace_in(_need(s, "basis", where), ambient, where)
             for s in _need(obj, "steps", where)}
    return FilteredSpace.from_steps(ambient, direction, steps)


def _bigrading_out(g: BigradedSpace) -> list:
    return [{"p": p, "q": q, "basis": subspace(s)} for (p, q), s in g.pieces]


def _bigrading_in(items, dim, where) -> BigradedSpace:
    return BigradedSpace.build(dim, {(int(_need(i, "p", where)), int(_need(i, "q", where))):
                                     _subspace_in(_need(i, "basis", where), dim, where) for i in items})


def _weights_out(g: WeightGradedSpace) -> list:
    return [{"weight": n, "basis": subspace(s)} for n, s in g.pieces]


def _weights_in(items, dim, where) -> WeightGradedSpace:
    return WeightGradedSpace.build(dim, {int(_need(i, "weight", where)):
                                         _subspace_in(_need(i, "basis", where), dim, where) for i in items})


def _dump_filtration(f):
    return {"kind": "filtration", **_filtration_out(f)}


def _dump_mhs(m: MHS):
    return {"kind": "mhs", "dim": m.dim, "weight": _filtration_out(m.W), "hodge": _filtration_out(m.F)}


def _load_mhs(obj):
    dim = int(_need(obj, "dim", "mhs"))
    return MHS(dim, _filtration_in(_need(obj, "weight", "mhs.weight"), "mhs.weight", dim),
               _filtration_in(_need(obj, "hodge", "mhs.hodge"), "mhs.hodge", dim))


def _dump_shs(s: SHSObject):
    return {"kind": "shs", "dim": s.dim, "bigrading": _bigrading_out(s.grading),
            "beta": [{"a": a, "b": b, "matrix": matrix(m)} for (a, b), m in s.beta]}


def _load_shs(obj):
    dim = int(_need(obj, "dim", "shs"))
    g = _bigrading_in(_need(obj, "bigrading", "shs"), dim, "shs.bigrading")
    beta = {(int(e["a"]), int(e["b"])): _matrix_in(e["matrix"], "shs.beta") for e in obj.get("beta", [])}
    return SHSObject.build(g, beta)


def _dump_frep(f: FRep):
    return {"kind": "frep", "dim": f.grading.dim, "bigrading": _bigrading_out(f.grading),
            "d": matrix(f.d.complexify())}


def _load_frep(obj):
    dim = int(_need(obj, "dim", "frep"))
    g = _bigrading_in(_need(obj, "bigrading", "frep"), dim, "frep.bigrading")
    out = FRep(g, _matrix_in(_need(obj, "d", "frep"), "frep.d").complexify())
    return out


def _dump_sts(s: STSObject):
    return {"kind": "sts", "dim": s.dim, "grading": _weights_out(s.grading),
            "beta": [{"m": m, "n": n, "matrix": matrix(b)} for (m, n), b in s.beta]}


def _load_sts(obj):
    dim = int(_need(obj, "dim", "sts"))
    g = _weights_in(_need(obj, "grading", "sts"), dim, "sts.grading")
    beta = {(int(e["m"]), int(e["n"])): _matrix_in(e["matrix"], "sts.beta") for e in obj.get("beta", [])}
    return STSObject.build(g, beta)


def _dump_pair(pair):
    src, tgt = pair
    return {"kind": "pair", "source": dump_object(src), "target": dump_object(tgt)}


def _load_pair(obj):
    return (load_object(_need(obj, "source", "pair")), load_object(_need(obj, "target", "pair")))


# -- complexes and algebras -----------------------------------------------------------------

def _dump_complex(c: FilteredComplex):
    return {"kind": "complex", "lo": c.lo,
            "degrees": [{"n": c.lo + k, "dim": d} for k, d in enumerate(c.dims)],
            "differentials": [matrix(m) for m in c.diffs],
            "filtration": [_filtration_out(f) for f in c.filt]}


def _load_complex(obj):
    degs = sorted(_need(obj, "degrees", "complex"), key=lambda e: int(e["n"]))
    lo = int(obj.get("lo", degs[0]["n"] if degs else 0))
    dims = [int(e["dim"]) for e in degs]
    diffs = [_matrix_in(m, "complex.differentials") for m in obj.get("differentials", [])]
    filt = [_filtration_in(f, "complex.filtration", d) for f, d in zip(_need(obj, "filtration", "complex"), dims)]
    return FilteredComplex.build(lo, dims, diffs, filt)


def _products_out(products) -> list:
    return [[i, j, k, scalar(c)] for (i, j), out in products for k, c in out]


def _products_in(items, where) -> dict:
    out = {}
    for t in items:
        if len(t) != 4:
            raise ParseError(f"product triples are [i, j, k, coefficient] in {where}", witness={"at": where})
        i, j, k, c = t
        out.setdefault((int(i), int(j)), {})[int(k)] = _scalar_in(c, where)
    return out


def _dump_dga(A: DGA):
    return {"kind": "dga", "degrees": list(A.degrees),
            "weights": list(A.weights) if A.weights is not None else None,
            "unit": A.unit, "products": _products_out(A.products), "differential": matrix(A.diff)}


def _load_dga(obj):
    degs = [int(x) for x in _need(obj, "degrees", "dga")]
    diff = _matrix_in(obj["differential"], "dga.differential") if obj.get("differential") else None
    w = obj.get("weights")
    unit = obj.get("unit", 0)
    return DGA.build(degs, diff, _products_in(obj.get("products", []), "dga.products"),
                     [int(x) for x in w] if w is not None else None, unit,
                     complete=bool(obj.get("complete", True)))


def _dump_gysin(G: GysinInput):
    return {"kind": "gysin",
            "entries": [{"a": a, "b": b, "dim": d} for (a, b), d in G.entries],
            "gysin": [{"a": a, "b": b, "matrix": matrix(m)} for (a, b), m in G.gysin],
            "products": _products_out(G.products), "weight_convention": G.convention}


def _load_gysin(obj):
    ent = {(int(e["a"]), int(e["b"])): int(e["dim"]) for e in _need(obj, "entries", "gysin")}
    gys = {(int(e["a"]), int(e["b"])): _matrix_in(e["matrix"], "gysin.gysin") for e in obj.get("gysin", [])}
    return GysinInput.build(ent, gys, _products_in(obj.get("products", []), "gysin.products"),
                            obj.get("weight_convention", "a+b"))


def _dump_lie(g: LieAlgebra):
    br = [[i, j, k, scalar(c)] for i in range(g.dim) for j in range(g.dim)
          for k, c in enumerate(g.brackets[i][j]) if c]
    return {"kind": "lie", "dim": g.dim, "brackets": br}


def _load_lie(obj):
    table = {}
    for i, j, k, c in obj.get("brackets", []):
        table.setdefault((int(i), int(j)), {})[int(k)] = _scalar_in(c, "lie.brackets")
    return LieAlgebra.build(int(_need(obj, "dim", "lie")), table)


def _dump_cosimplicial(C: CosimplicialDGA):
    return {"kind": "cosimplicial", "levels": [_dump_dga(A) for A in C.levels],
            "cofaces": [{"n": n, "i": i, "matrix": matrix(m)} for (n, i), m in sorted(C.cofaces.items())],
            "codegeneracies": [{"n": n, "j": j, "matrix": matrix(m)}
                               for (n, j), m in sorted(C.codegeneracies.items())]}


def _load_cosimplicial(obj):
    kind = obj["kind"]
    if kind == "cosimplicial-constant":
        return constant_cosimplicial(_load_dga(_need(obj, "algebra", kind)), int(obj.get("top", 2)))
    if kind == "cosimplicial-graph":
        X = Graph1D(int(_need(obj, "vertices", kind)), tuple(tuple(int(x) for x in e) for e in obj.get("edges", [])))
        return function_cosimplicial(_load_dga(_need(obj, "algebra", kind)), X, int(obj.get("top", 1)))
    levels = tuple(_load_dga(A) for A in _need(obj, "levels", kind))
    cof = {(int(e["n"]), int(e["i"])): _matrix_in(e["matrix"], "cofaces") for e in obj.get("cofaces", [])}
    cod = {(int(e["n"]), int(e["j"])): _matrix_in(e["matrix"], "codegeneracies")
           for e in obj.get("codegeneracies", [])}
    return CosimplicialDGA(levels, cof, cod)


def _load_defcone(obj):
    kind = obj["kind"]
    if kind == "defcone-input":
        return ("gysin", _load_gysin(_need(obj, "gysin", kind)), _load_lie(_need(obj, "lie", kind)))

    def tens(key):
        return [[[_scalar_in(x, key) for x in r] for r in m] for m in obj.get(key, [])]
    d2 = _matrix_in(obj["d2"], "d2") if obj.get("d2") else None
    return ("explicit", dict(h1=int(_need(obj, "h1", kind)), h0r1=int(_need(obj, "h0r1", kind)),
                             b_ww=tens("b_ww"), b_wn=tens("b_wn"), b_nn=tens("b_nn"), d2=d2))


# -- dispatch ----------------------------------------------------------------------------------

_DUMP = [
    (FilteredSpace, _dump_filtration), (MHS, _dump_mhs), (SHSObject, _dump_shs), (FRep, _dump_frep),
    (STSObject, _dump_sts), (FilteredComplex, _dump_complex), (DGA, _dump_dga), (GysinInput, _dump_gysin),
    (LieAlgebra, _dump_lie), (CosimplicialDGA, _dump_cosimplicial), (tuple, _dump_pair),
]

_LOAD = {
    "filtration": lambda o: _filtration_in(o),
    "mhs": _load_mhs, "shs": _load_shs, "frep": _load_frep, "sts": _load_sts, "pair": _load_pair,
    "complex": _load_complex, "dga": _load_dga, "gysin": _load_gysin, "lie": _load_lie,
    "cosimplicial": _load_cosimplicial, "cosimplicial-constant": _load_cosimplicial,
    "cosimplicial-graph": _load_cosimplicial,
    "defcone-input": _load_defcone, "defcone-explicit": _load_defcone,
}

KINDS = tuple(sorted(_LOAD))


def dump_object(x) -> dict:
    for cls, fn in _DUMP:
        if isinstance(x, cls):
            return fn(x)
    raise TypeError(f"no encoding for {type(x).__name__}")


def load_object(obj):
    if not isinstance(obj, dict):
        raise ParseError("a document must be a JSON object")
    kind = obj.get("kind")
    if kind not in _LOAD:
        raise ParseError(f"unknown kind {kind!r}", witness={"kind": kind, "known": list(KINDS)})
    try:
        return _LOAD[kind](obj)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        if type(exc).__module__.startswith("hodgesplit"):
            raise
        raise ParseError(f"malformed {kind} document: {exc}", witness={"kind": kind}) from exc


def dumps(x) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    obj = x if isinstance(x, dict) else dump_object(x)
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} at line {exc.lineno}",
                         witness={"line": exc.lineno, "column": exc.colno}) from exc
    return load_object(obj)


def to_json_value(x):
    """Convert result values (scalars, maps, subspaces, objects) into JSON-ready data."""
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, (mpq, QI)):
        return scalar(x)
    if isinstance(x, LinearMap):
        return matrix(x)
    if isinstance(x, Subspace):
        return subspace(x)
    if isinstance(x, dict):
        return {str(k): to_json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_json_value(v) for v in x]
    try:
        return dump_object(x)
    except TypeError:
        return str(x)
