"""Command-line front end: ``hodgesplit <command> --in FILE [options]``.

Exit status: 0 success, 2 parse error, 3 invariant violation, 4 mathematical
rejection, 5 truncation instability.  Reports are printed (or written to
``--out``) as canonical JSON or as indented ``key: value`` text.
"""

from __future__ import annotations

import argparse
import sys

from . import serialization as ser
from .deformation import deformation_cone, explicit_cone
from .dga import DGA, GysinInput, e2_builder, normalise_convention
from .errors import (DimensionMismatch, HodgeSplitError, InconsistentSystem, InvariantError, ParseError,
                     RejectionError, TruncationError)
from .filtrations import DEC, FilteredSpace, filtration_checks, rees_double, rees_single
from .hodge import MHS, deligne_bigrading, validate_mhs
from .homotopy import homotopy_ranks
from .spectral import FilteredComplex, dec_e1_property_check, spectral_report
from .splittings import (FRep, SHSObject, STSObject, frep_to_shs, hom_ext, mhs_to_shs, normalise_endpoints,
                         shs_to_frep, shs_to_mhs, shs_to_sts)
from .thom_whitney import CosimplicialDGA, thom_whitney

EXIT_OK, EXIT_PARSE, EXIT_INVARIANT, EXIT_REJECT, EXIT_TRUNCATION = 0, 2, 3, 4, 5

COMMANDS = ("validate", "split", "convert", "ext", "rees", "dec", "ss", "pi", "th", "defcone")


class _Unstable(Exception):
    def __init__(self, report):
        self.report = report


def _expect(obj, *types):
    if not isinstance(obj, types):
        names = "/".join(t.__name__ for t in types)
        raise ParseError(f"this command needs a {names} document, got {type(obj).__name__}")
    return obj


def _mhs_report(m: MHS) -> dict:
    rep = validate_mhs(m)
    return {"opposed": rep.ok, "failure_class": rep.failure_class,
            "per_weight": {str(n): {"pure": c.ok, "witness": c.witness} for n, c in rep.per_weight},
            "witness": ser.to_json_value(rep.witness)}


# -- commands --------------------------------------------------------------------------------

def cmd_validate(obj, opts) -> dict:
    if isinstance(obj, MHS):
        return _mhs_report(obj)
    if isinstance(obj, SHSObject):
        obj.check()
        return {"valid": True, "mhs": _mhs_report(shs_to_mhs(obj))}
    if isinstance(obj, FRep):
        obj.check()
        return {"valid": True}
    if isinstance(obj, STSObject):
        obj.check()
        rep = obj.report()
        return {"valid": True, "ranks": dict(rep.ranks), "slopes": dict(rep.slopes)}
    if isinstance(obj, FilteredSpace):
        rep = filtration_checks(obj)
        return {"exhaustive": rep.exhaustive, "hausdorff": rep.hausdorff, "ok": rep.ok,
                "bounds": list(rep.bounds) if rep.bounds else None, "witness": ser.to_json_value(rep.witness)}
    if isinstance(obj, FilteredComplex):
        obj.check()
        return {"valid": True, "dims": list(obj.dims)}
    if isinstance(obj, DGA):
        rep = obj.validate()
        return {"valid": rep.ok, "failures": [[k, w] for k, w in rep.failures],
                "weight_homogeneous_d": rep.weight_homogeneous_d}
    if isinstance(obj, GysinInput):
        G = obj.relabelled(opts.weight_convention) if opts.weight_convention else obj
        e2 = e2_builder(G)
        return {"valid": True, "weight_convention": e2.convention, "differential_label": "gysin",
                "cohomology": {str(k): v for k, v in e2.cohomology().items()}}
    if isinstance(obj, CosimplicialDGA):
        obj.check()
        return {"valid": True, "levels": len(obj.levels)}
    raise ParseError(f"validate does not accept {type(obj).__name__}")


def _summed(s: SHSObject, opts):
    return {"endpoints": opts.endpoints, "summed_beta": ser.matrix(s.summed(opts.endpoints))}


def cmd_split(obj, opts) -> dict:
    m = _expect(obj, MHS)
    cert = mhs_to_shs(m)
    dl = deligne_bigrading(m)
    return {"shs": ser.dump_object(cert.shs), "phi": ser.matrix(cert.phi), "unique": cert.unique,
            "stages": [{"k": k, "unknowns": u, "rank": r, "beta_nullity": b} for k, u, r, b in cert.stages],
            "deligne": [{"p": p, "q": q, "dim": s.dim} for (p, q), s in dl.pieces],
            "pairing": _summed(cert.shs, opts)}


_CONVERSIONS = {
    ("shs", "frep"): lambda x: shs_to_frep(x),
    ("frep", "shs"): lambda x: frep_to_shs(x),
    ("shs", "mhs"): lambda x: shs_to_mhs(x),
    ("mhs", "shs"): lambda x: mhs_to_shs(x).shs,
    ("mhs", "frep"): lambda x: shs_to_frep(mhs_to_shs(x).shs),
    ("frep", "mhs"): lambda x: shs_to_mhs(frep_to_shs(x)),
    ("shs", "sts"): lambda x: shs_to_sts(x),
}

_KIND_OF = {SHSObject: "shs", FRep: "frep", MHS: "mhs", STSObject: "sts"}


def cmd_convert(obj, opts) -> dict:
    src = _KIND_OF.get(type(obj))
    if opts.from_kind and opts.from_kind != src:
        raise ParseError(f"--from {opts.from_kind} but the input is {src}")
    key = (src, opts.to_kind)
    if key not in _CONVERSIONS:
        raise ParseError(f"no conversion from {src} to {opts.to_kind}",
                         witness={"available": [f"{a}->{b}" for a, b in sorted(_CONVERSIONS)]})
    if src == "frep":
        obj.check()
    out = _CONVERSIONS[key](obj)
    rep = {"from": src, "to": opts.to_kind, "result": ser.dump_object(out)}
    if isinstance(out, SHSObject):
        rep["pairing"] = _summed(out, opts)
    elif isinstance(obj, SHSObject):
        rep["pairing"] = _summed(obj, opts)
    return rep


def cmd_ext(obj, opts) -> dict:
    if not (isinstance(obj, tuple) and len(obj) == 2):
        raise ParseError("ext needs a pair document with source and target")
    h = hom_ext(*obj)
    return {"hom": h.hom_dim, "ext1": h.ext1_dim, "hom_graded": h.hom_s_dim, "target": h.target_dim,
            "rank": h.rank, "four_term_exact": h.four_term_ok()}


def _rees_report(f: FilteredSpace) -> dict:
    r = rees_single(f)
    out = {"direction": f.direction, "pieces": {str(n): s.dim for n, s in r.pieces},
           "flat": r.is_flat(), "colimit_is_total": r.colimit_is_total()}
    if f.direction == DEC:
        d = rees_double(f)
        out["double"] = {f"{p},{q}": dim for (p, q), dim in sorted(d.nonzero().items())}
    return out


def cmd_rees(obj, opts) -> dict:
    if isinstance(obj, MHS):
        return {"weight": _rees_report(obj.W), "hodge": _rees_report(obj.F)}
    return _rees_report(_expect(obj, FilteredSpace))


def cmd_dec(obj, opts) -> dict:
    c = _expect(obj, FilteredComplex)
    chk = dec_e1_property_check(c)
    return {"ok": chk.ok,
            "table": [{"weight": w, "degree": k, "dec": a, "e2": b} for (w, k), (a, b) in chk.table]}


def cmd_ss(obj, opts) -> dict:
    c = _expect(obj, FilteredComplex)
    rep = spectral_report(c, opts.truncate)
    pages = []
    for pg in rep.pages:
        pages.append({"r": pg.r, "dims": {f"{s},{n}": d for (s, n), d in sorted(pg.dims().items())},
                      "differential_rank": pg.total_rank()})
    return {"pages": pages, "converged": rep.converged, "homology_consistent": rep.homology_consistent,
            "d_squared_zero": rep.d_squared_zero,
            "e_infinity": {f"{s},{n}": d for (s, n), d in sorted(rep.e_infinity.items())},
            "gr_cohomology": {f"{s},{n}": d for (s, n), d in sorted(rep.gr_cohomology.items())}}


def cmd_pi(obj, opts) -> dict:
    provenance = {}
    if isinstance(obj, GysinInput):
        G = obj.relabelled(opts.weight_convention) if opts.weight_convention else obj
        e2 = e2_builder(G)
        A = e2.dga
        provenance = {"weight_convention": e2.convention, "differential_label": "gysin"}
    else:
        A = _expect(obj, DGA)
        check = A.validate()
        if not check.ok:
            kind, wit = check.failures[0]
            raise InvariantError(f"DGA axiom fails: {kind}", witness={"kind": kind, "witness": wit})
    cap = opts.truncate or 6
    top = opts.max_n or A.max_degree() + 2
    groups = homotopy_ranks(A, top, cap)
    rep = dict(provenance)
    rep["truncate"] = cap
    for n, r in groups.items():
        rep[f"pi{n}"] = r.rank
    rep["stable"] = all(r.stable for r in groups.values())
    rep["groups"] = {str(n): {"rank": r.rank, "stability": r.stability,
                              "weights": {str(w): d for w, d in sorted(r.weights.items())} if r.weights else None,
                              "weight_filtration": r.weight_filtration,
                              "hurewicz_rank": r.hurewicz_rank, "cohomology_dim": r.cohomology_dim,
                              "brackets": [{"a": a, "b": b, "rank": k} for a, b, k in r.brackets]}
                     for n, r in groups.items()}
    if not rep["stable"]:
        raise _Unstable(rep)
    return rep


def cmd_th(obj, opts) -> dict:
    C = _expect(obj, CosimplicialDGA)
    res = thom_whitney(C, opts.truncate)
    rep = {"poly_cap": res.poly_cap, "levels": res.levels + 1,
           "dims": {str(k): v for k, v in sorted(res.dims.items())},
           "cohomology": {str(k): v for k, v in sorted(res.cohomology.items())},
           "stable": res.stable, "closed_under_products": res.closed_under_products}
    if res.closed_under_products:
        rep["algebra"] = ser.dump_object(res.as_dga())
    if not res.stable:
        raise _Unstable(rep)
    return rep


def cmd_defcone(obj, opts) -> dict:
    if not (isinstance(obj, tuple) and obj and obj[0] in ("gysin", "explicit")):
        raise ParseError("defcone needs a defcone-input or defcone-explicit document")
    if obj[0] == "gysin":
        G = obj[1].relabelled(opts.weight_convention) if opts.weight_convention else obj[1]
        cone = deformation_cone(G, obj[2])
    else:
        cone = explicit_cone(**obj[1])
    return {"variables": {"omega": list(cone.omega_vars), "eta": list(cone.eta_vars)},
            "equations": cone.text(), "tangent_dim": cone.tangent_dim,
            "zariski_tangent_dim": cone.zariski_tangent_dim, "linear": cone.is_linear(),
            "action": [{"generator": lab, "matrix": ser.matrix(m)} for lab, m in cone.action]}


_HANDLERS = {"validate": cmd_validate, "split": cmd_split, "convert": cmd_convert, "ext": cmd_ext,
             "rees": cmd_rees, "dec": cmd_dec, "ss": cmd_ss, "pi": cmd_pi, "th": cmd_th,
             "defcone": cmd_defcone}


# -- output --------------------------------------------------------------------------------------

def render_text(value, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k in sorted(value):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_atom(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_atom(v)}")
    else:
        lines.append(pad + _atom(value))
    return "\n".join(lines)


def _atom(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)


def _emit(report: dict, opts) -> None:
    text = ser.dumps(report) if opts.format == "json" else render_text(report) + "\n"
    if opts.out:
        with open(opts.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hodgesplit", description="Exact mixed Hodge, twistor and homotopy computations.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--in", dest="infile", required=True, help="input JSON document")
        s.add_argument("--out", help="write the report here instead of stdout")
        s.add_argument("--format", choices=("json", "text"), default="json")
        s.add_argument("--truncate", type=int, default=None,
                       help="bracket-length cap (pi), polynomial cap (th) or last page (ss)")
        s.add_argument("--weight-convention", choices=("a+b", "a2b", "a+2b"), default=None)
        s.add_argument("--endpoints", choices=("0i", "mii"), default="mii")
        if name == "convert":
            s.add_argument("--from", dest="from_kind", choices=("shs", "frep", "mhs", "sts"))
            s.add_argument("--to", dest="to_kind", required=True, choices=("shs", "frep", "mhs", "sts"))
        if name == "pi":
            s.add_argument("--max-n", type=int, default=None, help="largest n reported (default: top degree + 2)")
    return p


def _error_report(command, exc: Exception, code: int) -> dict:
    return {"kind": "report", "command": command, "status": code, "error": type(exc).__name__,
            "message": str(exc.args[0]) if exc.args else "",
            "witness": ser.to_json_value(getattr(exc, "witness", None))}


def run(argv=None) -> int:
    opts = build_parser().parse_args(argv)
    if opts.weight_convention:
        opts.weight_convention = normalise_convention(opts.weight_convention)
    opts.endpoints = normalise_endpoints(opts.endpoints)
    try:
        with open(opts.infile, encoding="utf-8") as fh:
            obj = ser.loads(fh.read())
        result = _HANDLERS[opts.command](obj, opts)
    except _Unstable as u:
        _emit({"kind": "report", "command": opts.command, "status": EXIT_TRUNCATION, "result": u.report}, opts)
        return EXIT_TRUNCATION
    except (ParseError, OSError, DimensionMismatch) as exc:
        _emit(_error_report(opts.command, exc, EXIT_PARSE), opts)
        return EXIT_PARSE
    except TruncationError as exc:
        _emit(_error_report(opts.command, exc, EXIT_TRUNCATION), opts)
        return EXIT_TRUNCATION
    except (RejectionError, InconsistentSystem) as exc:
        _emit(_error_report(opts.command, exc, EXIT_REJECT), opts)
        return EXIT_REJECT
    except (InvariantError, HodgeSplitError) as exc:
        _emit(_error_report(opts.command, exc, EXIT_INVARIANT), opts)
        return EXIT_INVARIANT
    report = {"kind": "report", "command": opts.command, "status": EXIT_OK,
              "options": {"endpoints": opts.endpoints, "truncate": opts.truncate,
                          "weight_convention": opts.weight_convention},
              "result": result}
    _emit(report, opts)
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
