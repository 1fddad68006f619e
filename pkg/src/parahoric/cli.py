"""Command-line front end: one JSON request in, one JSON response out.

Exit codes: 0 ok, 1 domain error (precondition or contract), 2 malformed input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from decimal import Decimal
from fractions import Fraction
from importlib import resources
from typing import Any, Callable

import jsonschema

from . import __version__, numeric
from .apartment import (AffineFunctional, Region, facet_signature, parahoric_valuation,
                        same_parahoric, walls_in_region)
from .errors import DomainError
from .monodromy import (MonodromyClass, ResidueSpec, SurfaceGroupRep, adjoint_invariants_dim,
                        assemble_rep_bundle, deligne_degree, diagonal_summand_candidates,
                        monodromy_to_residue, residue_to_monodromy, validate_connection_residues)
from .numeric import fraction_str, scalar
from .parabolic import (ParabolicBundleData, SubbundleCandidate, chi_candidate, gl_sl_normalize,
                        par_dual, par_hom, par_tensor, pardeg, polystability_verdict,
                        stability_verdict)
from .rootdata import build_root_system, root_label
from .stabwalls import (build_stability_functionals, equivalent_rational_weight,
                        stability_radius, system_functionals)
from .transport import (apartment_map, cover_exists, ramification_index, rational_in_facet_detailed,
                        rho_functionals, transport_weight)

SCHEMA_VERSION = "v1"
PROG = "parahoric"

EXIT_OK, EXIT_DOMAIN, EXIT_MALFORMED = 0, 1, 2

STABILITY_NOTE = ("verdicts quantify over abstract candidates (rank, degree, induced multiplicities); "
                  "unrealizable candidates can only make the verdict more pessimistic")


class Malformed(Exception):
    pass


# -- schema handling ------------------------------------------------------------

def load_schema(name: str) -> dict:
    path = resources.files("parahoric").joinpath("schemas", f"{name}.{SCHEMA_VERSION}.json")
    return json.loads(path.read_text(encoding="utf-8"))


_VALIDATORS: dict[str, jsonschema.Draft202012Validator] = {}


def validator(name: str) -> jsonschema.Draft202012Validator:
    if name not in _VALIDATORS:
        _VALIDATORS[name] = jsonschema.Draft202012Validator(load_schema(name))
    return _VALIDATORS[name]


def validate_request(req: Any) -> None:
    errors = sorted(validator("request").iter_errors(req), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise Malformed(f"schema violation at {where}: {e.message}")


def _apply_region_option(request: Any) -> Any:
    """Fill ``payload.region`` from ``options.region`` where the command takes one."""
    if not isinstance(request, dict):
        return request
    command, payload, options = request.get("command"), request.get("payload"), request.get("options")
    if (command not in COMMANDS or not isinstance(payload, dict) or not isinstance(options, dict)
            or "region" not in options):
        return request
    props = load_schema("request")["$defs"]["payload_" + command.replace("-", "_")]["properties"]
    if "region" not in props:
        raise Malformed(f"option region does not apply to {command}")
    if "region" in payload and payload["region"] != options["region"]:
        raise Malformed("region given in both payload and options with different values")
    return dict(request, payload=dict(payload, region=options["region"]))


# -- payload helpers ------------------------------------------------------------

def _rs(payload):
    return build_root_system(payload["type"])


def _vec(value) -> list:
    if isinstance(value, list):
        return [scalar(v) for v in value]
    return [scalar(value)]


def _rat(v) -> Fraction:
    s = scalar(v)
    if not s.is_rational:
        raise DomainError(f"expected a rational, got {s}")
    return s.rational


def _region(spec) -> Region:
    return Region(tuple((_rat(a), _rat(b)) for a, b in spec))


def _default_region(theta, lo_off: int, hi_off: int) -> Region:
    return Region(tuple((Fraction(math.floor(t) + lo_off), Fraction(math.floor(t) + hi_off)) for t in theta))


def _functional(obj) -> AffineFunctional:
    return AffineFunctional(tuple(_rat(a) for a in obj["lin"]), _rat(obj.get("const", "0")),
                            obj.get("tag", "G-root"))


def _bundle(obj) -> ParabolicBundleData:
    return ParabolicBundleData.from_json(obj)


def _residue(pairs) -> ResidueSpec:
    return ResidueSpec.from_pairs([(p["value"], p["mult"]) for p in pairs])


def _complex_matrix(rows):
    import numpy as np
    try:
        return np.array([[complex(float(Fraction(str(re))), float(Fraction(str(im)))) for re, im in row]
                         for row in rows], dtype=complex)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"malformed complex entry: {exc}", code="malformed") from None


def _rep(obj) -> SurfaceGroupRep:
    mode = obj.get("mode", "numeric")
    gens = obj["generators"]
    if mode == "numeric":
        gens = [_complex_matrix(g) for g in gens]
    else:
        gens = [[scalar(q) for q in g] for g in gens]
    genus = obj["genus"]
    punctures = obj.get("punctures", len(gens) - 2 * genus)
    return SurfaceGroupRep(genus, punctures, gens, mode, float(obj.get("tol", 1e-10)), obj.get("rank"))


def _sj(s) -> Any:
    if isinstance(s, float) and math.isinf(s):
        return "inf"
    return s.to_json()


def _frac_list(v) -> list[str]:
    return [fraction_str(x) for x in v]


def _functional_rows(fs, point=None) -> list[list]:
    rows = []
    for i, f in enumerate(fs):
        row = [i, f.tag, " ".join(_frac_list(f.linear)), fraction_str(f.constant)]
        if point is not None:
            row.append(f(point).sign())
        rows.append(row)
    return rows


# -- commands -------------------------------------------------------------------
# Each handler returns (result, audit, table) where table is (header, rows) or None.

def cmd_walls(p, o):
    rs = _rs(p)
    extra = [_functional(f) for f in p.get("extra", [])]
    fs = walls_in_region(rs, _region(p["region"]), extra)
    return ({"count": len(fs), "functionals": [f.to_json() for f in fs]}, {},
            (["index", "tag", "lin", "const"], _functional_rows(fs)))


def cmd_facet(p, o):
    rs = _rs(p)
    theta = _vec(p["theta"])
    if "functionals" in p:
        fs = [_functional(f) for f in p["functionals"]]
    else:
        reg = _region(p["region"]) if "region" in p else _default_region(theta, -1, 1)
        fs = walls_in_region(rs, reg)
    sig, dim = facet_signature(theta, fs)
    return ({"signature": sig.to_json(), "dimension": dim},
            {"functionals": [f.to_json() for f in fs]},
            (["index", "tag", "lin", "const", "sign"], _functional_rows(fs, theta)))


def cmd_parahoric(p, o):
    rs = _rs(p)
    verts = [_vec(v) for v in p["vertices"]] if "vertices" in p else [_vec(p["theta"])]
    val = parahoric_valuation(rs, verts)
    rows = [[root_label(rs, r), " ".join(map(str, r)), m] for r, m in val.by_root]
    return ({"m": val.labeled(rs)}, {"valuation": val.to_json()}, (["label", "root", "m"], rows))


def cmd_same_parahoric(p, o):
    rs = _rs(p)
    t1, t2 = _vec(p["theta1"]), _vec(p["theta2"])
    v1, v2 = parahoric_valuation(rs, [t1]), parahoric_valuation(rs, [t2])
    return ({"same": same_parahoric(rs, t1, t2)},
            {"m1": v1.labeled(rs), "m2": v2.labeled(rs)}, None)


def cmd_transport(p, o):
    amap = apartment_map(_rs(p), p.get("rep", "adjoint"))
    img = transport_weight(amap, _vec(p["theta"]))
    return ({"image": [v.to_json() for v in img]},
            {"weights": amap.target_weights.to_json()["weights"]}, None)


def cmd_rho_walls(p, o):
    rs = _rs(p)
    amap = apartment_map(rs, p.get("rep", "adjoint"))
    rho = rho_functionals(amap, _region(p["region"]))
    res = {"count": len(rho.functionals), "functionals": [f.to_json() for f in rho.functionals]}
    if rs.rank == 1:
        res["wall_locations"] = _frac_list(rho.wall_locations())
    return res, {"weights": amap.target_weights.to_json()["weights"]}, \
        (["index", "tag", "lin", "const"], _functional_rows(rho.functionals))


def cmd_approx_weight(p, o):
    rs = _rs(p)
    theta = _vec(p["theta"])
    amap = apartment_map(rs, p.get("rep", "adjoint"))
    reg = _region(p["region"]) if "region" in p else _default_region(theta, 0, 1)
    fs = list(rho_functionals(amap, reg).functionals) + list(reg.face_functionals())
    cap = p.get("cap", o.get("denominator_cap"))
    fr = rational_in_facet_detailed(theta, fs, cap, p.get("expand_cap", True))
    eta = _frac_list(fr.eta)
    return ({"eta": eta[0] if len(eta) == 1 else eta, "denominator": fr.denominator,
             "signature": fr.signature.to_json(), "cap": fr.cap},
            {"functionals": [f.to_json() for f in fs], "region": reg.to_json()},
            (["index", "tag", "lin", "const", "sign"], _functional_rows(fs, theta)))


def cmd_ramification(p, o):
    return {"index": ramification_index(_rs(p), _vec(p["theta"]))}, {}, None


def cmd_cover_exists(p, o):
    return {"exists": cover_exists(p["genus"], p["indices"])}, {}, None


def cmd_pardeg(p, o):
    return {"pardeg": pardeg(_bundle(p["bundle"])).to_json()}, {}, None


def cmd_dual(p, o):
    V = _bundle(p["bundle"])
    D = par_dual(V)
    return {"bundle": D.to_json()}, {"pardeg_in": pardeg(V).to_json(), "pardeg_out": pardeg(D).to_json()}, None


def cmd_tensor(p, o):
    T = par_tensor(_bundle(p["left"]), _bundle(p["right"]))
    return {"bundle": T.to_json()}, {"pardeg": pardeg(T).to_json()}, None


def cmd_hom(p, o):
    H = par_hom(_bundle(p["source"]), _bundle(p["target"]))
    return {"bundle": H.to_json()}, {"pardeg": pardeg(H).to_json()}, None


def cmd_chi(p, o):
    V = _bundle(p["bundle"])
    W = SubbundleCandidate.from_json(p["candidate"])
    return {"chi": chi_candidate(V, W).to_json()}, {}, None


def cmd_stability(p, o):
    C1, C2 = p.get("C1", o.get("C1")), p.get("C2", o.get("C2"))
    if "summands" in p:
        res = polystability_verdict([_bundle(b) for b in p["summands"]], C1, C2)
        return res, {"note": STABILITY_NOTE}, None
    V = _bundle(p["bundle"])
    cands = [SubbundleCandidate.from_json(c) for c in p["candidates"]] if "candidates" in p else None
    v = stability_verdict(V, cands, C1, C2, p.get("ranks"))
    full = v.to_json()
    system = full.pop("system")
    rows = [[i, s["candidate"]["rank"], s["candidate"]["degree"],
             ";".join(" ".join(map(str, n)) for n in s["candidate"]["n"]), str(scalar(s["chi"]))]
            for i, s in enumerate(system)]
    full["pardeg"] = pardeg(V).to_json()
    return full, {"system": system, "note": STABILITY_NOTE}, (["index", "rank", "degree", "n", "chi"], rows)


def cmd_normalize(p, o):
    vals, ok = gl_sl_normalize(p["values"], p.get("mode", "GL"))
    return {"sorted": [v.to_json() for v in vals], "sl_ok": ok}, {}, None


def _system(p, o):
    rs = _rs(p)
    regions = [_region(r) for r in p["regions"]]
    return build_stability_functionals(rs, regions, p.get("C1", o.get("C1")), p.get("C2", o.get("C2")),
                                       p.get("ranks"))


def _thetas(p, rs, npoints) -> list:
    t = p["theta"]
    if npoints == 1 and not (isinstance(t, list) and t and isinstance(t[0], list)):
        t = [t]
    flat = []
    for v in t:
        flat.extend(_vec(v))
    if len(flat) != rs.rank * npoints:
        raise DomainError(f"theta has {len(flat)} coordinates, expected {rs.rank * npoints}")
    return flat


def _with_default_regions(p):
    if "regions" in p:
        return p
    rs = _rs(p)
    if rs.rank != 1:
        raise DomainError("regions are required for rank > 1")
    t = p["theta"]
    pts = t if isinstance(t, list) and t and isinstance(t[0], list) else [t]
    q = dict(p)
    q["regions"] = [_default_region(_vec(x), 0, 1).to_json() for x in pts]
    return q


def cmd_stab_system(p, o):
    system = _system(p, o)
    limit = p.get("limit", 2000)
    data = system.to_json(limit)
    rows = [[i, f["c"], f["rank_w"], ";".join(" ".join(map(str, n)) for n in f["n"]),
             " ".join(f["affine"]["lin"]), f["affine"]["const"]] for i, f in enumerate(data["functionals"])]
    res = {"count": data["count"], "distinct_forms": len(system.forms()),
           "coincidence_walls": data["coincidence_walls"], "truncated": data["truncated"]}
    return res, {"functionals": data["functionals"], "g_walls": data["g_walls"], "regions": data["regions"]}, \
        (["index", "c", "rank_w", "n", "lin", "const"], rows)


def cmd_variation(p, o):
    p = _with_default_regions(p)
    system = _system(p, o)
    theta = _thetas(p, system.root_system, system.npoints)
    eta = equivalent_rational_weight(theta, system, p.get("cap", o.get("denominator_cap")))
    radius = stability_radius(theta, system)
    fs = system_functionals(system, with_faces=False)
    table = []
    for i, f in enumerate(fs):
        a, b = f(theta).sign(), f(eta).sign()
        table.append({"index": i, "functional": f.to_json(), "sign_theta": a, "sign_eta": b})
    same = all(r["sign_theta"] == r["sign_eta"] for r in table)
    rows = [[r["index"], r["functional"]["tag"], " ".join(r["functional"]["lin"]), r["functional"]["const"],
             r["sign_theta"], r["sign_eta"]] for r in table]
    return ({"theta": [scalar(v).to_json() for v in theta], "eta": _frac_list(eta),
             "radius": _sj(radius), "signs_agree": same},
            {"sign_table": table},
            (["index", "tag", "lin", "const", "sign_theta", "sign_eta"], rows))


def cmd_radius(p, o):
    if "functionals" in p:
        theta = _vec(p["theta"])
        fs = [_functional(f) for f in p["functionals"]]
        r = stability_radius(theta, fs)
        return {"radius": _sj(r)}, {"functionals": [f.to_json() for f in fs]}, None
    p = _with_default_regions(p)
    system = _system(p, o)
    theta = _thetas(p, system.root_system, system.npoints)
    return {"radius": _sj(stability_radius(theta, system))}, {"count": system.count()}, None


def cmd_residue(p, o):
    if "matrix" in p:
        t = MonodromyClass.numeric(_complex_matrix(p["matrix"]), float(p.get("tol", 1e-10)))
    else:
        t = MonodromyClass.exact([(q["value"], q["mult"]) for q in p["phases"]])
    return {"residue": monodromy_to_residue(t).to_json()}, {}, None


def cmd_monodromy(p, o):
    return {"monodromy": residue_to_monodromy(_residue(p["eigenvalues"])).to_json()}, {}, None


def cmd_validate_residues(p, o):
    V = _bundle(p["bundle"])
    res = [[(e["value"], e["dim"]) for e in pt] for pt in p["residues"]]
    ok, report = validate_connection_residues(V, res)
    return {"valid": ok}, {"report": report}, None


def cmd_deligne_degree(p, o):
    specs = [_residue(r) for r in p["residues"]]
    return {"degree": deligne_degree(specs, p.get("rank"), p.get("shifts"))}, {}, None


def cmd_invariants(p, o):
    rep = _rep(p["rep"])
    return {"dim": adjoint_invariants_dim(rep)}, {"relation_ok": True, "rank": rep.rank}, None


def cmd_assemble(p, o):
    rep = _rep(p["rep"])
    A = assemble_rep_bundle(rep)
    res = A.to_json()
    audit = {}
    if rep.mode == "exact":
        audit["summand_candidates"] = [{"candidate": c.to_json(), "chi": chi.to_json()}
                                       for c, chi in diagonal_summand_candidates(rep, A)]
    return res, audit, None


COMMANDS: dict[str, Callable] = {
    "walls": cmd_walls, "facet": cmd_facet, "parahoric": cmd_parahoric,
    "same-parahoric": cmd_same_parahoric, "transport": cmd_transport, "rho-walls": cmd_rho_walls,
    "approx-weight": cmd_approx_weight, "ramification": cmd_ramification,
    "cover-exists": cmd_cover_exists, "pardeg": cmd_pardeg, "dual": cmd_dual, "tensor": cmd_tensor,
    "hom": cmd_hom, "chi": cmd_chi, "stability": cmd_stability, "normalize": cmd_normalize,
    "stab-system": cmd_stab_system, "variation": cmd_variation, "radius": cmd_radius,
    "residue": cmd_residue, "monodromy": cmd_monodromy, "validate-residues": cmd_validate_residues,
    "deligne-degree": cmd_deligne_degree, "invariants": cmd_invariants, "assemble": cmd_assemble,
}


# -- request execution ----------------------------------------------------------

def _version() -> dict:
    return {"tool": __version__, "schema": SCHEMA_VERSION}


def run_command(request: dict) -> tuple[dict, int, tuple | None]:
    """Validate and execute a request; returns (response, exit code, csv table)."""
    command = request.get("command") if isinstance(request, dict) else None
    try:
        request = _apply_region_option(request)
        validate_request(request)
        options = request.get("options", {})
        if "precision" in options:
            numeric.set_initial_precision(options["precision"])
        result, audit, table = COMMANDS[command](request.get("payload", {}), options)
        resp = {"status": "ok", "command": command, "result": result, "audit": audit,
                "version": _version()}
        return resp, EXIT_OK, table
    except Malformed as exc:
        return _error(command, "malformed", str(exc)), EXIT_MALFORMED, None
    except DomainError as exc:
        code = exc.code
        status = EXIT_MALFORMED if code == "malformed" else EXIT_DOMAIN
        return _error(command, code, str(exc)), status, None
    except (ValueError, TypeError, KeyError, IndexError) as exc:
        # structural problems the schema cannot express (shapes, sizes)
        return _error(command, "malformed", f"{type(exc).__name__}: {exc}"), EXIT_MALFORMED, None


def _error(command, code: str, message: str) -> dict:
    return {"status": "error", "command": command, "error": {"code": code, "message": message},
            "version": _version()}


def render(response: dict) -> str:
    return json.dumps(response, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def write_csv(path: str, table) -> None:
    header, rows = table
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    if path == "-":
        sys.stderr.write(buf.getvalue())
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())


# -- argument parsing -----------------------------------------------------------

def _split_scalars(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _flags_to_payload(command: str, ns) -> dict:
    p: dict[str, Any] = {}
    if ns.type is not None:
        p["type"] = ns.type
    if ns.theta is not None:
        vals = _split_scalars(ns.theta)
        p["theta"] = vals[0] if len(vals) == 1 else vals
    if ns.theta2 is not None:
        p["theta1"], p["theta2"] = p.pop("theta", None), _split_scalars(ns.theta2)
    if ns.rep is not None:
        p["rep"] = ns.rep
    if ns.region is not None:
        box = [iv.split(":") for iv in ns.region.split(",")]
        if command == "stab-system" or command in ("variation", "radius"):
            p["regions"] = [box]
        else:
            p["region"] = box
    if ns.genus is not None:
        p["genus"] = ns.genus
    if ns.indices is not None:
        p["indices"] = [int(v) for v in ns.indices.split(",")]
    if ns.cap is not None:
        p["cap"] = ns.cap
    if ns.values is not None:
        p["values"] = _split_scalars(ns.values)
    if ns.mode is not None:
        p["mode"] = ns.mode
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog=PROG, description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    names = ["run"] + list(COMMANDS)
    for name in names:
        sp = sub.add_parser(name)
        sp.add_argument("--json", metavar="FILE", help="request document (file or '-' for stdin)")
        sp.add_argument("--emit-csv", metavar="PATH", help="also write the main table as CSV")
        if name == "run":
            continue
        sp.add_argument("--type")
        sp.add_argument("--theta")
        sp.add_argument("--theta2")
        sp.add_argument("--rep")
        sp.add_argument("--region", help="box as lo:hi,lo:hi")
        sp.add_argument("--genus", type=int)
        sp.add_argument("--indices")
        sp.add_argument("--cap", type=int)
        sp.add_argument("--values")
        sp.add_argument("--mode")
    return ap


def _read_json(source: str) -> Any:
    try:
        text = sys.stdin.read() if source == "-" else open(source, encoding="utf-8").read()
    except OSError as exc:
        raise Malformed(f"cannot read {source}: {exc}") from None
    try:
        return json.loads(text, parse_float=Decimal, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise Malformed(f"invalid JSON: {exc}") from None


def _reject_constant(name):
    raise Malformed(f"non-finite JSON constant {name}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else EXIT_OK
    env_precision = os.environ.get("PARAHORIC_PRECISION")
    try:
        if env_precision is not None:
            try:
                numeric.set_initial_precision(int(env_precision))
            except ValueError:
                raise Malformed(f"PARAHORIC_PRECISION must be an integer, got {env_precision!r}") from None
        if ns.json is not None:
            req = _read_json(ns.json)
            if ns.command != "run":
                if isinstance(req, dict) and "command" not in req:
                    req = dict(req, command=ns.command)
                if isinstance(req, dict) and req.get("command") != ns.command:
                    raise Malformed(f"request command {req.get('command')!r} does not match {ns.command!r}")
        elif ns.command == "run":
            raise Malformed("run needs --json")
        else:
            req = {"command": ns.command, "payload": _flags_to_payload(ns.command, ns)}
    except Malformed as exc:
        sys.stdout.write(render(_error(ns.command, "malformed", str(exc))))
        return EXIT_MALFORMED
    response, code, table = run_command(req)
    sys.stdout.write(render(response))
    if ns.emit_csv and table is not None:
        write_csv(ns.emit_csv, table)
    return code


if __name__ == "__main__":
    sys.exit(main())
