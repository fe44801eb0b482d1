"""Command-line front end: every subcommand takes JSON in and writes JSON out.

Exit status: 0 ok, 2 malformed/schema-violating input, 3 mathematical
precondition violated, 4 internal identity failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources

import jsonschema

from . import beauville_mukai as bmod
from . import lattice_core as lc
from .errors import DomainError, IdentityFailure
from .moduli_invariants import (
    euler_characteristic,
    hrr_polynomial,
    polarization_type,
    spec_from_mw,
)
from .monodromy import (
    DEFAULT_SEARCH_BOUND,
    LatticeIsometry,
    OrbitInvariant,
    bm_representative,
    disc_action,
    fibration_invariant,
    in_monodromy_group,
    is_orientation_preserving,
    isotropic_orbit_invariant,
    primitive_orbit_invariant,
)
from .mukai import MukaiVector, square_report, vperp
from .verify import verify

EXIT_SCHEMA, EXIT_DOMAIN, EXIT_IDENTITY = 2, 3, 4
SAFE_INT = 2**53


class SchemaError(Exception):
    pass


def _schema(name: str) -> dict:
    text = resources.files("k3moduli").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def validate(name: str, payload: dict) -> None:
    try:
        jsonschema.validate(payload, _schema(name))
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"{name} payload: {exc.message}") from None


def jsonable(x):
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        x = x.numerator if x.denominator == 1 else x
        if isinstance(x, Fraction):
            return str(x)
    if isinstance(x, int):
        return x if abs(x) < SAFE_INT else str(x)
    return str(x)


def _lattice_summary(L: lc.IntegralLattice) -> dict:
    grp = lc.discriminant_group(L)
    return {
        "label": L.label,
        "rank": L.rank,
        "det": L.det,
        "even": L.is_even,
        "signature": list(lc.signature(L)),
        "discriminant": {
            "orders": list(grp.orders),
            "qform": [grp.qform(tuple(int(i == j) for j in range(len(grp.orders)))) for i in range(len(grp.orders))],
        },
    }


def cmd_lattice(p: dict, args) -> dict:
    L = lc.IntegralLattice(p["gram"], p.get("label", ""))
    out = {"lattice": _lattice_summary(L)}
    if "vector" in p:
        x = tuple(p["vector"]["coords"])
        info = {
            "coords": list(x),
            "square": lc.quadratic(L, x),
            "divisibility": lc.divisibility(L, x),
            "primitive": lc.is_primitive(x),
        }
        if info["primitive"]:
            info["disc_class"] = list(lc.vector_disc_class(L, x))
        out["vector"] = info
    if "complement_of" in p:
        sub, emb = lc.orthogonal_complement(L, [tuple(v["coords"]) for v in p["complement_of"]])
        out["complement"] = {
            **sub.to_json(),
            "embedding": [list(r) for r in emb],
            "summary": _lattice_summary(sub),
        }
    return out


def cmd_mukai(p: dict, args) -> dict:
    v = MukaiVector.from_json(p)
    rep = square_report(v)
    m, w = v.primitive_part()
    out = {
        "vector": v.to_json(),
        "valid": v.is_valid,
        "square": rep.square,
        "primitive": v.is_primitive,
        "m": m,
        "w": w.to_json(),
        "k": w.square // 2,
    }
    if w.square > 0:
        P = vperp(w)
        out["vperp"] = _lattice_summary(P.lattice)
        if v.is_valid:
            spec = spec_from_mw(m, w.square // 2)
            out["moduli"] = {"n": spec.n, "dim": spec.dim}
    return out


def cmd_moduli(p: dict, args) -> dict:
    spec = spec_from_mw(p["m"], p["k"])
    out = spec.to_json()
    out["polarization_type"] = list(polarization_type(spec))
    out["rr_coefficients"] = [str(c) for c in hrr_polynomial(spec).coefficients()]
    return out


def cmd_chi(p: dict, args) -> dict:
    spec = spec_from_mw(p["m"], p["k"])
    return {"m": spec.m, "k": spec.k, "n": spec.n, "q": p["q"], "chi": euler_characteristic(p["m"], p["k"], p["q"])}


def cmd_bm(p: dict, args) -> dict:
    bm = bmod.make_bm(p["d"], p["m"], p["s"])
    out = {"system": bm.to_json(), "picard": bmod.picard_lattice(bm).to_json()}
    out["fibration_invariant"] = fibration_invariant(bm).to_json()
    if bm.s == 0:
        pic = bmod.picard_lattice(bm)
        out["theta"] = bmod.theta_class(bm).to_json()
        out["curve_pairing"] = {"a": bmod.curve_pairing(bm, pic.a), "b": bmod.curve_pairing(bm, pic.b)}
        out["theta_equals_curve_class"] = bmod.theta_equals_curve_class(bm).to_json()
        out["brill_noether"] = bmod.theta_dimension_check(bm.d, bm.m).to_json()
    return out


def _orbit_context(p: dict):
    if "lattice" in p:
        L = lc.IntegralLattice.from_json(p["lattice"])
        return L, lambda x: tuple(x["coords"]) if "coords" in x else _no_mukai()
    w = MukaiVector.from_json(p["mukai"])
    P = vperp(w)
    return P.lattice, lambda x: tuple(x["coords"]) if "coords" in x else P.coords(MukaiVector.from_json(x))


def _no_mukai():
    raise DomainError("Mukai-class vectors need a 'mukai' ambient, not an explicit lattice")


def cmd_orbit(p: dict, args) -> dict:
    if "invariant" in p:
        spec = spec_from_mw(p["m"], p["k"])
        inv = OrbitInvariant.from_json(p["invariant"])
        bm = bm_representative(spec, inv, args.search_bound)
        return {
            "invariant": inv.to_json(),
            "search_bound": args.search_bound,
            "found": bm is not None,
            "system": bm.to_json() if bm else None,
        }
    L, to_vec = _orbit_context(p)
    if "isometry" in p:
        g = LatticeIsometry(L, p["isometry"]["matrix"])
        act = disc_action(L, g)
        return {
            "isometry": True,
            "orientation_preserving": is_orientation_preserving(L, g),
            "disc_pm_id": act.is_pm_id,
            "in_monodromy_group": in_monodromy_group(L, g),
        }
    h = to_vec(p["vector"])
    inv = isotropic_orbit_invariant(L, h) if lc.quadratic(L, h) == 0 else primitive_orbit_invariant(L, h)
    out = {"invariant": inv.to_json()}
    if "other" in p:
        h2 = to_vec(p["other"])
        inv2 = isotropic_orbit_invariant(L, h2) if lc.quadratic(L, h2) == 0 else primitive_orbit_invariant(L, h2)
        out["other"] = inv2.to_json()
        out["same_orbit"] = inv.key() == inv2.key()
    return out


def cmd_verify(p: dict, args) -> dict:
    return verify(only=p.get("only"), seed=args.seed, search_bound=args.search_bound).to_json()


COMMANDS = {
    "lattice": cmd_lattice,
    "mukai": cmd_mukai,
    "moduli": cmd_moduli,
    "orbit": cmd_orbit,
    "bm": cmd_bm,
    "chi": cmd_chi,
    "verify": cmd_verify,
}

FLAG_FIELDS = {
    "mukai": ("r", "c", "s", "d"),
    "moduli": ("m", "k"),
    "chi": ("m", "k", "q"),
    "bm": ("d", "m", "s"),
}


def _parse_standard(spec: str) -> dict:
    parts = []
    for tok in spec.split(","):
        name, _, t = tok.strip().partition(":")
        parts.append(lc.standard_lattice(name, int(t) if t else None))
    return lc.direct_sum(*parts, label=spec).to_json()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="k3moduli", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--payload", help="JSON document, '@file' or '-' for stdin")
        sp.add_argument("--output", choices=("json", "table"), default="json")
        sp.add_argument("--search-bound", type=int, default=DEFAULT_SEARCH_BOUND)
        sp.add_argument("--seed", type=int, default=0)
        for f in FLAG_FIELDS.get(name, ()):
            sp.add_argument(f"--{f}", type=int)
        if name == "lattice":
            sp.add_argument("--standard", help="comma-separated blocks, e.g. U,U,rank1:-2,E8_minus")
        if name == "verify":
            sp.add_argument("--only", help="restrict to a check group or name")
    return ap


def _load_payload(arg: str | None) -> dict:
    if arg is None:
        return {}
    if arg == "-":
        text = sys.stdin.read()
    elif arg.startswith("@"):
        with open(arg[1:]) as fh:
            text = fh.read()
    else:
        text = arg
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("payload must be a JSON object")
    return doc


def _table(doc, prefix="") -> list[str]:
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            lines += _table(v, f"{prefix}{k}.") if isinstance(v, dict) else [f"{prefix}{k}: {json.dumps(v)}"]
    else:
        lines.append(f"{prefix.rstrip('.')}: {json.dumps(doc)}")
    return lines


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        payload = _load_payload(args.payload)
        for f in FLAG_FIELDS.get(args.command, ()):
            if getattr(args, f) is not None:
                payload[f] = getattr(args, f)
        if args.command == "lattice" and args.standard:
            payload.update(_parse_standard(args.standard))
        if args.command == "verify" and args.only:
            payload["only"] = args.only
        validate(args.command, payload)
        result = jsonable(COMMANDS[args.command](payload, args))
    except SchemaError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_SCHEMA
    except IdentityFailure as exc:
        print(f"identity failure: {exc}", file=stderr)
        return EXIT_IDENTITY
    except DomainError as exc:
        print(f"domain error: {exc}", file=stderr)
        return EXIT_DOMAIN
    if args.output == "table":
        print("\n".join(_table(result)), file=stdout)
    else:
        print(json.dumps(result, indent=2, sort_keys=True), file=stdout)
    if args.command == "verify" and not result["all_pass"]:
        return EXIT_IDENTITY
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
