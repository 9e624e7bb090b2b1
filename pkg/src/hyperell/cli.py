"""``hyperell`` command line: one subcommand per library operation, JSON in and out.

Exit codes: 0 success, 2 unknown subcommand or bad arguments, 3 malformed
JSON input, 4 precondition violation raised by the library.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import __version__
from .config import (
    PointConfiguration,
    automorphism_group,
    extra_involution_type,
    moduli_point_is_singular,
    pgl2_equivalences,
    roots_of_unity_config,
)
from .curves import (
    HyperellipticCurve,
    count_points,
    curve_from_config,
    global_g12_exists_for_even_genus,
    isomorphic_over_closure,
    isomorphic_over_field,
    reduced_automorphism_group,
    tautological_family_exists,
    twist_classes,
    weierstrass_points,
)
from .errors import HyperellError
from .field import FieldTag, prime_with_roots_of_unity
from .forms import BinaryForm, discriminant, has_repeated_root
from .moebius import ProjectivePoint, solve_pairing_involution
from .picard import descent_subgroup, hodge_index, picard_report, tab_exponent
from .strata import stratum_dimension, verify_lemma_combin

EXIT_OK, EXIT_USAGE, EXIT_JSON, EXIT_PRECONDITION = 0, 2, 3, 4


class MalformedInput(Exception):
    pass


@dataclass
class CommandResult:
    status: str
    payload: object
    trace: object = None

    def to_json(self) -> dict:
        out = {"status": self.status, "payload": self.payload}
        if self.trace is not None:
            out["trace"] = self.trace
        return out


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


# -- input helpers --

def _read_json(args) -> dict | None:
    """JSON from --input FILE, or from stdin when --input is '-'."""
    if not getattr(args, "input", None):
        return None
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input) as fh:
                text = fh.read()
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"malformed JSON: {exc}") from exc
    except OSError as exc:
        raise MalformedInput(f"cannot read input: {exc}") from exc


def _require_json(args) -> dict:
    data = _read_json(args)
    if data is None:
        raise MalformedInput("this subcommand needs --input FILE (or '-' for stdin)")
    if not isinstance(data, dict):
        raise MalformedInput("top-level JSON value must be an object")
    return data


def _field(args, *orders: int) -> FieldTag:
    """--field if given, else the least prime containing the requested roots of unity."""
    if getattr(args, "field", None):
        base = FieldTag.parse(args.field)
    else:
        base = FieldTag(prime_with_roots_of_unity(*orders) if orders else 0)
    m = getattr(args, "extension_degree", None)
    if m and m > 1:
        base = base.extension(m)
    return base


def _coerce_config(cfg: PointConfiguration, args) -> PointConfiguration:
    m = getattr(args, "extension_degree", None)
    if not m or m == 1 or cfg.field.degree == m:
        return cfg
    ext = cfg.field.extension(m)
    return PointConfiguration(tuple(ProjectivePoint(ext(p.x), ext(p.y)) for p in cfg.points), ext)


def _config_from_args(args, data=None) -> PointConfiguration:
    if data is None:
        data = _read_json(args)
    if data is not None:
        try:
            cfg = PointConfiguration.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad configuration JSON: {exc}") from exc
        return _coerce_config(cfg, args)
    if args.roots_of_unity:
        n = args.roots_of_unity
        return roots_of_unity_config(_field(args, n), n, args.with_infinity, args.with_zero)
    if args.points:
        field = _field(args)
        return PointConfiguration.of(field, [t.strip() for t in args.points.split(",")])
    raise MalformedInput("give a configuration via --input, --points or --roots-of-unity")


def _form(data: dict) -> BinaryForm:
    try:
        return BinaryForm.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad form JSON: {exc}") from exc


def _curve(data: dict) -> HyperellipticCurve:
    try:
        return HyperellipticCurve.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad curve JSON: {exc}") from exc


# -- subcommands --

def cmd_discriminant(args):
    if args.coeffs:
        field = _field(args)
        form = BinaryForm.from_coeffs(field, [c.strip() for c in args.coeffs.split(",")])
    else:
        form = _form(_require_json(args))
    d = discriminant(form)
    return {"discriminant": str(d), "smooth": not d.is_zero(), "degree": form.degree,
            "field": str(form.field)}, {"repeated_root_by_gcd": has_repeated_root(form)}


def cmd_aut_group(args):
    cfg = _config_from_args(args)
    group = automorphism_group(cfg)
    payload = group.to_json(trace=False)
    payload["configuration"] = cfg.to_json()
    if len(cfg) >= 6 and len(cfg) % 2 == 0:
        inv = extra_involution_type(cfg)
        payload["extra_involution"] = None if inv is None else str(inv)
    return payload, group.to_json(trace=True)["elements"] if args.trace else None


def cmd_equiv(args):
    data = _require_json(args)
    if "c1" not in data or "c2" not in data:
        raise MalformedInput("expected keys c1 and c2")
    c1 = _config_from_args(args, data["c1"])
    c2 = _config_from_args(args, data["c2"])
    found = pgl2_equivalences(c1, c2)
    payload = {"equivalent": bool(found), "witness": found[0].to_json() if found else None,
               "n_witnesses": len(found)}
    return payload, [A.to_json() for A in found] if args.trace else None


def cmd_involution_solve(args):
    data = _read_json(args)
    if data is not None:
        try:
            field = FieldTag.parse(data["field"])
            pts = [ProjectivePoint.from_json(field, p) for p in data["points"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad point list JSON: {exc}") from exc
    else:
        if not args.points:
            raise MalformedInput("give four points via --input or --points")
        field = _field(args)
        cfg_pts = [t.strip() for t in args.points.split(",")]
        pts = [ProjectivePoint.infinity(field) if t == "oo" else ProjectivePoint.of(field, t) for t in cfg_pts]
    if len(pts) != 4:
        raise MalformedInput("exactly four points are needed")
    A = solve_pairing_involution(*pts)
    return {"matrix": A.to_json(), "involution": (A @ A).is_identity(),
            "images": [A(p).to_json() for p in pts]}, None


def cmd_lemma_combin(args):
    report = verify_lemma_combin(args.nmax, jobs=args.jobs)
    return report, None


def cmd_stratum_dim(args):
    return {"dim": stratum_dimension(args.g, args.p, args.i)}, None


def cmd_picard_report(args):
    field = FieldTag.parse(args.field) if args.field else None
    report = picard_report(args.genus, field, trace=args.trace)
    payload = report.to_json(trace=False)
    return payload, report.trace if args.trace else None


def cmd_descent(args):
    field = FieldTag.parse(args.field) if args.field else None
    probes = tuple(args.probe) if args.probe else ("f1", "f2")
    res = descent_subgroup(args.genus, field, probes=probes, check_hom=args.check_homomorphism)
    detail = res.pop("probes")
    return res, detail if args.trace else None


def cmd_tab_exponent(args):
    c = tab_exponent(args.a, args.b, args.g)
    return {"exponent": c.to_json(), "subgroup_index": c.subgroup_index()}, None


def cmd_hodge(args):
    c = tab_exponent(1, 0, args.g)
    return {"exponent": c.to_json(), "index": hodge_index(args.g)}, None


def cmd_curve_build(args):
    cfg = _config_from_args(args)
    curve = curve_from_config(cfg, cfg.field.parse_scalar(args.twist))
    return {"curve": curve.to_json(), "equation": str(curve)}, None


def cmd_weierstrass(args):
    curve = _curve(_require_json(args))
    pts = weierstrass_points(curve)
    return {"points": pts.to_json(), "count": len(pts)}, None


def cmd_iso(args):
    data = _require_json(args)
    if "c1" not in data or "c2" not in data:
        raise MalformedInput("expected keys c1 and c2")
    c1, c2 = _curve(data["c1"]), _curve(data["c2"])
    closure = isomorphic_over_closure(c1, c2)
    over_k = isomorphic_over_field(c1, c2)
    return {
        "isomorphic_over_closure": closure is not None,
        "closure_witness": None if closure is None else closure.to_json(),
        "isomorphic_over_field": over_k is not None,
        "field_witness": None if over_k is None else over_k.to_json(),
    }, None


def cmd_twist_class(args):
    data = _read_json(args)
    if data is not None and "coeffs" in data:
        source = _form(data)
    else:
        source = _config_from_args(args, data)
    twists = [t.strip() for t in args.twists.split(",")] if args.twists else None
    if twists is not None:
        twists = [source.field.parse_scalar(t) for t in twists]
    return twist_classes(source, twists), None


def cmd_count_points(args):
    curve = _curve(_require_json(args))
    return {"points": count_points(curve), "field": str(curve.field)}, None


def cmd_taut_exists(args):
    return {
        "g": args.g,
        "tautological_family": tautological_family_exists(args.g),
        "global_g12": global_g12_exists_for_even_genus(args.g).to_json(),
    }, None


def cmd_verify_all(args):
    from .verify import run_all, summary_table

    results = run_all(gmax=args.gmax, jobs=args.jobs)
    print(summary_table(results), file=sys.stderr)
    payload = {
        "all_passed": all(r.passed for r in results),
        "results": [
            {"number": r.number, "name": r.name, "passed": r.passed, "limit": r.limit, "error": r.error}
            for r in results
        ],
    }
    # timings vary between runs, so they go to the trace only
    trace = [{"number": r.number, "seconds": round(r.seconds, 3), "detail": r.detail} for r in results]
    return payload, trace if args.trace else None


def cmd_singular(args):
    cfg = _config_from_args(args)
    return {"singular": moduli_point_is_singular(cfg, cfg.genus), "genus": cfg.genus}, None


def cmd_reduced_aut(args):
    curve = _curve(_require_json(args))
    red = reduced_automorphism_group(curve, args.extension_degree)
    payload = red.to_json(trace=False)
    return payload, red.to_json(trace=True)["elements"] if args.trace else None


# -- parser --

def _add_config_args(p):
    p.add_argument("--input", help="JSON file, or '-' for stdin")
    p.add_argument("--points", help="comma-separated affine values, 'oo' for infinity")
    p.add_argument("--roots-of-unity", type=int, metavar="N", help="use mu_N")
    p.add_argument("--with-infinity", action="store_true")
    p.add_argument("--with-zero", action="store_true")
    p.add_argument("--field", help="Q, Fp:p or Fq:p^m (default: least prime with the needed roots)")
    p.add_argument("--extension-degree", type=int, default=None,
                   help="run over the degree-m extension of a prime field")


def build_parser() -> argparse.ArgumentParser:
    # --trace and --jobs are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trace", action="store_true", default=argparse.SUPPRESS,
                        help="include the computation trace")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS,
                        help="worker processes (output does not depend on it)")
    parser = argparse.ArgumentParser(prog="hyperell", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")
    sub.required = True

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.set_defaults(func=func)
        return p

    p = add("discriminant", cmd_discriminant, "discriminant of a binary form")
    p.add_argument("--input")
    p.add_argument("--coeffs", help="comma-separated c_0..c_n, ascending in X")
    p.add_argument("--field")

    _add_config_args(add("aut-group", cmd_aut_group, "PGL2 stabilizer of a configuration"))
    _add_config_args(add("equiv", cmd_equiv, "PGL2 equivalence of two configurations ({c1, c2})"))

    p = add("involution-solve", cmd_involution_solve, "involution with A(P1)=P2, A(P3)=P4")
    p.add_argument("--input")
    p.add_argument("--points")
    p.add_argument("--field")

    p = add("lemma-combin", cmd_lemma_combin, "exhaustive check of the two-4-subsets lemma")
    p.add_argument("--nmax", type=int, default=8)

    p = add("stratum-dim", cmd_stratum_dim, "dimension of an automorphism stratum")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--i", type=int, required=True)

    p = add("picard-report", cmd_picard_report, "Picard-type group orders and descent for genus g")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--field")

    p = add("descent", cmd_descent, "twists surviving the probe stabilizers")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--field")
    p.add_argument("--probe", action="append", choices=["f1", "f2"])
    p.add_argument("--check-homomorphism", action="store_true")

    p = add("tab-exponent", cmd_tab_exponent, "generator exponent of the (a, b) determinant bundle")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--g", type=int, required=True)

    p = add("hodge", cmd_hodge, "Hodge class exponent and index")
    p.add_argument("--g", type=int, required=True)

    p = add("curve-build", cmd_curve_build, "curve a*y^2 = prod(x - x_i) from a configuration")
    _add_config_args(p)
    p.add_argument("--twist", default="1")

    p = add("weierstrass", cmd_weierstrass, "Weierstrass points of a curve")
    p.add_argument("--input")

    p = add("reduced-aut", cmd_reduced_aut, "reduced automorphism group of a curve")
    p.add_argument("--input")
    p.add_argument("--extension-degree", type=int, default=None)

    p = add("iso", cmd_iso, "isomorphism of two curves over the closure and over the field")
    p.add_argument("--input")

    p = add("twist-class", cmd_twist_class, "field-isomorphism classes among twists")
    _add_config_args(p)
    p.add_argument("--twists", help="comma-separated twists (default: 1 and a nonsquare)")

    p = add("count-points", cmd_count_points, "number of F_p points of a curve")
    p.add_argument("--input")

    p = add("taut-exists", cmd_taut_exists, "parity predicates for genus g")
    p.add_argument("--g", type=int, required=True)

    _add_config_args(add("singular", cmd_singular, "whether a configuration is a singular moduli point"))

    p = add("verify-all", cmd_verify_all, "run the acceptance suite")
    p.add_argument("--gmax", type=int, default=None)
    return parser


def run(argv=None) -> tuple[CommandResult, int]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return CommandResult("error", {"error": "usage"}), code
    # set here, not via set_defaults, since the shared parent actions would be mutated
    args.trace = getattr(args, "trace", False)
    args.jobs = getattr(args, "jobs", 1)
    try:
        payload, trace = args.func(args)
        return CommandResult("ok", payload, trace if args.trace else None), EXIT_OK
    except MalformedInput as exc:
        return CommandResult("error", {"error": "MalformedInput", "message": str(exc)}), EXIT_JSON
    except HyperellError as exc:
        return CommandResult("error", {"error": type(exc).__name__, "message": str(exc)}), EXIT_PRECONDITION


def main(argv=None) -> int:
    result, code = run(argv)
    if result.payload != {"error": "usage"}:
        print(dumps(result.to_json()))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
