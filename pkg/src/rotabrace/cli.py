"""Command-line driver: ``rotabrace <command> ...``.

Exit status is 0 when every property check passes, 1 when a check fails and
2 for unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .catalog import (
    BUILTIN_NAMES,
    STAGES,
    ParseError,
    PipelineOptions,
    StageDependencyMissing,
    UnknownCarrier,
    VerificationError,
    builtin_catalog,
    entry_from_payload,
    ideal_checks,
    load_brace,
    load_carrier,
    load_operator,
    load_solution,
    read_json,
    render_text,
    run_catalog,
    run_pipeline,
)
from .clifford import CliffordError
from .rota_baxter import CarrierTooLarge, NotRotaBaxter, structural_identities
from .weak_brace import (
    BraceError,
    NotAnIdeal,
    brace_from_operator,
    enumerate_ideals,
    is_ideal,
    opposite_brace,
    quotient_brace,
    socle,
)
from .ybe import check_braid, random_pair_map, regularity_report, solution_from_brace


def _emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _options(args):
    return PipelineOptions(
        workers=args.workers,
        max_order=args.max_order,
        max_ideal_order=args.max_ideal_order,
        max_equiv_order=args.max_equiv_order,
        timing=args.timing,
    )


def _file_kind(data):
    if not isinstance(data, dict):
        return None
    if "meet" in data:
        return "spec"
    if "add_table" in data:
        return "brace"
    if "r" in data:
        return "solution"
    if "images" in data:
        return "operator"
    if "table" in data:
        return "carrier"
    return None


def _solution_result(r, brace=None):
    braid = check_braid(r)
    out = {"order": r.order, "braid": bool(braid)}
    if not braid:
        out["witness"] = list(braid.witness)
    out["left_nondegenerate"] = r.left_nondegenerate
    out["right_nondegenerate"] = r.right_nondegenerate
    out["bijective"] = r.is_bijective
    ok = bool(braid)
    if brace is not None:
        reg = regularity_report(brace, r, solution_from_brace(opposite_brace(brace)))
        out["regularity"] = reg
        ok = ok and reg["r_rop_r"] and reg["rop_r_rop"] and reg["r_rop_commute"]
        ok = ok and reg["lambda_completely_regular"] and reg["rho_completely_regular"]
    return out, ok


def cmd_verify(args):
    data = read_json(args.file)
    kind = _file_kind(data)
    if kind in ("carrier", "spec"):
        entry = entry_from_payload(data, args.file)
        _emit({"kind": entry.kind, "name": entry.name, "order": entry.order, "verified": True})
        return 0
    if kind == "operator":
        if "carrier" not in data:
            raise ParseError("operator file has no 'carrier' field", source=args.file)
        entry = load_carrier(data["carrier"])
        R = load_operator(args.file, entry.carrier)
        v = structural_identities(entry.carrier, R.images)
        _emit({"kind": "operator", "carrier": entry.name, "verified": True, "structural_identities": bool(v)})
        return 0 if v else 1
    if kind == "brace":
        B = load_brace(args.file)
        _emit({"kind": "brace", "name": B.name, "order": B.order, "verified": True})
        return 0
    if kind == "solution":
        r = load_solution(args.file)
        out, ok = _solution_result(r)
        _emit({"kind": "solution", **out})
        return 0 if ok else 1
    raise ParseError("unrecognised file format", source=args.file)


def cmd_enumerate(args):
    entry = load_carrier(args.carrier)
    rep = run_pipeline(entry, ["enumerate"], _options(args))
    ops = rep.data["operators"]
    _emit({"carrier": entry.name, "count": ops["count"], "operators": ops["images"]})
    return 0 if rep.ok else 1


def cmd_build_brace(args):
    entry = load_carrier(args.carrier)
    R = load_operator(args.operator_file, entry.carrier)
    B = brace_from_operator(entry.carrier, R)
    _emit(B.to_dict())
    return 0


def cmd_check_ybe(args):
    if args.random is not None:
        r = random_pair_map(args.random, args.seed)
        out, ok = _solution_result(r)
        out["seed"] = args.seed
        out["solution"] = r.to_dict()
        _emit(out)
        return 0 if ok else 1
    if args.file is None:
        raise ParseError("give a brace or solution file, or --random N")
    data = read_json(args.file)
    if _file_kind(data) == "solution":
        out, ok = _solution_result(load_solution(args.file))
    else:
        B = load_brace(args.file)
        r = solution_from_brace(B)
        out, ok = _solution_result(r, B)
        out["solution"] = r.to_dict()
    _emit(out)
    return 0 if ok else 1


def cmd_classify(args):
    entry = load_carrier(args.carrier)
    rep = run_pipeline(entry, ["enumerate", "classify"], _options(args))
    return _render(rep.data, args)


def cmd_ideals(args):
    B = load_brace(args.brace_file)
    ideals = enumerate_ideals(B, args.max_ideal_order)
    soc = socle(B)
    checks = ideal_checks(B, ideals)
    _emit({
        "order": B.order,
        "ideals": [list(I.members) for I in ideals],
        "socle": list(soc.members),
        "checks": checks,
    })
    return 0 if all(checks.values()) and is_ideal(B, soc.members) else 1


def _parse_ideal(text):
    text = text.strip()
    if text.startswith("["):
        return [int(x) for x in json.loads(text)]
    return [int(x) for x in text.split(",") if x.strip()]


def cmd_quotient(args):
    B = load_brace(args.brace_file)
    members = _parse_ideal(args.ideal)
    verdict = is_ideal(B, members)
    if not verdict:
        raise NotAnIdeal("I", verdict)
    Q, proj = quotient_brace(B, members)
    _emit({"quotient": Q.to_dict(), "projection": proj.tolist()})
    return 0


def _render(data, args):
    if args.format == "text":
        sys.stdout.write(render_text(data))
    else:
        sys.stdout.write(json.dumps(data, indent=2) + "\n")
    return 0 if data["ok"] else 1


def cmd_report(args):
    stages = None
    if args.stages:
        stages = [s for item in args.stages for s in item.split(",") if s]
    if args.carrier == ["all"]:
        entries = builtin_catalog()
    else:
        entries = [load_carrier(c) for c in args.carrier]
    if len(entries) == 1:
        data = run_pipeline(entries[0], stages, _options(args)).data
    else:
        data = run_catalog(entries, stages, _options(args))
    return _render(data, args)


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="worker processes (default 1)")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for check-ybe --random (default 0)")
    p.add_argument("--max-order", type=int, default=argparse.SUPPRESS, help="enumeration cap (default 8)")
    p.add_argument("--max-ideal-order", type=int, default=argparse.SUPPRESS, help="ideal search cap (default 10)")
    p.add_argument("--max-equiv-order", type=int, default=argparse.SUPPRESS, help="equivalence search cap (default 8)")
    p.add_argument("--timing", action="store_true", default=argparse.SUPPRESS, help="include stage timings in reports")
    return p


_DEFAULTS = {"workers": 1, "seed": 0, "max_order": 8, "max_ideal_order": 10, "max_equiv_order": 8, "timing": False}


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(
        prog="rotabrace",
        parents=[common],
        description="Rota-Baxter operators, dual weak braces and Yang-Baxter solutions on finite Clifford semigroups.",
        epilog=f"builtin carriers: {', '.join(BUILTIN_NAMES)} (use builtin:NAME or a JSON file)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="verify a carrier, spec, operator, brace or solution file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate-rb", parents=[common], help="list every Rota-Baxter operator on a carrier")
    p.add_argument("carrier")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("build-brace", parents=[common], help="brace induced by an operator")
    p.add_argument("carrier")
    p.add_argument("operator_file")
    p.set_defaults(func=cmd_build_brace)

    p = sub.add_parser("check-ybe", parents=[common], help="braid and regularity checks")
    p.add_argument("file", nargs="?")
    p.add_argument("--random", type=int, metavar="N", help="check a seeded random map on N elements instead")
    p.set_defaults(func=cmd_check_ybe)

    for name, func, help_ in (
        ("classify", cmd_classify, "operators up to automorphism"),
        ("report", cmd_report, "full classification report ('all' for the builtin catalog)"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        if name == "report":
            p.add_argument("carrier", nargs="+")
            p.add_argument("--stages", action="append", help=f"comma-separated subset of {','.join(STAGES)}")
        else:
            p.add_argument("carrier")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="format", action="store_const", const="json")
        fmt.add_argument("--text", dest="format", action="store_const", const="text")
        p.set_defaults(func=func, format="json")

    p = sub.add_parser("ideals", parents=[common], help="ideals and socle of a brace")
    p.add_argument("brace_file")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("quotient", parents=[common], help="quotient of a brace by an ideal, e.g. 0,3,4")
    p.add_argument("brace_file")
    p.add_argument("ideal")
    p.set_defaults(func=cmd_quotient)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in _DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    try:
        return args.func(args)
    except (ParseError, VerificationError, UnknownCarrier, StageDependencyMissing, CarrierTooLarge,
            NotRotaBaxter, NotAnIdeal, BraceError, CliffordError, ValueError) as exc:
        print(f"rotabrace: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
