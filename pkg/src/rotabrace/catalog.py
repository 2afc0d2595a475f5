"""Carrier catalog, JSON file loading and the classification pipeline."""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from itertools import permutations
from pathlib import Path

import numpy as np

from ._parallel import parallel_map
from .clifford import (
    CliffordError,
    CliffordSemigroup,
    SpecInvariantViolated,
    StrongSemilatticeSpec,
    automorphisms,
    build_strong_semilattice,
    cyclic_group,
    direct_product,
    find_isomorphism,
    verify_clifford,
)
from .rota_baxter import (
    DEFAULT_MAX_ORDER,
    CarrierTooLarge,
    NotRotaBaxter,
    RotaBaxterOperator,
    enumerate_rota_baxter,
    is_rota_baxter,
    operator_orbits,
    opposite_images,
    structural_identities,
)
from .weak_brace import (
    DEFAULT_MAX_IDEAL_ORDER,
    BraceError,
    DualWeakBrace,
    brace_from_operator,
    congruence_classes,
    enumerate_ideals,
    ideal_sum_and_product,
    is_bi_weak_brace,
    is_ideal,
    operator_circ_inverse,
    opposite_brace,
    quotient_brace,
    socle,
)
from .ybe import (
    SolutionMap,
    check_braid,
    is_equivalence,
    operator_rho_formula,
    regularity_report,
    solution_from_brace,
)

SCHEMA_VERSION = 1
DEFAULT_MAX_EQUIV_ORDER = 8
STAGES = ("enumerate", "classify", "braces", "ybe", "ideals")
STAGE_NEEDS = {"classify": "enumerate", "braces": "enumerate", "ybe": "braces", "ideals": "braces"}
CATALOG_ENV = "ROTABRACE_CATALOG"


class ParseError(ValueError):
    def __init__(self, message, line=None, source=""):
        where = f"{source}:{line}: " if line is not None else (f"{source}: " if source else "")
        super().__init__(where + message)
        self.line = line
        self.source = source


class VerificationError(ValueError):
    def __init__(self, cause, source=""):
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}{cause}")
        self.cause = cause
        self.witness = getattr(cause, "witness", None)
        if self.witness is None and getattr(cause, "verdict", None) is not None:
            self.witness = cause.verdict.witness


class UnknownCarrier(LookupError):
    pass


class StageDependencyMissing(ValueError):
    def __init__(self, stage, needs):
        super().__init__(f"stage '{stage}' needs stage '{needs}'")
        self.stage = stage
        self.needs = needs


# ---------------------------------------------------------------------------
# builtins


def _symmetric_group_3():
    perms = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return table


def _z2_chain_spec():
    z2 = cyclic_group(2).table.tolist()
    return {
        "name": "Z2>Z2",
        "meet": [[0, 0], [0, 1]],
        "groups": [{"table": z2}, {"table": z2}],
        "links": [{"from": 1, "to": 0, "images": [0, 1]}],
    }


def _builtin_payloads():
    def carrier(name, table):
        return {"name": name, "order": len(table), "table": [list(map(int, r)) for r in table]}

    return {
        "Z2": carrier("Z2", cyclic_group(2).table.tolist()),
        "Z3": carrier("Z3", cyclic_group(3).table.tolist()),
        "Z4": carrier("Z4", cyclic_group(4).table.tolist()),
        "V4": carrier("V4", direct_product(cyclic_group(2), cyclic_group(2)).table.tolist()),
        "Z6": carrier("Z6", cyclic_group(6).table.tolist()),
        "S3": carrier("S3", _symmetric_group_3()),
        # 0 = identity, 1 = generator of the top Z2, 2 = bottom idempotent
        "CS3": carrier("CS3", [[0, 1, 2], [1, 0, 2], [2, 2, 2]]),
        "SL2": carrier("SL2", [[0, 1], [1, 1]]),
        "Z2>Z2": _z2_chain_spec(),
    }


BUILTINS = _builtin_payloads()
BUILTIN_NAMES = tuple(BUILTINS)


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    kind: str  # group, clifford or spec
    payload: dict
    provenance: str
    carrier: CliffordSemigroup = field(repr=False)
    spec: StrongSemilatticeSpec | None = field(default=None, repr=False)

    @property
    def order(self):
        return self.carrier.order


def entry_from_payload(payload, provenance, default_name=""):
    """Verify a carrier or strong-semilattice payload and wrap it."""
    if not isinstance(payload, dict):
        raise ParseError("expected a JSON object", source=provenance)
    name = str(payload.get("name") or default_name)
    try:
        if "meet" in payload:
            spec = StrongSemilatticeSpec.from_dict({**payload, "name": name})
            S = build_strong_semilattice(spec, name)
            return CatalogEntry(name, "spec", payload, provenance, S, spec)
        if "table" not in payload:
            raise ParseError("missing key 'table' or 'meet'", source=provenance)
        S = verify_clifford(payload["table"], name)
        if "order" in payload and int(payload["order"]) != S.order:
            raise ParseError(f"declared order {payload['order']} but table has {S.order} rows", source=provenance)
    except (CliffordError, SpecInvariantViolated) as exc:
        raise VerificationError(exc, provenance) from exc
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed payload ({exc!r})", source=provenance) from exc
    return CatalogEntry(name, "group" if S.is_group else "clifford", payload, provenance, S)


def read_json(path):
    """Parse a JSON file, turning decode errors into ParseError with a line number."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(str(exc), source=str(path)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, source=str(path)) from exc


def catalog_dirs():
    raw = os.environ.get(CATALOG_ENV, "")
    return [Path(p) for p in raw.split(os.pathsep) if p]


def load_carrier(ref):
    """Load ``builtin:NAME``, a JSON file path, or a bare name.

    Bare names are looked up among the builtins first and then as
    ``NAME.json`` in each directory listed in ROTABRACE_CATALOG.
    """
    ref = str(ref)
    if ref.startswith("builtin:"):
        key = ref.split(":", 1)[1]
        if key not in BUILTINS:
            raise UnknownCarrier(f"no builtin carrier named {key!r}; have {', '.join(BUILTIN_NAMES)}")
        return entry_from_payload(BUILTINS[key], "builtin")
    path = Path(ref)
    if path.is_file():
        return entry_from_payload(read_json(path), str(path), path.stem)
    if ref in BUILTINS:
        return entry_from_payload(BUILTINS[ref], "builtin")
    for d in catalog_dirs():
        for cand in (d / ref, d / f"{ref}.json"):
            if cand.is_file():
                return entry_from_payload(read_json(cand), str(cand), cand.stem)
    raise UnknownCarrier(f"cannot find carrier {ref!r}")


def builtin_catalog():
    return [load_carrier(f"builtin:{k}") for k in BUILTIN_NAMES]


def load_operator(path, carrier):
    data = read_json(path)
    try:
        return RotaBaxterOperator(carrier, data["images"])
    except NotRotaBaxter as exc:
        raise VerificationError(exc, str(path)) from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed operator ({exc!r})", source=str(path)) from exc


def load_brace(path):
    data = read_json(path)
    try:
        return DualWeakBrace.from_dict(data)
    except (BraceError, CliffordError) as exc:
        raise VerificationError(exc, str(path)) from exc
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed brace ({exc!r})", source=str(path)) from exc


def load_solution(path):
    data = read_json(path)
    try:
        return SolutionMap.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed solution ({exc!r})", source=str(path)) from exc


# ---------------------------------------------------------------------------
# per-operator analysis, run in worker processes


def _semilattice_of_idempotents(B):
    E = list(B.idempotents)
    pos = {e: i for i, e in enumerate(E)}
    return verify_clifford([[pos[int(B.add_table[a, b])] for b in E] for a in E])


def ideal_checks(B, ideals):
    """Closure of the ideal list under + and o, and quotient sanity."""
    members = {I.members for I in ideals}
    E = _semilattice_of_idempotents(B)
    ok = {"sum_product": True, "quotients": True, "congruences_agree": True}
    for I in ideals:
        for J in ideals:
            s, p = ideal_sum_and_product(B, I.members, J.members)
            if s.members not in members or p.members not in members:
                ok["sum_product"] = False
        Q, _ = quotient_brace(B, I)
        if find_isomorphism(_semilattice_of_idempotents(Q), E) is None:
            ok["quotients"] = False
        add = congruence_classes(B, I.members, "additive")
        mul = congruence_classes(B, I.members, "multiplicative")
        if sorted(add) != sorted(mul):
            ok["congruences_agree"] = False
    return ok


def _analyse_operator(job):
    table, name, images, stages, max_ideal_order = job
    S = verify_clifford(table, name)
    R = RotaBaxterOperator(S, images)
    B = brace_from_operator(S, R)
    out = {"operator": list(R.images)}
    bi = is_bi_weak_brace(B)
    out["brace"] = {
        "trivial": B.is_trivial,
        "almost_trivial": B.is_almost_trivial,
        "bi_weak": bool(bi),
        "skew": B.is_skew_brace,
        "circ_inverse_formula": [int(x) for x in B.cinv] == operator_circ_inverse(S, R),
    }
    checks = [out["brace"]["circ_inverse_formula"]]
    if "ybe" in stages:
        r = solution_from_brace(B)
        r_op = solution_from_brace(opposite_brace(B))
        reg = regularity_report(B, r, r_op)
        s = solution_from_brace(brace_from_operator(S, RotaBaxterOperator(S, opposite_images(S, R.images))))
        ybe = {"braid": bool(check_braid(r)), "braid_op": bool(check_braid(r_op))}
        ybe.update(reg)
        ybe["rho_formula"] = bool(np.array_equal(operator_rho_formula(S, R, B), B.rho))
        ybe["opposite_duality"] = is_equivalence(r_op, s, S.inv)
        out["ybe"] = ybe
        must = ("braid", "braid_op", "r_rop_r", "rop_r_rop", "r_rop_commute",
                "lambda_completely_regular", "rho_completely_regular", "rho_formula", "opposite_duality")
        checks.extend(ybe[k] for k in must)
        if reg["skew_brace"]:
            checks.append(reg["inverse_is_opposite"])
    if "ideals" in stages:
        ideals = enumerate_ideals(B, max_ideal_order)
        soc = socle(B)
        ic = ideal_checks(B, ideals)
        out["ideals"] = {
            "count": len(ideals),
            "sizes": [len(I.members) for I in ideals],
            "members": [list(I.members) for I in ideals],
            "socle": list(soc.members),
            "socle_size": len(soc.members),
        }
        out["ideals"].update(ic)
        checks.append(bool(is_ideal(B, soc.members)))
        checks.extend(ic.values())
    out["ok"] = all(bool(c) for c in checks)
    return out


# ---------------------------------------------------------------------------
# pipeline


@dataclass(frozen=True)
class PipelineOptions:
    workers: int = 1
    max_order: int = DEFAULT_MAX_ORDER
    max_ideal_order: int = DEFAULT_MAX_IDEAL_ORDER
    max_equiv_order: int = DEFAULT_MAX_EQUIV_ORDER
    timing: bool = False


@dataclass
class ClassificationReport:
    data: dict

    @property
    def ok(self):
        return self.data["ok"]

    def to_json(self):
        return json.dumps(self.data, indent=2, sort_keys=False) + "\n"

    def to_text(self):
        return render_text(self.data)


def normalize_stages(stages):
    if stages is None:
        return list(STAGES)
    stages = set(stages)
    unknown = stages - set(STAGES)
    if unknown:
        raise ValueError(f"unknown stages: {', '.join(sorted(unknown))}")
    for st in stages:
        need = STAGE_NEEDS.get(st)
        if need and need not in stages:
            raise StageDependencyMissing(st, need)
    return [s for s in STAGES if s in stages]


def run_pipeline(entry, stages=None, options=None):
    """Run the selected stages on one carrier and assemble a report."""
    options = options or PipelineOptions()
    stages = normalize_stages(stages)
    S = entry.carrier
    timing = {}
    data = {
        "schema_version": SCHEMA_VERSION,
        "carrier": {"name": entry.name, "kind": entry.kind, "order": S.order},
        "stages": stages,
    }
    checks = {}

    t0 = time.perf_counter()
    ops = enumerate_rota_baxter(S, options.max_order, options.workers)
    timing["enumerate"] = time.perf_counter() - t0
    checks["operators_rota_baxter"] = all(bool(is_rota_baxter(S, R.images)) for R in ops)
    checks["structural_identities"] = all(bool(structural_identities(S, R.images)) for R in ops)
    data["operators"] = {"count": len(ops), "images": [list(R.images) for R in ops]}

    if "classify" in stages:
        if S.order > options.max_equiv_order:
            raise CarrierTooLarge(S.order, options.max_equiv_order)
        t0 = time.perf_counter()
        auts = automorphisms(S)
        classes = operator_orbits(ops, auts)
        index = {R.images: i for i, R in enumerate(ops)}
        data["classes"] = {
            "automorphism_count": len(auts),
            "count": len(classes),
            "representatives": [index[c[0].images] for c in classes],
            "members": [[index[R.images] for R in c] for c in classes],
        }
        checks["classes_partition"] = sorted(i for c in data["classes"]["members"] for i in c) == list(range(len(ops)))
        timing["classify"] = time.perf_counter() - t0

    if "braces" in stages:
        t0 = time.perf_counter()
        jobs = [(S.table, S.name, R.images, tuple(stages), options.max_ideal_order) for R in ops]
        results = parallel_map(_analyse_operator, jobs, options.workers)
        timing["analyse"] = time.perf_counter() - t0
        data["braces"] = [{"operator": i, **res["brace"]} for i, res in enumerate(results)]
        if "ybe" in stages:
            data["ybe"] = [{"operator": i, **res["ybe"]} for i, res in enumerate(results)]
        if "ideals" in stages:
            data["ideals"] = [{"operator": i, **res["ideals"]} for i, res in enumerate(results)]
        checks["per_operator"] = all(res["ok"] for res in results)

    data["summary"] = summarize(data)
    data["checks"] = checks
    data["ok"] = all(checks.values())
    if options.timing:
        data["timing"] = {k: round(v, 6) for k, v in timing.items()}
    return ClassificationReport(data)


def summarize(data):
    """Counts that re-derive from the lists in the report."""
    out = {"operators": len(data["operators"]["images"])}
    if "classes" in data:
        out["classes"] = len(data["classes"]["members"])
    if "braces" in data:
        for flag in ("trivial", "almost_trivial", "bi_weak", "skew"):
            out[flag] = sum(1 for b in data["braces"] if b[flag])
    if "ybe" in data:
        out["braid_verified"] = sum(1 for y in data["ybe"] if y["braid"])
        out["bijective"] = sum(1 for y in data["ybe"] if y["bijective"])
        out["nondegenerate"] = sum(1 for y in data["ybe"] if y["left_nondegenerate"] and y["right_nondegenerate"])
    if "ideals" in data:
        out["ideal_counts"] = [i["count"] for i in data["ideals"]]
        out["socle_sizes"] = [i["socle_size"] for i in data["ideals"]]
    return out


def run_catalog(entries, stages=None, options=None):
    """Reports for several carriers plus an overall verdict."""
    reports = [run_pipeline(e, stages, options).data for e in entries]
    return {"schema_version": SCHEMA_VERSION, "reports": reports, "ok": all(r["ok"] for r in reports)}


# ---------------------------------------------------------------------------
# text rendering


def _yn(flag):
    return "yes" if flag else "no"


def _table(headers, rows):
    cells = [headers] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return lines


def render_text(data):
    if "reports" in data:
        parts = [render_text(r) for r in data["reports"]]
        parts.append(f"overall: {'PASS' if data['ok'] else 'FAIL'}")
        return "\n\n".join(parts) + "\n"
    c = data["carrier"]
    lines = [f"carrier {c['name']} ({c['kind']}, order {c['order']})"]
    lines.append(f"stages: {', '.join(data['stages'])}")
    ops = data["operators"]["images"]
    lines.append(f"Rota-Baxter operators: {len(ops)}")
    if "classes" in data:
        cl = data["classes"]
        lines.append(f"classes under {cl['automorphism_count']} automorphisms: {cl['count']}")
    rows = []
    for i, images in enumerate(ops):
        row = [i, " ".join(map(str, images))]
        if "classes" in data:
            row.append(next(k for k, m in enumerate(data["classes"]["members"]) if i in m))
        if "braces" in data:
            b = data["braces"][i]
            row += [_yn(b["trivial"]), _yn(b["almost_trivial"]), _yn(b["bi_weak"]), _yn(b["skew"])]
        if "ybe" in data:
            y = data["ybe"][i]
            row += [_yn(y["braid"]), _yn(y["left_nondegenerate"] and y["right_nondegenerate"]),
                    _yn(y["r_rop_r"] and y["rop_r_rop"] and y["r_rop_commute"])]
        if "ideals" in data:
            d = data["ideals"][i]
            row += [d["count"], d["socle_size"]]
        rows.append(row)
    headers = ["#", "images"]
    if "classes" in data:
        headers.append("class")
    if "braces" in data:
        headers += ["trivial", "almost", "bi-weak", "skew"]
    if "ybe" in data:
        headers += ["braid", "nondeg", "regular"]
    if "ideals" in data:
        headers += ["ideals", "socle"]
    lines += [""] + _table(headers, rows)
    failed = [k for k, v in data["checks"].items() if not v]
    lines.append("")
    lines.append("checks: " + ("all passed" if not failed else "FAILED " + ", ".join(failed)))
    if "timing" in data:
        lines.append("timing: " + ", ".join(f"{k} {v:.3f}s" for k, v in data["timing"].items()))
    return "\n".join(lines) + "\n"
