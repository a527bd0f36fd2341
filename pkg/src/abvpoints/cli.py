"""Command-line front end.

Every job prints one JSON document on stdout (JSON-lines for campaigns) and
a one-line summary on stderr. Exit codes: 0 success or PASS, 1 hypothesis not
met / FAIL / internal inconsistency, 2 invalid input, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Sequence

from . import __version__
from .errors import AbvError, HypothesisNotMet, InternalConsistencyError, InvalidInput, ResourceCap
from .exactcore import intfactor
from .groups import AbelianGroupStructure
from .orders import (
    NumberField,
    NumberFieldOrder,
    conductor,
    element_from_spec,
    factor_coprime_ideal,
    is_gorenstein,
    maximal_order,
    order_construct,
    trace_dual,
    weil_field,
)
from .structure import MODE_NAMES, StructureReport, fbar_tower, rational_points_structure, torsion_structure
from .weil import enumerate_weil, is_ordinary, validate_weil

STATUS = {InvalidInput: "invalid", HypothesisNotMet: "hypothesis_not_met", ResourceCap: "resource_cap"}


class UsageError(InvalidInput):
    pass


# ---------------------------------------------------------------- JSON helpers


def jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, AbelianGroupStructure):
        return x.to_list()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def dumps(doc: dict) -> str:
    return json.dumps(jsonable(doc), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------- parsing


def int_list(text: str) -> list[int]:
    try:
        return [int(c) for c in text.split(",") if c.strip() != ""]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def rational_list(text: str) -> list[Fraction]:
    try:
        return [Fraction(c.strip()) for c in text.split(",") if c.strip() != ""]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"expected comma-separated rationals, got {text!r}") from exc


def parse_order_spec(text: str):
    if text in ("zpi", "zpipibar", "maximal"):
        return text
    if text.startswith("gens:"):
        return [rational_list(g) for g in text[5:].split(";") if g.strip()]
    raise UsageError(f"unknown order spec {text!r}")


def _weil(args):
    if args.q is None or args.poly is None:
        raise UsageError("--q and --poly are required")
    return validate_weil(args.q, int_list(args.poly))


def _field_and_order(args):
    """(W or None, K, O) from either --q/--poly or --m."""
    spec = parse_order_spec(args.order)
    if getattr(args, "m", None):
        try:
            K = NumberField(int_list(args.m))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if spec in ("zpi", "zpipibar"):
            return None, K, NumberFieldOrder.equation_order(K)
        if spec == "maximal":
            return None, K, maximal_order(K)
        return None, K, NumberFieldOrder.generated_by(K, [element_from_spec(K, g) for g in spec])
    W = _weil(args)
    return W, weil_field(W), order_construct(W, spec)


def _base_doc(args, W=None, O=None) -> dict:
    doc = {"command": args.command}
    if W is not None:
        doc["q"] = W.q
        doc["poly"] = list(W.coeffs)
    if O is not None:
        doc["order_basis"] = O.basis
        doc["field"] = list(O.field.m)
    return doc


def _structure_doc(rep: StructureReport) -> dict:
    return {
        "mode": rep.mode,
        "n": rep.n,
        "s": rep.s,
        "d": rep.d,
        "invariants": rep.invariants,
        "cardinality": rep.cardinality,
        "crosscheck": rep.crosscheck,
        "certificates": [c.to_dict() for c in rep.certificates],
    }


# ---------------------------------------------------------------- commands


def cmd_validate(args) -> tuple[dict, int]:
    W = _weil(args)
    doc = _base_doc(args, W)
    doc.update(status="valid", g=W.g, d=W.d, m=list(W.m_coeffs), ordinary=is_ordinary(W))
    return doc, 0


def cmd_structure(args) -> tuple[dict, int]:
    W = _weil(args)
    O = order_construct(W, parse_order_spec(args.order))
    rep = rational_points_structure(W, O, args.n, args.mode)
    doc = _base_doc(args, W, O)
    doc.update(status="ok", **_structure_doc(rep))
    return doc, 0


def cmd_torsion(args) -> tuple[dict, int]:
    W = _weil(args)
    O = order_construct(W, parse_order_spec(args.order))
    K = weil_field(W)
    rep = torsion_structure(W, O, element_from_spec(K, rational_list(args.s)), args.mode)
    doc = _base_doc(args, W, O)
    doc.update(status="ok", **_structure_doc(rep))
    return doc, 0


def cmd_tower(args) -> tuple[dict, int]:
    W = _weil(args)
    O = order_construct(W, parse_order_spec(args.order))
    rep = fbar_tower(W, O, int_list(args.chain), int_list(args.ell) if args.ell else (), args.depth, args.mode)
    doc = _base_doc(args, W, O)
    doc.update(
        status="ok",
        chain=[{"n": n, "invariants": G} for n, G in rep.chain],
        growth={str(ell): [{"k": k, "invariants": G} for k, G in v] for ell, v in rep.growth.items()},
        limit_description=list(rep.limit_description),
    )
    return doc, 0


def cmd_factor(args) -> tuple[dict, int]:
    W, K, O = _field_and_order(args)
    s = element_from_spec(K, rational_list(args.s))
    factors = factor_coprime_ideal(O, s)
    doc = _base_doc(args, W, O)
    doc.update(
        status="ok",
        s=s,
        factors=[
            {"hnf": pr.num, "den": pr.den, "norm": pr.norm(), "exponent": e, "residue": pr.residue_structure()}
            for pr, e in factors
        ],
    )
    return doc, 0


def cmd_gorenstein(args) -> tuple[dict, int]:
    W, K, O = _field_and_order(args)
    dual = trace_dual(O)
    doc = _base_doc(args, W, O)
    doc.update(status="ok", gorenstein=is_gorenstein(O), trace_dual={"den": dual.den, "hnf": dual.num})
    return doc, 0


def cmd_conductor(args) -> tuple[dict, int]:
    W, K, O = _field_and_order(args)
    f = conductor(O)
    doc = _base_doc(args, W, O)
    doc.update(status="ok", conductor={"den": f.den, "hnf": f.num, "index": f.norm()}, maximal=f.is_unit())
    return doc, 0


def _verification_doc(rep) -> dict:
    return {
        "status": rep.verdict,
        "mode": MODE_NAMES.get(rep.mode, rep.mode),
        "q": rep.q,
        "n": rep.n,
        "poly": list(rep.poly),
        "cardinality": rep.oracle_count,
        "crosscheck": rep.expected_count,
        "invariants": rep.oracle_invariants,
        "predictions": [p.to_dict() for p in rep.predictions],
        "match_set": rep.match_set,
        "notes": rep.notes,
    }


def cmd_verify_ec(args) -> tuple[dict, int]:
    from .oracle_ec import EllipticCurve, verify_ec

    E = EllipticCurve(args.p, args.k, int_list(args.curve))
    rep = verify_ec(E, args.n, cap=args.cap_field, index_cap=args.cap_index, integral_pi=args.integral_pi)
    doc = {"command": args.command, "curve": list(E.a), "p": E.p, "k": E.k}
    doc.update(_verification_doc(rep))
    return doc, 0 if rep.passed else 1


def cmd_verify_jac(args) -> tuple[dict, int]:
    from .oracle_jac2 import HyperellipticCurve, verify_jac

    C = HyperellipticCurve(args.p, int_list(args.f))
    rep = verify_jac(C, args.n, cap=args.cap_field, index_cap=args.cap_index)
    doc = {"command": args.command, "f": list(C.f), "p": C.p}
    doc.update(_verification_doc(rep))
    return doc, 0 if rep.passed else 1


def _campaign_item(item):
    """Worker for --verify-ec-all: one (curve, n) verification as (JSON line, passed)."""
    p, k, a, n, cap, index_cap = item
    from .oracle_ec import EllipticCurve, verify_ec

    E = EllipticCurve(p, k, a)
    try:
        rep = verify_ec(E, n, cap=cap, index_cap=index_cap)
        doc = {"curve": list(a), **_verification_doc(rep)}
    except AbvError as exc:
        doc = {"curve": list(a), "n": n, **_error_doc(exc)}
    return dumps(doc), doc["status"] == "PASS"


def cmd_enumerate(args, out=sys.stdout) -> tuple[dict, int]:
    from .exactcore.intfactor import prime_power

    pk = prime_power(args.q)
    if pk is None:
        raise UsageError(f"q = {args.q} is not a prime power")
    try:
        polys = enumerate_weil(args.q, args.g)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = {
        "command": "enumerate",
        "status": "ok",
        "q": args.q,
        "g": args.g,
        "count": len(polys),
        "polys": [{"poly": list(W.coeffs), "d": W.d, "m": list(W.m_coeffs), "ordinary": is_ordinary(W)} for W in polys],
    }
    if not args.verify_ec_all:
        return doc, 0
    from .oracle_ec import all_curves

    p, k = pk
    curves = [E.a for E in all_curves(p, k)]
    ns = [n for n in range(1, 64) if args.q**n <= args.max_field]
    items = [(p, k, a, n, args.cap_field, args.cap_index) for a in curves for n in ns]
    print(dumps(doc), file=out)
    failures = 0
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            lines = ex.map(_campaign_item, items, chunksize=64)
            for line, ok in lines:
                failures += not ok
                print(line, file=out, flush=True)
    else:
        for item in items:
            line, ok = _campaign_item(item)
            failures += not ok
            print(line, file=out, flush=True)
    summary = {
        "command": "enumerate",
        "status": "PASS" if failures == 0 else "FAIL",
        "curves": len(curves),
        "verifications": len(items),
        "failures": failures,
    }
    return summary, 0 if failures == 0 else 1


COMMANDS = {
    "validate": cmd_validate,
    "structure": cmd_structure,
    "torsion": cmd_torsion,
    "tower": cmd_tower,
    "factor": cmd_factor,
    "gorenstein": cmd_gorenstein,
    "conductor": cmd_conductor,
    "verify-ec": cmd_verify_ec,
    "verify-jac": cmd_verify_jac,
    "enumerate": cmd_enumerate,
}


# ---------------------------------------------------------------- argparse


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="abvpoints", description="Group structure of A(F_{q^n}) for simple abelian varieties.")
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap-field", type=int, default=10**5, help="largest field size for exhaustive oracles")
    common.add_argument("--cap-index", type=int, default=10**4, help="largest [O_K : O_min] for order enumeration")
    common.add_argument("--cap-factor", type=int, default=None, help="Pollard rho iteration budget")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for campaigns")

    weil = argparse.ArgumentParser(add_help=False)
    weil.add_argument("--q", type=int)
    weil.add_argument("--poly", help="Weil polynomial coefficients, low degree first")

    order = argparse.ArgumentParser(add_help=False)
    order.add_argument("--order", default="zpi", help="zpi | zpipibar | maximal | gens:c,c,..;c,c,..")

    mode = argparse.ArgumentParser(add_help=False)
    mode.add_argument("--mode", choices=["gorenstein", "center", "auto"], default="auto")

    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--m", help="work in Q[t]/(m) directly instead of Q(pi)")

    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common, weil], help="validate a Weil polynomial")
    p = sub.add_parser("structure", parents=[common, weil, order, mode], help="predicted A(F_{q^n})")
    p.add_argument("--n", type=int, default=1)
    p = sub.add_parser("torsion", parents=[common, weil, order, mode], help="predicted A[s]")
    p.add_argument("--s", required=True, help="element of O in power-basis coordinates")
    p = sub.add_parser("tower", parents=[common, weil, order, mode], help="structures along a divisibility chain")
    p.add_argument("--chain", required=True)
    p.add_argument("--ell", default="")
    p.add_argument("--depth", type=int, default=2)
    for name, helptext in (("factor", "prime factorization of sO"), ("gorenstein", "Gorenstein test"), ("conductor", "conductor of O")):
        p = sub.add_parser(name, parents=[common, weil, order, field], help=helptext)
        if name == "factor":
            p.add_argument("--s", required=True)
    p = sub.add_parser("verify-ec", parents=[common], help="verify against an elliptic curve")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--curve", required=True, help="a1,a2,a3,a4,a6")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--integral-pi", choices=["center", "skip"], default="center")
    p = sub.add_parser("verify-jac", parents=[common], help="verify against a genus-2 Jacobian")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--f", required=True, help="f0,...,f4 of the monic quintic f")
    p.add_argument("--n", type=int, default=1)
    p = sub.add_parser("enumerate", parents=[common], help="list Weil polynomials; optionally verify all curves")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--g", type=int, default=1)
    p.add_argument("--verify-ec-all", action="store_true")
    p.add_argument("--max-field", type=int, default=10**4)
    return ap


def _error_doc(exc: AbvError) -> dict:
    status = "internal_error" if isinstance(exc, InternalConsistencyError) else "error"
    for cls, name in STATUS.items():
        if isinstance(exc, cls):
            status = name
    return {"status": status, "reason": exc.reason, "message": str(exc)}


def _summary(doc: dict) -> str:
    parts = [f"{doc.get('command', '')}: {doc.get('status', '')}"]
    for key in ("reason", "invariants", "cardinality", "mode"):
        if key in doc and doc[key] is not None:
            v = doc[key]
            if key == "invariants" and isinstance(v, AbelianGroupStructure):
                v = str(v)
            parts.append(f"{key}={jsonable(v)}")
    return " ".join(parts)


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.cap_factor is not None:
        intfactor.DEFAULT_RHO_BUDGET = args.cap_factor
    try:
        if args.command == "enumerate":
            doc, code = cmd_enumerate(args, out)
        else:
            doc, code = COMMANDS[args.command](args)
    except AbvError as exc:
        doc = {"command": args.command, **_error_doc(exc)}
        if getattr(args, "q", None) is not None:
            doc["q"] = args.q
        if getattr(args, "poly", None) is not None:
            doc["poly"] = args.poly
        code = exc.exit_code
    except ValueError as exc:
        doc = {"command": args.command, "status": "invalid", "reason": "BadArgument", "message": str(exc)}
        code = 2
    print(dumps(doc), file=out)
    print(_summary(doc), file=err)
    return code


def main() -> None:
    sys.exit(run())
