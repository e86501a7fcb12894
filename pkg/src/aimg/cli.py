"""Command line interface.

Subcommands: classify, check-curve, genus, commutator, surjectivity,
condition.  The group-size cap can be set with --cap-order or the
AIMG_CAP_ORDER environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources

from .arithcond import eval_condition
from .classifier import (
    check_curve,
    classify,
    load_catalog,
)
from .errors import AimgError, InvariantViolation, SchemaError
from .matgroup import FiniteMatrixGroup, closure
from .modgenus import genus
from .modmatrix import ResidueMatrix
from .opengroup import OpenSubgroup, commutator_open, transpose_group
from .ratfunc import INFINITY
from .surjectivity import TruncatedAdelicGroup, surjectivity_check


def _load_json_file(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e}")
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e}")


def _load_group(path) -> OpenSubgroup:
    return OpenSubgroup.from_json_dict(_load_json_file(path))


def _default_catalog():
    ref = resources.files("aimg").joinpath("data/sample_catalog.json")
    return load_catalog(json.loads(ref.read_text()))


def _catalog_from(args):
    if args.catalog:
        return load_catalog(args.catalog)
    return _default_catalog()


def _parse_v(text) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"not a rational number: {text!r}")


def _cmd_classify(args):
    entries = load_catalog(args.catalog) if args.catalog \
        else _default_catalog()
    report = classify(entries)
    payload = report.to_json_dict()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    else:
        json.dump(payload, sys.stdout, indent=2)
        print()
    for e in report.entries:
        line = f"{e.label}: {e.bucket or 'error'}"
        if e.commutator_index is not None:
            line += f" (commutator index {e.commutator_index})"
        print(line, file=sys.stderr)
        for m in e.members:
            print(f"  v={m.v}: {m.bucket or 'error'}", file=sys.stderr)
    return 1 if report.had_violations else 0


def _cmd_check_curve(args):
    catalog = _catalog_from(args)
    j = INFINITY if args.j == "oo" else _parse_v(args.j)
    result = check_curve(args.label, j, catalog)
    out = {"label": args.label, "j": args.j, "result": result.kind}
    if result.kind == "Member":
        out["witnesses"] = [
            "oo" if w is INFINITY else str(w) for w in result.witnesses]
    json.dump(out, sys.stdout, indent=2)
    print()
    return 0


def _cmd_genus(args):
    g = genus(_load_group(args.group))
    json.dump({"genus": g.genus, "degree": g.degree, "e2": g.e2,
               "e3": g.e3, "e_inf": g.e_inf}, sys.stdout, indent=2)
    print()
    return 0


def _cmd_commutator(args):
    G = _load_group(args.group)
    if args.transpose:
        G = transpose_group(G)
    res = commutator_open(G)
    json.dump({
        "index_in_sl2": res.index_in_sl,
        "saturation_level": res.saturation_level,
        "det_full": res.det_full,
        "commutator": res.commutator.to_json_dict(),
    }, sys.stdout, indent=2)
    print()
    return 0


def _load_truncation(path) -> TruncatedAdelicGroup:
    data = _load_json_file(path)
    if not isinstance(data, dict) or "m_part" not in data:
        raise SchemaError("truncation JSON needs an 'm_part' group")
    m_sub = OpenSubgroup.from_json_dict(data["m_part"])
    m_part = m_sub.mod_level_group()
    parts = []
    for p in data.get("primes", []):
        if not isinstance(p, int) or p < 2:
            raise SchemaError(f"bad prime {p!r}")
        from .opengroup import full_gl2
        parts.append(full_gl2(p))
    for raw in data.get("prime_parts", []):
        parts.append(OpenSubgroup.from_json_dict(raw).mod_level_group())
    return TruncatedAdelicGroup(m_part, tuple(parts))


def _cmd_surjectivity(args):
    G = _load_truncation(args.group)
    data = _load_json_file(args.subgroup)
    sub = OpenSubgroup.from_json_dict(data)
    if sub.level != G.modulus:
        raise SchemaError(
            f"subgroup level {sub.level} != truncation modulus {G.modulus}")
    verdict = surjectivity_check(G, list(sub.gens))
    out = {"verdict": verdict.kind}
    if verdict.factor is not None:
        out["factor"] = str(verdict.factor)
    json.dump(out, sys.stdout, indent=2)
    print()
    return 0


def _cmd_condition(args):
    catalog = _catalog_from(args)
    entry = None
    for e in catalog:
        if e.label == args.label:
            entry = e
            break
    if entry is None:
        from .errors import UnknownLabel
        raise UnknownLabel(f"no catalog entry labelled {args.label!r}")
    v = _parse_v(args.v)
    cond = entry.conditions
    if cond is None:
        for m in entry.members:
            if m.v == v and m.conditions is not None:
                cond = m.conditions
                break
    if cond is None:
        print(f"{args.label}: no conditions recorded", file=sys.stderr)
        return 1
    result = eval_condition(cond, v, entry.J)
    json.dump({
        "label": args.label,
        "v": str(v),
        "holds": result.ok,
        "trace": [{"clause": c, "verdict": ok, "reason": why}
                  for c, ok, why in result.trace],
    }, sys.stdout, indent=2)
    print()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aimg",
        description="Genus-0 adelic Galois image computations")
    parser.add_argument(
        "--cap-order", type=int, default=None,
        help="override the group-size cap (also AIMG_CAP_ORDER)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a catalog")
    p.add_argument("--catalog", help="catalog JSON (default: shipped sample)")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--jobs", type=int, default=1,
                   help="accepted for compatibility; runs sequentially")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("check-curve", help="membership of j on a curve")
    p.add_argument("--label", required=True)
    p.add_argument("--j", required=True, help="rational NUM/DEN, or 'oo'")
    p.add_argument("--catalog")
    p.set_defaults(func=_cmd_check_curve)

    p = sub.add_parser("genus", help="genus of the curve of a group")
    p.add_argument("--group", required=True, help="open-subgroup JSON file")
    p.set_defaults(func=_cmd_genus)

    p = sub.add_parser("commutator", help="commutator of an open subgroup")
    p.add_argument("--group", required=True, help="open-subgroup JSON file")
    p.add_argument("--transpose", action="store_true",
                   help="work with the transposed group")
    p.set_defaults(func=_cmd_commutator)

    p = sub.add_parser("surjectivity",
                       help="finite-truncation surjectivity check")
    p.add_argument("--group", required=True,
                   help="truncation JSON: m_part + primes/prime_parts")
    p.add_argument("--subgroup", required=True,
                   help="subgroup generators at the combined modulus")
    p.set_defaults(func=_cmd_surjectivity)

    p = sub.add_parser("condition", help="evaluate a v-condition")
    p.add_argument("--label", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--catalog")
    p.set_defaults(func=_cmd_condition)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cap_order is not None:
        os.environ["AIMG_CAP_ORDER"] = str(args.cap_order)
    try:
        return args.func(args)
    except InvariantViolation as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except AimgError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
