"""Command-line front end.

Subcommands: catalog, info, classify, pac-check, decompose, scan, group,
witness-n6.  Inputs are structure-constant JSON files or "catalog:<name>".
Exit codes: 0 success, 1 usage error, 2 parse/validation error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .algebra import (AlgebraError, AlgebraReport, Element, TwoStepAlgebra,
                      analyze, from_json_text, j_map, to_json_dict, to_json_text)
from .autos import (AutoError, LinearMap, n6_nonlinearity_residual, n6_witness,
                    additive_bracket_check, semidirect_decompose)
from .catalog import CATALOG_NAMES, CatalogError, build_catalog, classify_dim_le6
from .group import GroupElement, gmul
from .linalg import LinalgError, Matrix
from .pac import PacError, pac_verdict, scan
from .scalars import ScalarError

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def load_algebra(spec: str) -> TwoStepAlgebra:
    if spec.startswith("catalog:"):
        return build_catalog(spec[len("catalog:"):])
    with open(spec, encoding="utf-8") as fh:
        return from_json_text(fh.read())


def _emit(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(doc: dict) -> str:
    doc = {"schema_version": SCHEMA_VERSION, **doc}
    return json.dumps(doc, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def _report_dict(a: TwoStepAlgebra, rep: AlgebraReport) -> dict:
    f = a.field
    ns = rep.nonsingular
    out = {
        "label": a.label,
        "field": f.name,
        "dim": rep.dim,
        "q": a.q,
        "p": a.p,
        "commutator_dim": rep.commutator_dim,
        "commutator_equals_Z": rep.commutator_equals_z,
        "center_dim": rep.center_dim,
        "abelian_factor_dim": rep.abelian_factor_dim,
        "core_type": list(rep.core_type),
        "h_type": rep.h_type,
        "nonsingular": {
            "kind": ns.kind,
            "certificate": ns.certificate,
            "witness_Z": [f.text(c) for c in ns.witness_z] if ns.witness_z else None,
            "witness_X": [f.text(c) for c in ns.witness_x] if ns.witness_x else None,
            "samples": ns.samples,
        },
        "j_matrices": [[[f.text(x) for x in row] for row in m.data] for m in j_map(a)],
    }
    return out


def _report_text(a: TwoStepAlgebra, rep: AlgebraReport) -> str:
    f = a.field
    lines = []
    if a.label:
        lines.append(f"label: {a.label}")
    lines.append(f"field: {f.name}")
    lines.append(f"dim: {rep.dim} (q={a.q}, p={a.p})")
    lines.append(f"commutator ideal: dim {rep.commutator_dim}"
                 f" ({'equals' if rep.commutator_equals_z else 'proper subspace of'} declared Z)")
    lines.append(f"center: dim {rep.center_dim}")
    lines.append(f"abelian factor: dim {rep.abelian_factor_dim}; core type (p', q') = {rep.core_type}")
    lines.append(f"H-type: {str(rep.h_type).lower()}")
    lines.append(f"nonsingularity: {rep.nonsingular.describe(f)}")
    for k, m in enumerate(j_map(a)):
        rows = "; ".join("[" + ", ".join(f.text(x) for x in row) + "]" for row in m.data)
        lines.append(f"J^{k + 1}: {rows}")
    return "\n".join(lines) + "\n"


def cmd_catalog(args) -> int:
    if args.name:
        a = build_catalog(args.name)
        _emit(args, to_json_text(a))
        return EXIT_OK
    if args.format == "json":
        _emit(args, _json_text({"entries": CATALOG_NAMES}))
    else:
        _emit(args, "\n".join(CATALOG_NAMES) + "\n")
    return EXIT_OK


def cmd_info(args) -> int:
    a = load_algebra(args.input)
    rep = analyze(a, seed=args.seed)
    if args.format == "json":
        _emit(args, _json_text(_report_dict(a, rep)))
    else:
        _emit(args, _report_text(a, rep))
    return EXIT_OK


def cmd_classify(args) -> int:
    a = load_algebra(args.input)
    name = classify_dim_le6(a)
    if args.format == "json":
        _emit(args, _json_text({"classification": name, "dim": a.dim}))
    else:
        _emit(args, name + "\n")
    return EXIT_OK


def cmd_pac_check(args) -> int:
    a = load_algebra(args.input)
    verdict = pac_verdict(a, seed=args.seed)
    if args.format == "json":
        _emit(args, _json_text({"seed": args.seed, **verdict.to_json_dict()}))
    else:
        lines = [f"status: {verdict.status}", f"reason: {verdict.reason}",
                 f"confidence: {verdict.confidence}"]
        for k, v in sorted(verdict.detail.items()):
            lines.append(f"{k}: {v}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_decompose(args) -> int:
    a = load_algebra(args.input)
    with open(args.map, encoding="utf-8") as fh:
        doc = json.load(fh)
    rows = doc["matrix"] if isinstance(doc, dict) else doc
    f = a.field
    try:
        m = Matrix(f, [[f.parse(x) for x in row] for row in rows])
    except ScalarError as exc:
        raise AlgebraError(f"bad map entry: {exc}") from None
    dec = semidirect_decompose(a, LinearMap(a, a, m))

    def mat(mm: Matrix):
        return [[f.text(x) for x in row] for row in mm.data]

    if args.format == "json":
        _emit(args, _json_text({
            "central": mat(dec.central.matrix),
            "v_preserving": mat(dec.v_preserving.matrix),
            "unique": dec.unique,
        }))
    else:
        lines = [f"unique: {str(dec.unique).lower()}",
                 "central factor rows:"]
        lines += ["  [" + ", ".join(r) + "]" for r in mat(dec.central.matrix)]
        lines.append("V-preserving factor rows:")
        lines += ["  [" + ", ".join(r) + "]" for r in mat(dec.v_preserving.matrix)]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _parse_element(a: TwoStepAlgebra, text: str) -> Element:
    f = a.field
    parts = text.split(";")
    if len(parts) != 2:
        raise AlgebraError(f"element {text!r} must look like 'v1,..,vq;z1,..,zp'")
    vs = [s for s in parts[0].split(",") if s.strip()] if parts[0].strip() else []
    zs = [s for s in parts[1].split(",") if s.strip()] if parts[1].strip() else []
    if len(vs) != a.q or len(zs) != a.p:
        raise AlgebraError(f"element {text!r} needs {a.q} v- and {a.p} z-coordinates")
    return Element(a, [f.parse(s) for s in vs], [f.parse(s) for s in zs])


def _element_text(x: Element) -> str:
    f = x.algebra.field
    return ",".join(f.text(c) for c in x.v) + ";" + ",".join(f.text(c) for c in x.z)


def cmd_group(args) -> int:
    a = load_algebra(args.input)
    elems = [_parse_element(a, t) for t in args.elements]
    if not elems:
        raise AlgebraError("group command needs at least one element")
    acc = GroupElement(elems[0])
    for e in elems[1:]:
        acc = gmul(a, acc, GroupElement(e))
    if args.format == "json":
        _emit(args, _json_text({"product": _element_text(acc.log)}))
    else:
        _emit(args, _element_text(acc.log) + "\n")
    return EXIT_OK


def cmd_scan(args) -> int:
    rep = scan(args.p, args.q, args.trials, seed=args.seed, bound=args.bound)
    if args.format == "json":
        _emit(args, _json_text(rep.to_json_dict()))
    else:
        d = rep.to_json_dict()
        _emit(args, "\n".join(f"{k}: {v}" for k, v in d.items()) + "\n")
    return EXIT_OK


def cmd_witness_n6(args) -> int:
    a, f = n6_witness()
    ok = additive_bracket_check(a, f, trials=args.trials, seed=args.seed)
    res = n6_nonlinearity_residual(a, f)
    if not ok:
        raise AssertionError("witness map failed the bracket check")
    fld = a.field
    res_text = _element_text(res)
    if args.format == "json":
        _emit(args, _json_text({
            "algebra": to_json_dict(a),
            "operator_matrix": f.serialize(),
            "bracket_check": {"trials": args.trials, "seed": args.seed, "passed": ok},
            "residual": res_text,
            "residual_human": "-X4",
        }))
    else:
        lines = ["N6 over Q(t): basis X1..X4, Z1, Z2",
                 "brackets: [X1,X2]=Z1, [X1,X3]=Z2, [X2,X4]=Z2",
                 "map: sigma applied coordinatewise, sigma(a+b*eps) = a + (b+a')*eps",
                 "operator matrix rows:"]
        lines += ["  [" + ", ".join(row) + "]" for row in f.serialize()]
        lines.append(f"additivity+bracket check: passed on {args.trials} seeded pairs (seed {args.seed})")
        lines.append(f"f(t*X1) - t*f(X1) = ({res_text})")
        lines.append("non-linearity residual: -X4")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> _Parser:
    p = _Parser(prog="twostep",
                description="Exact computations with 2-step nilpotent Lie algebras")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("--format", choices=["text", "json"], default="text")
        sp.add_argument("--output", default=None)
        if seed:
            sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("catalog", help="list catalog entries or emit one")
    sp.add_argument("name", nargs="?", default=None)
    common(sp, seed=False)
    sp.set_defaults(fn=cmd_catalog)

    sp = sub.add_parser("info", help="full algebra report")
    sp.add_argument("input")
    common(sp)
    sp.set_defaults(fn=cmd_info)

    sp = sub.add_parser("classify", help="dimension <= 6 classification")
    sp.add_argument("input")
    common(sp, seed=False)
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("pac-check", help="partial automatic continuity verdict")
    sp.add_argument("input")
    common(sp)
    sp.set_defaults(fn=cmd_pac_check)

    sp = sub.add_parser("decompose", help="semidirect decomposition of an automorphism")
    sp.add_argument("input")
    sp.add_argument("map", help="JSON file with a (q+p)x(q+p) matrix of scalar text")
    common(sp, seed=False)
    sp.set_defaults(fn=cmd_decompose)

    sp = sub.add_parser("scan", help="Monte-Carlo genericity scan over V(p,q)")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--bound", type=int, default=10)
    common(sp)
    sp.set_defaults(fn=cmd_scan)

    sp = sub.add_parser("group", help="BCH product of group elements")
    sp.add_argument("input")
    sp.add_argument("elements", nargs="+", help="elements as 'v1,..,vq;z1,..,zp'")
    common(sp, seed=False)
    sp.set_defaults(fn=cmd_group)

    sp = sub.add_parser("witness-n6", help="the N6 counterexample witness over Q(t)")
    sp.add_argument("--trials", type=int, default=100)
    common(sp)
    sp.set_defaults(fn=cmd_witness_n6)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (AlgebraError, ScalarError, CatalogError, PacError, AutoError,
            LinalgError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AssertionError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
