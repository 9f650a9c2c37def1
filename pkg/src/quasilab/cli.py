"""Command-line entry point.

Exit code contract, uniform across subcommands: 0 when the request
succeeded and any checked property holds, 1 when a checked property
fails (a structured counterexample is printed as JSON), 2 on usage,
file, or format errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import jsonschema

from .axb import run_verification_suite
from .cayley import (
    CayleyError,
    ColumnDuplicate,
    FiniteQuasigroup,
    OutOfRange,
    RowDuplicate,
    TableFormatError,
    parse_table_text,
)
from .characters import (
    CapExceeded,
    check_normalization,
    positive_sum_certificate,
    representation_well_defined,
    solve_characters,
    trivial_character,
)
from .identities import (
    ParseError,
    UnknownIdentityError,
    VariableLimitExceeded,
    builtin_identity,
    check_identity,
    parse_identity,
    pretty,
)
from .kunen import kunen_scan, modular_scan
from .latin import OrderTooLarge
from .measures import NoPositiveSolution, solve_quasi_invariant
from .permgroup import lmlt, mlt, rmlt
from .reports import UnknownReportKind, validate_report


def _load_table(path: str) -> FiniteQuasigroup:
    with open(path) as fh:
        return parse_table_text(fh.read())


def _write_json(args, doc: dict):
    if getattr(args, "json", None):
        with open(args.json, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")


def _say(args, *lines: str):
    if not getattr(args, "quiet", False):
        for line in lines:
            print(line)


def _cayley_failure(exc: CayleyError) -> dict:
    if isinstance(exc, RowDuplicate):
        return {"reason": "row-duplicate", "row": exc.row, "value": exc.value}
    if isinstance(exc, ColumnDuplicate):
        return {"reason": "column-duplicate", "col": exc.col, "value": exc.value}
    if isinstance(exc, OutOfRange):
        return {"reason": "out-of-range", "entry": repr(exc.entry), "order": exc.order}
    return {"reason": "invalid", "message": str(exc)}


def _cmd_validate(args) -> int:
    try:
        q = _load_table(args.table)
    except CayleyError as exc:
        failure = _cayley_failure(exc)
        _write_json(args, {"kind": "validate", "valid": False, "failure": failure})
        _say(args, f"invalid table: {exc}")
        print(json.dumps(failure))
        return 1
    e = q.find_identity()
    doc = {
        "kind": "validate",
        "valid": True,
        "order": q.order,
        "is_loop": e is not None,
        "identity_element": e,
        "labels": list(q.labels) if q.labels is not None else None,
    }
    _write_json(args, doc)
    loop_line = (
        f"loop with identity {q.label_of(e)}" if e is not None else "not a loop"
    )
    _say(args, f"valid quasigroup of order {q.order}", loop_line)
    return 0


def _cmd_check_identity(args) -> int:
    q = _load_table(args.table)
    identity = (
        builtin_identity(args.builtin)
        if args.builtin
        else parse_identity(args.identity)
    )
    result = check_identity(q, identity, cap=args.cap)
    doc = {
        "kind": "check-identity",
        "identity": pretty(identity),
        "holds": result.holds,
        "counterexample": result.counterexample,
        "lhs_value": result.lhs_value,
        "rhs_value": result.rhs_value,
    }
    _write_json(args, doc)
    if result.holds:
        _say(args, f"holds: {pretty(identity)}")
        return 0
    _say(
        args,
        f"fails: {pretty(identity)} "
        f"(lhs = {result.lhs_value}, rhs = {result.rhs_value})",
    )
    print(json.dumps(result.counterexample))
    return 1


def _cmd_translations(args) -> int:
    q = _load_table(args.table)
    if args.element is not None and not 0 <= args.element < q.order:
        print(f"error: element {args.element} outside [0, {q.order})", file=sys.stderr)
        return 2
    elements = [args.element] if args.element is not None else list(range(q.order))
    left = [list(q.left_translation(a).images) for a in elements]
    right = [list(q.right_translation(a).images) for a in elements]
    doc = {
        "kind": "translations",
        "order": q.order,
        "element": args.element,
        "left": left if args.side in ("left", "both") else [],
        "right": right if args.side in ("right", "both") else [],
    }
    _write_json(args, doc)
    for a, images in zip(elements, left):
        if args.side in ("left", "both"):
            _say(args, f"L_{a}: {images}")
    for a, images in zip(elements, right):
        if args.side in ("right", "both"):
            _say(args, f"R_{a}: {images}")
    return 0


def _cmd_mlt(args) -> int:
    q = _load_table(args.table)
    group = {"left": lmlt, "right": rmlt, "both": mlt}[args.which](q)
    doc = {
        "kind": "mlt",
        "which": args.which,
        "degree": group.degree,
        "order": group.order,
        "transitive": group.is_transitive(),
        "generators": [list(g.images) for g in group.generators],
        "base": list(group.base),
    }
    _write_json(args, doc)
    _say(
        args,
        f"degree {group.degree}, order {group.order}, "
        f"transitive: {group.is_transitive()}",
    )
    if not args.quiet:
        for g in group.generators:
            print(json.dumps(list(g.images)))
    return 0


def _cmd_measure(args) -> int:
    q = _load_table(args.table)
    try:
        sol = solve_quasi_invariant(q)
    except NoPositiveSolution as exc:
        _say(args, f"no positive invariant measure: {exc}")
        print(json.dumps({"error": str(exc)}))
        return 1
    doc = {
        "kind": "measure",
        "order": q.order,
        "measure": [str(w) for w in sol.measure.weights],
        "left_cocycle": [str(v) for v in sol.left_cocycle.values],
        "right_cocycle": [str(v) for v in sol.right_cocycle.values],
        "dimension": sol.dimension,
        "degenerate": sol.degenerate,
        "description": sol.description,
        "explanation": sol.explanation,
    }
    _write_json(args, doc)
    _say(
        args,
        f"invariant measure space dimension {sol.dimension}: {sol.description}",
        f"measure (mass {sol.measure.mass}): "
        + " ".join(str(w) for w in sol.measure.weights),
        f"left cocycle j: {' '.join(str(v) for v in sol.left_cocycle.values)}",
        f"right cocycle rho: {' '.join(str(v) for v in sol.right_cocycle.values)}",
        f"degenerate (cocycles forced trivial): {sol.degenerate}",
    )
    return 0


def _cmd_characters(args) -> int:
    q = _load_table(args.table)
    basis = solve_characters(q)
    dimension = len(basis)
    oracle = positive_sum_certificate(q)
    agreement = oracle == (dimension == 0)
    chi = trivial_character(q.order)
    is_loop = q.find_identity() is not None
    normalization = check_normalization(q, chi) if is_loop else None
    audit = representation_well_defined(q, chi, element_cap=args.cap)
    doc = {
        "kind": "characters",
        "order": q.order,
        "dimension": dimension,
        "character_log": [str(c) for c in chi.log_values],
        "positive_sum_oracle": oracle,
        "agreement": agreement,
        "is_loop": is_loop,
        "normalization": normalization,
        "element_cap": args.cap,
        "representation": {
            "well_defined": audit.well_defined,
            "group_order": audit.group_order,
            "homomorphism": audit.homomorphism,
            "pairs_checked": audit.pairs_checked,
            "conflict": [list(w) for w in audit.conflict] if audit.conflict else None,
        },
    }
    _write_json(args, doc)
    _say(
        args,
        f"log-character solution space dimension: {dimension}",
        f"positive-sum oracle agrees: {agreement}",
        "normalization chi(e) = 1: "
        + ("n/a (not a loop)" if normalization is None else str(normalization)),
        f"representation well-defined on LMlt (order {audit.group_order}): "
        f"{audit.well_defined}",
    )
    ok = dimension == 0 and agreement and audit.well_defined
    if normalization is False:
        ok = False
    return 0 if ok else 1


def _cmd_axb(args) -> int:
    report = run_verification_suite(
        trials=args.trials, tol=args.tol, seed=args.seed
    )
    _write_json(args, report)
    _say(args, f"seed {report['seed']}, {report['trials']} integral trials")
    if not args.quiet:
        for name, err in report["max_errors"].items():
            print(f"  {name}: max error {err:.3e}")
    if report["passed"]:
        _say(args, "all tolerances met")
        return 0
    _say(args, f"tolerance violations: {', '.join(report['failures'])}")
    print(json.dumps({"failures": report["failures"], "max_errors": report["max_errors"]}))
    return 1


def _cmd_kunen_scan(args) -> int:
    mode = "sample" if args.sample is not None else "full"
    if args.modular:
        rep = modular_scan(
            args.order,
            mode=mode,
            sample_size=args.sample or 1000,
            seed=args.seed,
            allow_n6=args.allow_n6,
            identity_name=args.builtin,
        )
        doc = rep.to_dict()
        _write_json(args, doc)
        _say(
            args,
            f"order {rep.order} ({rep.mode}): {rep.total_squares} squares, "
            f"{rep.n1_count} satisfy {args.builtin}",
            f"trivial cocycles on all satisfiers: {rep.all_trivial} "
            f"({rep.trivial_cocycle_count}/{rep.n1_count})",
        )
        return 0 if rep.all_trivial else 1
    rep = kunen_scan(
        args.order,
        mode=mode,
        sample_size=args.sample or 1000,
        seed=args.seed,
        allow_n6=args.allow_n6,
        jobs=args.jobs,
        checkpoint=args.checkpoint,
        counterexample_dir=args.counterexample_dir,
        identity_name=args.builtin,
    )
    doc = rep.to_dict()
    _write_json(args, doc)
    _say(
        args,
        f"order {rep.order} ({rep.mode}): {rep.total_squares} squares in "
        f"{rep.elapsed:.1f}s",
        f"{args.builtin}-satisfiers: {rep.n1_count}, of which loops: "
        f"{rep.n1_loop_count}",
        f"loops: {rep.loop_count} (failing {args.builtin}: {rep.loops_failing_n1})",
        f"identity-implies-loop holds: {rep.kunen_holds}",
    )
    if not rep.kunen_holds:
        print(json.dumps({"counterexample_files": list(rep.counterexample_files)}))
        return 1
    return 0


def _cmd_report_validate(args) -> int:
    try:
        with open(args.file) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        print(f"error: not JSON: {exc}", file=sys.stderr)
        return 2
    try:
        kind = validate_report(doc)
    except UnknownReportKind as exc:
        _say(args, f"invalid report: {exc}")
        print(json.dumps({"valid": False, "error": str(exc)}))
        return 1
    except jsonschema.ValidationError as exc:
        _say(args, f"invalid report: {exc.message}")
        print(json.dumps({"valid": False, "error": exc.message}))
        return 1
    _say(args, f"valid {kind} report")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write machine JSON report here")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--quiet", action="store_true", help="suppress human output")

    parser = argparse.ArgumentParser(
        prog="quasilab",
        description=(
            "Desk-scale laboratory for finite quasigroups, translation "
            "calculus, invariant measures, and the ax+b group"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate a Cayley table file")
    p.add_argument("--table", required=True)
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser(
        "check-identity", parents=[common], help="test a term identity exhaustively"
    )
    p.add_argument("--table", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--identity", help='identity text, e.g. "((x*y)*z) = (x*(y*z))"')
    group.add_argument("--builtin", help="builtin identity name, e.g. N1")
    p.add_argument("--cap", type=int, default=4, help="max distinct variables")
    p.set_defaults(handler=_cmd_check_identity)

    p = sub.add_parser(
        "translations", parents=[common], help="print translation permutations"
    )
    p.add_argument("--table", required=True)
    p.add_argument("--element", type=int, default=None)
    p.add_argument("--side", choices=["left", "right", "both"], default="both")
    p.set_defaults(handler=_cmd_translations)

    p = sub.add_parser(
        "mlt", parents=[common], help="multiplication group order and transitivity"
    )
    p.add_argument("--table", required=True)
    p.add_argument("--which", choices=["left", "right", "both"], default="both")
    p.set_defaults(handler=_cmd_mlt)

    p = sub.add_parser(
        "measure", parents=[common], help="solve for quasi-invariant measures"
    )
    p.add_argument("--table", required=True)
    p.set_defaults(handler=_cmd_measure)

    p = sub.add_parser(
        "characters", parents=[common], help="multiplicative character analysis"
    )
    p.add_argument("--table", required=True)
    p.add_argument("--cap", type=int, default=10**6, help="LMlt element cap")
    p.set_defaults(handler=_cmd_characters)

    p = sub.add_parser("axb", help="ax+b group numeric verification")
    axb_sub = p.add_subparsers(dest="axb_command", required=True)
    v = axb_sub.add_parser("verify", parents=[common], help="run the full numeric suite")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--tol", type=float, default=1e-6)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(handler=_cmd_axb)

    p = sub.add_parser(
        "kunen-scan", parents=[common], help="scan Latin squares: identity vs loop"
    )
    p.add_argument("--order", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--full", action="store_true", help="exhaustive (default)")
    mode.add_argument("--sample", type=int, metavar="K", help="K seeded random squares")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--allow-n6", action="store_true", help="permit the full order-6 scan")
    p.add_argument("--checkpoint", metavar="FILE", help="resumable per-first-row tallies")
    p.add_argument("--counterexample-dir", metavar="DIR", default=None)
    p.add_argument("--builtin", default="N1", help="identity from the builtin catalog")
    p.add_argument(
        "--modular",
        action="store_true",
        help="solve measures on each satisfier instead of tallying loops",
    )
    p.set_defaults(handler=_cmd_kunen_scan)

    p = sub.add_parser(
        "report-validate", parents=[common], help="validate a JSON report file"
    )
    p.add_argument("file")
    p.set_defaults(handler=_cmd_report_validate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TableFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CayleyError as exc:
        print(f"error: invalid table: {exc}", file=sys.stderr)
        return 2
    except (
        ParseError,
        UnknownIdentityError,
        VariableLimitExceeded,
        OrderTooLarge,
        CapExceeded,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
