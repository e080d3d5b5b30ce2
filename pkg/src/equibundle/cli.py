"""Command line front end.

Documents are JSON with an "action" section and optional
"line_isotropy" / "su2_isotropy" sections; see the README for the
schema.  Exit codes: 0 all checks pass, 1 a relation fails or a solve
or dimension has no consistent answer, 2 unreadable document or bad
parameters, 3 structurally valid input that fails validation (missing
section, wrong shape, inconsistent counts, degenerate rotation data).
"""

from __future__ import annotations

import argparse
import itertools
import json
import re
import sys
from fractions import Fraction

from .action_model import (
    DocumentError,
    GroupAction,
    LineIsotropy,
    Su2Isotropy,
    action_from_dict,
    action_to_dict,
    line_isotropy_from_dict,
    line_isotropy_to_dict,
    su2_isotropy_from_dict,
    su2_isotropy_to_dict,
    validate,
)
from .congruence import (
    CongruenceReport,
    check_line_bundle,
    check_rotation_relations,
    check_su2,
    gsignature_check,
    search_realizable,
    solve_theorem_a,
)
from .exact_arith import rational_mod, DenominatorDivisible
from .moduli import NonIntegerDimension, dim_invariant_moduli
from .series import (
    expand_boundary_term,
    expand_point_term,
    expand_sphere_term,
    expand_su2_point_term,
    expand_su2_sphere_term,
)

__all__ = ["main", "entry"]

EXIT_OK = 0
EXIT_RELATION = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3

_FREE_SLOT = re.compile(r"^(lambda|lambda_sphere|m)\[(\d+)\]$")


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- document plumbing -------------------------------------------------------


def _load_document(path: str) -> dict:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise _Failure(EXIT_PARSE, f"cannot read {path}: {exc}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _Failure(EXIT_PARSE, f"{path}: not a valid document: {exc}")
    if not isinstance(doc, dict):
        raise _Failure(EXIT_PARSE, f"{path}: document root must be a mapping")
    return doc


def _parse_action(doc: dict) -> GroupAction:
    if "action" not in doc:
        raise _Failure(EXIT_VALIDATION, "document has no action section")
    try:
        return action_from_dict(doc["action"])
    except DocumentError as exc:
        raise _Failure(EXIT_PARSE, str(exc))


def _parse_line_isotropy(doc: dict) -> LineIsotropy:
    if "line_isotropy" not in doc:
        raise _Failure(EXIT_VALIDATION, "document has no line_isotropy section")
    try:
        return line_isotropy_from_dict(doc["line_isotropy"])
    except DocumentError as exc:
        raise _Failure(EXIT_PARSE, str(exc))


def _parse_su2_isotropy(doc: dict) -> Su2Isotropy:
    if "su2_isotropy" not in doc:
        raise _Failure(EXIT_VALIDATION, "document has no su2_isotropy section")
    try:
        return su2_isotropy_from_dict(doc["su2_isotropy"])
    except DocumentError as exc:
        raise _Failure(EXIT_PARSE, str(exc))


def _validated_action(args, doc: dict) -> GroupAction:
    action = _parse_action(doc)
    report = validate(action)
    for warning in report.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if not report.ok:
        lines = "; ".join(report.failures())
        raise _Failure(EXIT_VALIDATION, f"action fails validation: {lines}")
    return action


def _emit(args, machine_obj: dict, human_text: str) -> None:
    if getattr(args, "machine", False):
        print(json.dumps(machine_obj, sort_keys=True))
    else:
        print(human_text)


def _report_payload(report: CongruenceReport) -> list[dict]:
    return [
        {
            "name": r.name,
            "lhs": str(r.lhs),
            "required": str(r.required),
            "passed": r.passed,
        }
        for r in report.records
    ]


def _finish_report(args, report: CongruenceReport, mode: str) -> int:
    verdict = "all relations hold" if report.ok else f"{len(report.failures())} relation(s) failed"
    _emit(
        args,
        {"mode": mode, "ok": report.ok, "records": _report_payload(report)},
        report.display() + "\n" + verdict,
    )
    return EXIT_OK if report.ok else EXIT_RELATION


# -- subcommands --------------------------------------------------------------


def _cmd_check(args) -> int:
    doc = _load_document(args.file)
    action = _validated_action(args, doc)
    if args.mode == "rotation":
        report = check_rotation_relations(action)
    elif args.mode == "gsign":
        report = gsignature_check(action)
    elif args.mode == "line":
        report = check_line_bundle(action, _parse_line_isotropy(doc))
    else:
        report = check_su2(action, _parse_su2_isotropy(doc))
    return _finish_report(args, report, args.mode)


def _cmd_gsign(args) -> int:
    doc = _load_document(args.file)
    action = _validated_action(args, doc)
    report = gsignature_check(action)
    return _finish_report(args, report, "gsign")


def _cmd_solve(args) -> int:
    doc = _load_document(args.file)
    action = _validated_action(args, doc)
    iso = _parse_line_isotropy(doc)
    if args.free is not None:
        match = _FREE_SLOT.match(args.free)
        if not match:
            raise _Failure(
                EXIT_PARSE,
                f"--free must look like lambda[i], lambda_sphere[j] or m[j], got {args.free!r}",
            )
        kind, idx = match.group(1), int(match.group(2))
        try:
            iso = iso.with_slot(kind, idx, None)
        except IndexError:
            raise _Failure(EXIT_PARSE, f"slot {args.free} is out of range")
    completed = solve_theorem_a(action, iso)
    out = {
        "action": action_to_dict(action),
        "line_isotropy": line_isotropy_to_dict(completed),
    }
    if args.machine:
        print(json.dumps({"ok": True, "document": out}, sort_keys=True))
    else:
        print(json.dumps(out, indent=2))
    return EXIT_OK


def _cmd_dimension(args) -> int:
    doc = _load_document(args.file)
    action = _validated_action(args, doc)
    iso = _parse_su2_isotropy(doc)
    k = args.k if args.k is not None else iso.c2
    try:
        report = dim_invariant_moduli(action, iso, k)
    except NonIntegerDimension as exc:
        lines = [f"  {name:28s} {value}" for name, value in exc.terms]
        lines.append(f"  total: {exc.total} (not an integer)")
        _emit(
            args,
            {
                "ok": False,
                "error": "non-integer dimension",
                "total": str(exc.total),
                "terms": {name: str(value) for name, value in exc.terms},
            },
            "\n".join(lines),
        )
        return EXIT_RELATION
    _emit(
        args,
        {
            "ok": True,
            "dimension": report.dimension,
            "k": k,
            "terms": {name: str(value) for name, value in report.terms},
            "chi_quotient": str(report.chi_quot),
            "sign_quotient": str(report.sign_quot),
        },
        report.display() + f"\ndimension: {report.dimension}",
    )
    return EXIT_OK


_EXPAND_PARAMS = {
    "point": ("a", "b", "lam"),
    "sphere": ("c", "alpha", "lam"),
    "boundary": ("c", "m", "lam"),
    "su2-point": ("a", "b", "ell"),
    "su2-sphere": ("c", "alpha", "m", "ell"),
}


def _cmd_expand(args) -> int:
    needed = _EXPAND_PARAMS[args.kind]
    values = {}
    for name in needed:
        v = getattr(args, name)
        if v is None:
            if name in ("lam", "ell", "m"):
                v = 0
            else:
                raise _Failure(EXIT_PARSE, f"expand --kind {args.kind} needs --{name}")
        values[name] = v
    order = args.order
    if args.kind == "point":
        series = expand_point_term(values["a"], values["b"], values["lam"], order)
    elif args.kind == "sphere":
        series = expand_sphere_term(values["c"], values["alpha"], values["lam"], order)
    elif args.kind == "boundary":
        series = expand_boundary_term(values["c"], values["m"], values["lam"], order)
    elif args.kind == "su2-point":
        series = expand_su2_point_term(values["a"], values["b"], values["ell"], order)
    else:
        series = expand_su2_sphere_term(
            values["c"], values["alpha"], values["m"], values["ell"], order
        )
    coeffs = [series.coeff(j) for j in range(order + 1)]
    reductions: list = []
    if args.p is not None:
        for q in coeffs:
            try:
                reductions.append(rational_mod(q, args.p).value)
            except DenominatorDivisible:
                reductions.append(None)
    lines = []
    for j, q in enumerate(coeffs):
        row = f"s^{j}: {q}"
        if reductions:
            r = reductions[j]
            row += f"   (mod {args.p}: {'n/a' if r is None else r})"
        lines.append(row)
    payload = {"kind": args.kind, "order": order, "coefficients": [str(q) for q in coeffs]}
    if reductions:
        payload["modulus"] = args.p
        payload["mod_p"] = ["n/a" if r is None else r for r in reductions]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _cmd_sum(args) -> int:
    doc_a = _load_document(args.file_a)
    doc_b = _load_document(args.file_b)
    action_a = _validated_action(args, doc_a)
    action_b = _validated_action(args, doc_b)
    if (args.points is None) == (args.spheres is None):
        raise _Failure(EXIT_PARSE, "pass exactly one of --points I J or --spheres I J")
    from .action_model import connected_sum_points, connected_sum_spheres

    try:
        if args.points is not None:
            i, j = args.points
            merged = connected_sum_points(action_a, i, action_b, j)
        else:
            i, j = args.spheres
            merged = connected_sum_spheres(action_a, i, action_b, j)
    except IndexError:
        raise _Failure(EXIT_PARSE, "fixed set index out of range")
    out = {"action": action_to_dict(merged)}
    if args.machine:
        print(json.dumps({"ok": True, "document": out}, sort_keys=True))
    else:
        print(json.dumps(out, indent=2))
    return EXIT_OK


def _cmd_search(args) -> int:
    alphas = []
    if args.alphas:
        try:
            alphas = [int(x) for x in args.alphas.split(",")]
        except ValueError:
            raise _Failure(EXIT_PARSE, f"--alphas must be comma-separated integers: {args.alphas!r}")
    gen = search_realizable(
        args.p, args.points, args.spheres, alphas, args.sign, args.euler, args.b2
    )
    if args.limit is not None:
        gen = itertools.islice(gen, args.limit)
    results = []
    for action in gen:
        payload = action_to_dict(action)
        if args.machine:
            results.append(payload)
        else:
            print(json.dumps(payload, sort_keys=True))
    if args.machine:
        print(json.dumps({"count": len(results), "results": results}, sort_keys=True))
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equibundle",
        description="Congruence checks, bundle solvers and equivariant moduli dimensions "
        "for cyclic actions on four-manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_machine(p):
        p.add_argument("--machine", action="store_true", help="emit one JSON object")

    p_check = sub.add_parser("check", help="run a congruence battery on a document")
    p_check.add_argument("file", help="document path, or - for stdin")
    p_check.add_argument(
        "--mode",
        choices=["rotation", "line", "su2", "gsign"],
        default="rotation",
        help="which relation family to check",
    )
    add_machine(p_check)
    p_check.set_defaults(handler=_cmd_check)

    p_solve = sub.add_parser("solve", help="complete an isotropy record with one unknown")
    p_solve.add_argument("file")
    p_solve.add_argument(
        "--free",
        help="slot to solve for: lambda[i], lambda_sphere[j] or m[j]; "
        "defaults to the single null slot in the document",
    )
    add_machine(p_solve)
    p_solve.set_defaults(handler=_cmd_solve)

    p_dim = sub.add_parser("dimension", help="invariant instanton moduli dimension")
    p_dim.add_argument("file")
    p_dim.add_argument("--k", type=int, default=None, help="charge; defaults to c2 of the lift")
    add_machine(p_dim)
    p_dim.set_defaults(handler=_cmd_dimension)

    p_exp = sub.add_parser("expand", help="print exact expansion coefficients of one term")
    p_exp.add_argument(
        "--kind",
        required=True,
        choices=sorted(_EXPAND_PARAMS),
    )
    for flag in ("a", "b", "c", "alpha", "m", "ell", "lam"):
        p_exp.add_argument(f"--{flag}", type=int, default=None)
    p_exp.add_argument("--order", type=int, default=4)
    p_exp.add_argument("--p", type=int, default=None, help="also print mod-p reductions")
    add_machine(p_exp)
    p_exp.set_defaults(handler=_cmd_expand)

    p_gsign = sub.add_parser("gsign", help="exact equivariant signatures of all powers")
    p_gsign.add_argument("file")
    add_machine(p_gsign)
    p_gsign.set_defaults(handler=_cmd_gsign)

    p_sum = sub.add_parser("sum", help="equivariant connected sum of two documents")
    p_sum.add_argument("file_a")
    p_sum.add_argument("file_b")
    p_sum.add_argument("--points", nargs=2, type=int, metavar=("I", "J"))
    p_sum.add_argument("--spheres", nargs=2, type=int, metavar=("I", "J"))
    add_machine(p_sum)
    p_sum.set_defaults(handler=_cmd_sum)

    p_search = sub.add_parser("search", help="enumerate realizable rotation data")
    p_search.add_argument("--p", type=int, required=True)
    p_search.add_argument("--points", type=int, required=True, help="number of isolated points")
    p_search.add_argument("--spheres", type=int, default=0, help="number of fixed spheres")
    p_search.add_argument(
        "--alphas", default="", help="comma-separated self-intersections, one per sphere"
    )
    p_search.add_argument("--sign", type=int, required=True)
    p_search.add_argument("--euler", type=int, required=True)
    p_search.add_argument("--b2", type=int, required=True)
    p_search.add_argument("--limit", type=int, default=None)
    add_machine(p_search)
    p_search.set_defaults(handler=_cmd_search)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    try:
        return args.handler(args)
    except _Failure as exc:
        _fail(args, exc.code, str(exc))
        return exc.code
    except DocumentError as exc:
        _fail(args, EXIT_PARSE, str(exc))
        return EXIT_PARSE
    except ArithmeticError as exc:
        # NotSolvable, NonIntegerDimension, exact/float disagreement
        _fail(args, EXIT_RELATION, str(exc))
        return EXIT_RELATION
    except ValueError as exc:
        # shape mismatches, under/overdetermined solves, inconsistent
        # counts, degenerate data: structurally parseable but invalid
        _fail(args, EXIT_VALIDATION, str(exc))
        return EXIT_VALIDATION


def _fail(args, code: int, message: str) -> None:
    if getattr(args, "machine", False):
        print(json.dumps({"ok": False, "error": message}, sort_keys=True))
    print(f"error: {message}", file=sys.stderr)


def entry() -> None:
    sys.exit(main(sys.argv[1:]))
