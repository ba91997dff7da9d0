"""Command-line front end.

Subcommands:

* ``check <alg>``                      axiom report;
* ``solve <kind> <alg>``               solution basis and rank, ``kind`` one of
  der, wder, cent, cmap, acmap, halfder, dder (with ``--delta p/q``),
  bider, bider-sym, bider-skew, bider-omega;
* ``local der|halfder <alg>``          sampled local closure with certificate;
* ``local map <alg> --map FILE``       membership verdict for one matrix;
* ``local family <alg> --family FILE`` affine-family closure;
* ``twolocal der|halfder <alg>``       separating-vector rigidity report;
* ``catalog list|show KEY|export KEY`` catalog access;
* ``verify-paper``                     run the whole verification suite.

An algebra argument is either ``@<catalog-key>[?alpha=p/q]`` or a path to an
algebra file (JSON; see omega_lie.algebra for the document shape).  Output is
human-readable text by default or a JSON report with ``--format json``; all
rationals are rendered as ``"p/q"`` strings and indices are 1-based.

Exit codes: 0 success, 1 verification failures, 2 usage errors, 3 file or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import catalog, verification
from .algebra import (
    AlgebraFormatError,
    OmegaAlgebra,
    check_axioms,
    content_hash,
    loads as load_algebra_text,
    to_document,
)
from .catalog import ExcludedParameterError, UnknownAlgebraError
from .linalg import Matrix, format_scalar, frac
from .local import (
    AffineCondition,
    AffineFamily,
    SamplePlan,
    affine_local_closure,
    is_local_member,
    local_closure,
    two_local_report,
)
from .solvers import MapSpace, TensorSpace, solve_map_space, solve_tensor_space

USAGE_ERROR = 2
FILE_ERROR = 3

SOLVE_KINDS = {
    "der": ("map", "derivation"),
    "wder": ("map", "omega_derivation"),
    "cent": ("map", "centroid"),
    "cmap": ("map", "commuting"),
    "acmap": ("map", "anticommuting"),
    "halfder": ("map", "half"),
    "dder": ("map", "delta_derivation"),
    "bider": ("tensor", "biderivation"),
    "bider-sym": ("tensor", "symmetric"),
    "bider-skew": ("tensor", "skew"),
    "bider-omega": ("tensor", "omega_biderivation"),
}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _parse_algebra_arg(arg: str) -> tuple[OmegaAlgebra, dict]:
    """Resolve ``@key[?alpha=p/q]`` or a file path to an algebra."""
    if arg.startswith("@"):
        ref = arg[1:]
        params = {}
        if "?" in ref:
            key, _, query = ref.partition("?")
            for piece in query.split("&"):
                if not piece:
                    continue
                name, sep, value = piece.partition("=")
                if not sep:
                    raise CliError(f"bad parameter {piece!r} in {arg!r} (expected name=p/q)", USAGE_ERROR)
                try:
                    params[name] = frac(value)
                except (ValueError, ZeroDivisionError, TypeError):
                    raise CliError(f"bad rational {value!r} in {arg!r}", USAGE_ERROR) from None
        else:
            key = spec
        try:
            algebra = catalog.get(key, params or None)
        except UnknownAlgebraError as exc:
            raise CliError(str(exc.args[0]), USAGE_ERROR) from None
        except ExcludedParameterError as exc:
            raise CliError(str(exc), USAGE_ERROR) from None
        identity = {"key": key, "params": {k: format_scalar(v) for k, v in params.items()}}
        return algebra, identity
    try:
        with open(arg, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise CliError(f"cannot read algebra file {arg!r}: {exc}", FILE_ERROR) from None
    try:
        algebra = load_algebra_text(text)
    except AlgebraFormatError as exc:
        raise CliError(f"cannot parse algebra file {arg!r}: {exc}", FILE_ERROR) from None
    return algebra, {"path": arg}


def _matrix_strings(m: Matrix) -> list[list[str]]:
    return m.to_strings()


def _load_json_file(path: str, what: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise CliError(f"cannot read {what} file {path!r}: {exc}", FILE_ERROR) from None
    except json.JSONDecodeError as exc:
        raise CliError(f"cannot parse {what} file {path!r}: {exc}", FILE_ERROR) from None


def _parse_matrix(data, n: int, what: str) -> Matrix:
    if isinstance(data, dict) and "matrix" in data:
        data = data["matrix"]
    if not isinstance(data, list) or len(data) != n or any(
        not isinstance(row, list) or len(row) != n for row in data
    ):
        raise CliError(f"{what}: expected an {n}x{n} matrix of rationals", FILE_ERROR)
    try:
        return Matrix.from_rows(data, ncols=n)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise CliError(f"{what}: {exc}", FILE_ERROR) from None


def _parse_family(doc, n: int, path: str) -> AffineFamily:
    if not isinstance(doc, dict) or "base" not in doc:
        raise CliError(f"family file {path!r}: expected an object with 'base'", FILE_ERROR)
    base = _parse_matrix(doc["base"], n, f"family file {path!r} base")
    directions = tuple(
        _parse_matrix(d, n, f"family file {path!r} direction {idx+1}")
        for idx, d in enumerate(doc.get("directions", []))
    )
    names = tuple(doc.get("parameters", ())) or tuple(f"t{i+1}" for i in range(len(directions)))
    conditions = []
    for item in doc.get("open_conditions", []):
        try:
            conditions.append(
                AffineCondition.make(item.get("constant", 0), item.get("coeffs", {}))
            )
        except (ValueError, TypeError, ZeroDivisionError, AttributeError) as exc:
            raise CliError(f"family file {path!r}: bad open condition {item!r}: {exc}", FILE_ERROR) from None
    try:
        return AffineFamily(base=base, directions=directions, open_conditions=tuple(conditions), parameter_names=names)
    except ValueError as exc:
        raise CliError(f"family file {path!r}: {exc}", FILE_ERROR) from None


def _report(args, algebra_identity, result: dict, extra: Optional[dict] = None) -> dict:
    report = {
        "command": " ".join(args._argv),
        "algebra": algebra_identity,
        "result": result,
    }
    if extra:
        report.update(extra)
    return report


def _algebra_identity(algebra: OmegaAlgebra, origin: dict) -> dict:
    return {
        "name": algebra.name,
        "dim": algebra.dim,
        "hash": content_hash(algebra),
        **origin,
    }


def _emit(args, report: dict, text_lines: Sequence[str]) -> None:
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _expected_payload(origin: dict) -> Optional[dict]:
    key = origin.get("key")
    if key is None:
        return None
    values = catalog.expected(key).as_dict()
    return values or None


def cmd_check(args) -> int:
    algebra, origin = _parse_algebra_arg(args.algebra)
    report = check_axioms(algebra)
    payload = {
        "passed": report.passed,
        "bracket_antisymmetric": report.bracket_antisymmetric,
        "omega_skew": report.omega_skew,
        "omega_is_zero": report.omega_is_zero,
        "failing_triples": [list(t) for t in report.failing_triples()],
    }
    lines = [
        f"algebra {algebra.name} (dim {algebra.dim}, hash {content_hash(algebra)})",
        f"  bracket antisymmetric: {report.bracket_antisymmetric}",
        f"  omega skew-symmetric:  {report.omega_skew}",
        f"  weighted Jacobi holds: {report.jacobi_holds}",
        f"  omega is zero (plain Lie algebra): {report.omega_is_zero}",
        f"  axioms passed: {report.passed}",
    ]
    if not report.jacobi_holds:
        lines.append(f"  failing triples: {report.failing_triples()}")
    _emit(args, _report(args, _algebra_identity(algebra, origin), payload), lines)
    return 0


def cmd_solve(args) -> int:
    if args.kind not in SOLVE_KINDS:
        raise CliError(f"unknown solve kind {args.kind!r} (choose from {', '.join(SOLVE_KINDS)})", USAGE_ERROR)
    algebra, origin = _parse_algebra_arg(args.algebra)
    family, kind = SOLVE_KINDS[args.kind]
    delta = None
    if args.kind == "dder":
        if args.delta is None:
            raise CliError("solve dder requires --delta p/q", USAGE_ERROR)
        try:
            delta = frac(args.delta)
        except (ValueError, ZeroDivisionError, TypeError):
            raise CliError(f"bad --delta value {args.delta!r}", USAGE_ERROR) from None
    if family == "map":
        if args.kind == "halfder":
            space: MapSpace = solve_map_space(algebra, "delta_derivation", Fraction(1, 2))
        else:
            space = solve_map_space(algebra, kind, delta)
        payload = {
            "kind": args.kind,
            "rank": space.rank,
            "basis": [_matrix_strings(m) for m in space.matrices()],
        }
        lines = [f"{args.kind} space of {algebra.name}: rank {space.rank}"]
        for idx, m in enumerate(space.matrices(), 1):
            lines.append(f"  basis matrix {idx}:")
            lines.extend("    " + "  ".join(f"{s:>6s}" for s in row) for row in m.to_strings())
    else:
        tspace: TensorSpace = solve_tensor_space(algebra, kind)
        n = algebra.dim
        basis_payload = []
        for t in tspace.tensors():
            entries = {}
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        if t.tensor[i][j][k]:
                            entries[f"{i+1},{j+1},{k+1}"] = format_scalar(t.tensor[i][j][k])
            basis_payload.append(entries)
        payload = {"kind": args.kind, "rank": tspace.rank, "basis": basis_payload}
        lines = [f"{args.kind} space of {algebra.name}: rank {tspace.rank}"]
        for idx, entries in enumerate(basis_payload, 1):
            lines.append(f"  basis tensor {idx} (nonzero d[i][j][k]):")
            lines.extend(f"    d[{key}] = {value}" for key, value in entries.items())
    extra = {"expected": _expected_payload(origin)}
    _emit(args, _report(args, _algebra_identity(algebra, origin), payload, extra), lines)
    return 0


def _space_for(algebra: OmegaAlgebra, which: str) -> MapSpace:
    if which == "der":
        return solve_map_space(algebra, "derivation")
    if which == "halfder":
        return solve_map_space(algebra, "delta_derivation", Fraction(1, 2))
    raise CliError(f"unknown space {which!r} (choose der or halfder)", USAGE_ERROR)


def cmd_local(args) -> int:
    algebra, origin = _parse_algebra_arg(args.algebra)
    plan = SamplePlan(seed=args.seed, random_count=args.random_count)
    if args.mode in ("der", "halfder"):
        space = _space_for(algebra, args.mode)
        res = local_closure(algebra, space, plan)
        payload = {
            "mode": args.mode,
            "base_rank": space.rank,
            "candidate_rank": res.candidate_rank,
            "certified": res.certified,
            "samples": len(res.samples_used),
            "witness": _matrix_strings(res.witness) if res.witness is not None else None,
        }
        lines = [
            f"local closure of the {args.mode} space of {algebra.name}:",
            f"  base rank {space.rank}, sampled candidate rank {res.candidate_rank}, samples {len(res.samples_used)}",
            f"  certified (candidate == base, so every local map is a member): {res.certified}",
        ]
        if res.witness is not None:
            lines.append("  witness matrix satisfying all sampled constraints but outside the base:")
            lines.extend("    " + "  ".join(f"{s:>6s}" for s in row) for row in res.witness.to_strings())
            lines.append("  (one-sided: sampling only bounds the local set from above)")
    elif args.mode == "map":
        if not args.map:
            raise CliError("local map requires --map FILE", USAGE_ERROR)
        space = _space_for(algebra, args.space)
        candidate = _parse_matrix(_load_json_file(args.map, "map"), algebra.dim, f"map file {args.map!r}")
        verdict = is_local_member(algebra, space, candidate, plan)
        payload = {
            "mode": "map",
            "space": args.space,
            "status": verdict.status,
            "witness_point": [format_scalar(v) for v in verdict.witness] if verdict.witness else None,
        }
        lines = [f"membership of the given matrix in local-{args.space} of {algebra.name}: {verdict.status}"]
        if verdict.witness:
            lines.append(f"  witness point: ({', '.join(format_scalar(v) for v in verdict.witness)})")
    elif args.mode == "family":
        if not args.family:
            raise CliError("local family requires --family FILE", USAGE_ERROR)
        family = _parse_family(_load_json_file(args.family, "family"), algebra.dim, args.family)
        res = affine_local_closure(algebra, family, plan)
        payload = {
            "mode": "family",
            "comparison": res.comparison,
            "matches_family_hull": res.matches_family_hull,
            "particular": _matrix_strings(res.particular) if res.particular is not None else None,
            "direction_rank": res.directions.rank,
            "caveats": list(res.caveats),
        }
        lines = [
            f"affine local closure against the given family on {algebra.name}: {res.comparison}",
            f"  direction rank {res.directions.rank}",
        ]
        if res.particular is not None:
            lines.append("  particular matrix:")
            lines.extend("    " + "  ".join(f"{s:>6s}" for s in row) for row in res.particular.to_strings())
        lines.extend(f"  caveat: {c}" for c in res.caveats)
    else:
        raise CliError(f"unknown local mode {args.mode!r}", USAGE_ERROR)
    _emit(args, _report(args, _algebra_identity(algebra, origin), payload), lines)
    return 0


def cmd_twolocal(args) -> int:
    algebra, origin = _parse_algebra_arg(args.algebra)
    plan = SamplePlan(seed=args.seed, random_count=args.random_count)
    space = _space_for(algebra, args.space)
    report = two_local_report(algebra, space, plan)
    payload = {
        "space": args.space,
        "verdict": report.verdict,
        "separating_vector": [format_scalar(v) for v in report.certificate.point] if report.certificate else None,
        "min_kernel_rank": report.min_kernel_rank,
    }
    lines = [f"2-local analysis of the {args.space} space of {algebra.name}: {report.verdict}"]
    if report.certificate:
        point = ", ".join(format_scalar(v) for v in report.certificate.point)
        lines.append(f"  separating vector: ({point})")
        lines.append(f"  {report.certificate.conclusion}")
    else:
        lines.append(f"  minimal evaluation-kernel rank over the samples: {report.min_kernel_rank}")
    _emit(args, _report(args, _algebra_identity(algebra, origin), payload), lines)
    return 0


def cmd_catalog(args) -> int:
    if args.action == "list":
        rows = []
        for entry in catalog.list_entries():
            param = ""
            if entry.param is not None:
                excluded = ",".join(str(v) for v in entry.param.excluded) or "-"
                param = f"{entry.param.name} (excluded: {excluded}; default {entry.param.default})"
            rows.append({"key": entry.key, "dim": entry.dim, "parameter": param, "notes": entry.notes})
        report = {"command": " ".join(args._argv), "result": {"entries": rows, "count": len(rows)}}
        lines = [f"{len(rows)} catalog entries:"]
        for row in rows:
            suffix = f"  [{row['parameter']}]" if row["parameter"] else ""
            lines.append(f"  {row['key']:14s} dim {row['dim']}{suffix}")
        _emit(args, report, lines)
        return 0
    try:
        entry = catalog.entry(args.key)
    except UnknownAlgebraError as exc:
        raise CliError(str(exc.args[0]), USAGE_ERROR) from None
    algebra = entry.build(None)
    if args.action == "export":
        print(json.dumps(to_document(algebra), indent=2, sort_keys=True))
        return 0
    payload = {
        "document": to_document(algebra),
        "expected": entry.expected.as_dict() or None,
        "notes": entry.notes,
    }
    lines = [f"{entry.key}: {algebra.name} (dim {algebra.dim}, hash {content_hash(algebra)})"]
    for item in to_document(algebra)["brackets"]:
        terms = " + ".join(
            (f"{v}*e{k}" if v not in ("1",) else f"e{k}") for k, v in sorted(item["coeffs"].items())
        )
        lines.append(f"  [e{item['i']}, e{item['j']}] = {terms}")
    for item in to_document(algebra)["omega"]:
        lines.append(f"  omega(e{item['i']}, e{item['j']}) = {item['value']}")
    if entry.expected.as_dict():
        lines.append(f"  reference values: {entry.expected.as_dict()}")
    if entry.notes:
        lines.append(f"  notes: {entry.notes}")
    _emit(args, {"command": " ".join(args._argv), "result": payload}, lines)
    return 0


def cmd_verify(args) -> int:
    plan = SamplePlan(seed=args.seed, random_count=args.random_count)
    results = verification.run_all(plan)
    payload = [
        {
            "criterion": r.number,
            "title": r.title,
            "passed": r.passed,
            "details": list(r.details),
        }
        for r in results
    ]
    lines = []
    for r in results:
        lines.append(r.line())
        for detail in r.details:
            lines.append(f"    - {detail}")
    failures = sum(1 for r in results if not r.passed)
    lines.append(
        f"{len(results) - failures}/{len(results)} criteria passed"
        + ("" if not failures else f"; {failures} failed (documented discrepancies; see catalog notes)")
    )
    _emit(args, {"command": " ".join(args._argv), "result": {"criteria": payload, "failures": failures}}, lines)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omega-lie",
        description="Exact structure-theory computations for finite-dimensional omega-Lie algebras.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text", help="output mode")
    parser.add_argument(
        "--seed",
        type=lambda s: int(s, 0),
        default=SamplePlan().seed,
        help="seed for the deterministic sample plan (default 0xC0FFEE)",
    )
    parser.add_argument(
        "--random-count", type=int, default=SamplePlan().random_count, help="random sample points per plan"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("check", help="verify the defining axioms of an algebra")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="compute a solution space")
    p.add_argument("kind", choices=sorted(SOLVE_KINDS))
    p.add_argument("algebra")
    p.add_argument("--delta", help="weight for dder, as p/q")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("local", help="local membership analyses")
    p.add_argument("mode", choices=("der", "halfder", "map", "family"))
    p.add_argument("algebra")
    p.add_argument("--map", help="matrix file for `local map`")
    p.add_argument("--family", help="family file for `local family`")
    p.add_argument("--space", choices=("der", "halfder"), default="der", help="space for `local map`")
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("twolocal", help="2-local rigidity via separating vectors")
    p.add_argument("space", choices=("der", "halfder"))
    p.add_argument("algebra")
    p.set_defaults(func=cmd_twolocal)

    p = sub.add_parser("catalog", help="built-in algebra catalog")
    p.add_argument("action", choices=("list", "show", "export"))
    p.add_argument("key", nargs="?")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify-paper", help="run the full reference-reproduction suite")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = ["omega-lie"] + argv
    if args.subcommand == "catalog" and args.action in ("show", "export") and not args.key:
        parser.error(f"catalog {args.action} requires a KEY")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
