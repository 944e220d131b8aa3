"""Command-line front end.

Verbs: check, endalg, classify, validate-field, chern, example.  Negative
mathematical verdicts are data (exit 0, or 3 under --strict); exit 1 means
malformed input and exit 2 an internal invariant violation.  JSON output is
canonical: sorted keys, rationals as "p/q" strings, byte-identical across
runs.  The environment variable TVB_ORACLE_LIMIT caps the rank up to which
the exhaustive grading oracle arbitrates (default 4).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import serialize
from .bundles import (
    DEFAULT_ORACLE_LIMIT,
    TVB,
    equivariant_chern_data,
    is_vector_bundle,
    tangent_bundle,
)
from .cohiggs import (
    ToricCoHiggsField,
    canonical_pair,
    classify,
    validate_field,
    verify_integrability,
)
from .endalg import center, filtered_endos, is_commutative, tuple_variety_equations
from .errors import InternalError, SchemaError
from .fans import Cone, Fan, fan_hirzebruch, fan_pn, fan_product, validate_fan
from .linalg import Subspace


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 on usage errors (2 is reserved for internal bugs)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _oracle_limit() -> int:
    raw = os.environ.get("TVB_ORACLE_LIMIT", "")
    try:
        return int(raw) if raw else DEFAULT_ORACLE_LIMIT
    except ValueError:
        raise SchemaError(f"TVB_ORACLE_LIMIT must be an integer, got {raw!r}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="toric-cohiggs", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--output", help="also write the JSON report to this path")
        p.add_argument(
            "--strict",
            action="store_true",
            help="exit 3 when the mathematical verdict is negative",
        )

    p = sub.add_parser("check", help="compatibility of a bundle file")
    p.add_argument("bundle")
    common(p)

    p = sub.add_parser("endalg", help="filtered endomorphism algebra of a bundle")
    p.add_argument("bundle")
    common(p)

    p = sub.add_parser("classify", help="classify valid field tuples on a bundle")
    p.add_argument("bundle")
    common(p)

    p = sub.add_parser("validate-field", help="validate a field file")
    p.add_argument("field")
    common(p)

    p = sub.add_parser("chern", help="fixed-point character data of a bundle")
    p.add_argument("bundle")
    common(p)

    p = sub.add_parser("example", help="write a built-in fixture file, print its path")
    p.add_argument(
        "kind", choices=("tangent", "hirzebruch", "canonical", "three-lines")
    )
    p.add_argument("--variety", choices=("pn", "p1xp1", "p1xp2"), default="pn")
    p.add_argument("--dim", type=int, default=2, help="n for --variety pn")
    p.add_argument("--a", type=int, default=0, help="Hirzebruch twist")
    p.add_argument("--output", help="where to write the fixture")
    return parser


# ---------------------------------------------------------------------------
# fixtures

def _example_fan(variety: str, dim: int) -> Fan:
    if variety == "pn":
        return fan_pn(dim)
    if variety == "p1xp1":
        return fan_product(fan_pn(1), fan_pn(1))
    return fan_product(fan_pn(1), fan_pn(2))


def three_lines_bundle() -> TVB:
    """Rank 2 on the single cone spanned by e1,e2,e3; three distinct lines."""
    fan = Fan(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)), (Cone((0, 1, 2)),))
    lines = [Subspace(2, [(1, 0)]), Subspace(2, [(0, 1)]), Subspace(2, [(1, 1)])]
    from .bundles import normalize_filtration

    filts = tuple(
        normalize_filtration(2, [(0, line), (1, Subspace.zero(2))]) for line in lines
    )
    return TVB(fan, 2, filts)


def _make_example(args) -> tuple[str, dict]:
    if args.kind == "tangent":
        fan = _example_fan(args.variety, args.dim)
        tag = f"pn{args.dim}" if args.variety == "pn" else args.variety
        return f"tangent_{tag}.bundle.json", serialize.bundle_to_obj(tangent_bundle(fan))
    if args.kind == "hirzebruch":
        if args.a < 0:
            raise SchemaError("--a must be >= 0")
        fan = fan_hirzebruch(args.a)
        return (
            f"hirzebruch_a{args.a}.bundle.json",
            serialize.bundle_to_obj(tangent_bundle(fan)),
        )
    if args.kind == "canonical":
        fan = _example_fan(args.variety, args.dim)
        tag = f"pn{args.dim}" if args.variety == "pn" else args.variety
        bundle, mats = canonical_pair(fan)
        field = ToricCoHiggsField(bundle, mats)
        return f"canonical_{tag}.field.json", serialize.field_to_obj(field)
    return "three_lines.bundle.json", serialize.bundle_to_obj(three_lines_bundle())


# ---------------------------------------------------------------------------
# report rendering

def _text_lines(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            val = obj[key]
            if isinstance(val, (dict, list)) and val:
                lines.append(f"{pad}{key}:")
                lines.extend(_text_lines(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(val)}")
    elif isinstance(obj, list):
        for val in obj:
            if isinstance(val, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text_lines(val, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(val)}")
    else:
        lines.append(f"{pad}{json.dumps(obj)}")
    return lines


def _emit(report: dict, args) -> None:
    text = serialize.dumps_canonical(report)
    if args.output:
        Path(args.output).write_text(text)
    if args.format == "json":
        sys.stdout.write(text)
    else:
        sys.stdout.write("\n".join(_text_lines(report)) + "\n")


def _input_digest(path: str) -> dict:
    return {"path": path, "sha256": serialize.file_digest(path)}


# ---------------------------------------------------------------------------
# verb handlers: each returns (report dict, verdict_positive flag)

def _load_bundle_checked(path: str) -> TVB:
    bundle = serialize.load_bundle(path)
    fan_verdict = validate_fan(bundle.fan)
    if not fan_verdict.ok:
        raise SchemaError(f"bundle fan is invalid: {fan_verdict.reason}")
    return bundle


def _run_check(args) -> tuple[dict, bool]:
    bundle = _load_bundle_checked(args.bundle)
    verdict = is_vector_bundle(bundle, oracle_limit=_oracle_limit())
    report = {
        "verb": "check",
        "inputs": {"bundle": _input_digest(args.bundle)},
        **serialize.bundle_verdict_to_obj(verdict),
    }
    return report, verdict.compatible


def _run_endalg(args) -> tuple[dict, bool]:
    bundle = _load_bundle_checked(args.bundle)
    alg = filtered_endos(bundle)
    commutative = is_commutative(alg)
    cen = center(alg)
    eqs = tuple_variety_equations(alg, bundle.fan.n)
    report = {
        "verb": "endalg",
        "inputs": {"bundle": _input_digest(args.bundle)},
        "dim": alg.dim,
        "basis": [serialize.mat_to_obj(m) for m in alg.basis],
        "commutative": commutative,
        "center_dim": len(cen),
        "tuple_equations": serialize.tuple_eqs_to_obj(eqs),
        "notes": [
            "dim counts the linear algebra of filtered endomorphisms; its "
            "invertible elements form the automorphism group, an open condition"
        ],
    }
    return report, True


def _run_classify(args) -> tuple[dict, bool]:
    bundle = _load_bundle_checked(args.bundle)
    report = classify(bundle, oracle_limit=_oracle_limit())
    obj = {
        "verb": "classify",
        "inputs": {"bundle": _input_digest(args.bundle)},
        **serialize.classification_to_obj(report),
    }
    return obj, report.bundle_status == "compatible"


def _run_validate_field(args) -> tuple[dict, bool]:
    field = serialize.load_field(args.field)
    fan_verdict = validate_fan(field.bundle.fan)
    if not fan_verdict.ok:
        raise SchemaError(f"field bundle fan is invalid: {fan_verdict.reason}")
    verdict = validate_field(field.bundle, field.mats)
    integrability = verify_integrability(field)
    report = {
        "verb": "validate-field",
        "inputs": {"field": _input_digest(args.field)},
        **serialize.field_verdict_to_obj(verdict),
        "integrability": serialize.integrability_to_obj(integrability),
        "integrability_agrees": integrability.valid == verdict.commutation_ok,
    }
    if not report["integrability_agrees"]:
        raise InternalError("chart commutation disagrees with the direct check")
    return report, verdict.valid


def _run_chern(args) -> tuple[dict, bool]:
    bundle = _load_bundle_checked(args.bundle)
    verdict = is_vector_bundle(bundle, oracle_limit=_oracle_limit())
    report = {
        "verb": "chern",
        "inputs": {"bundle": _input_digest(args.bundle)},
        "compatible": verdict.compatible,
    }
    if verdict.compatible:
        report["chern"] = serialize.chern_to_obj(equivariant_chern_data(bundle, verdict))
        return report, True
    report["status"] = verdict.status
    report["cone"] = verdict.cone_index
    report["certificate"] = verdict.certificate
    return report, False


def _run_example(args) -> int:
    default_name, obj = _make_example(args)
    path = Path(args.output) if args.output else Path.cwd() / default_name
    serialize.save_json(path, obj)
    print(path)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "check": _run_check,
        "endalg": _run_endalg,
        "classify": _run_classify,
        "validate-field": _run_validate_field,
        "chern": _run_chern,
    }
    try:
        if args.verb == "example":
            return _run_example(args)
        report, positive = handlers[args.verb](args)
        _emit(report, args)
        if args.strict and not positive:
            return 3
        return 0
    except (SchemaError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # anything else is a broken invariant, not bad input
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
