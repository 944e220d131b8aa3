"""JSON schemas for fans, bundles, fields, and reports.

Fan files:    {"n": int, "rays": [[int,...],...], "max_cones": [[int,...],...]}
Bundle files: {"fan": <fan object or path>, "rank": int,
               "filtrations": [{"ray": int, "steps": [{"j": int,
               "basis": [["p/q",...],...]}]}]}
Field files:  {"bundle": <bundle object or path>, "tuple": [matrix,...]}

Rationals travel as strings "p/q" (or "p"), sign on the numerator.  Subspace
bases may arrive non-canonical; parsing canonicalizes them.  Serialization is
canonical (sorted keys, canonical bases, trailing newline), so that
serialize -> parse -> serialize is byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .bundles import (
    BundleVerdict,
    ChernData,
    Filtration,
    TVB,
    normalize_filtration,
)
from .cohiggs import (
    ChartExpansion,
    ClassificationReport,
    FieldVerdict,
    IntegrabilityVerdict,
    ToricCoHiggsField,
)
from .endalg import TupleVarietyEqs
from .errors import SchemaError
from .fans import Cone, Fan
from .linalg import Mat, Subspace, rat_from_str, rat_str


def dumps_canonical(obj) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, newline at end."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def sha256_of_obj(obj) -> str:
    return hashlib.sha256(dumps_canonical(obj).encode()).hexdigest()


def _expect(cond: bool, msg: str):
    if not cond:
        raise SchemaError(msg)


# ---------------------------------------------------------------------------
# matrices and subspaces

def mat_to_obj(m: Mat) -> list[list[str]]:
    return [[rat_str(a) for a in row] for row in m.rows]


def mat_from_obj(obj, nrows: int | None = None, ncols: int | None = None) -> Mat:
    _expect(isinstance(obj, list) and all(isinstance(r, list) for r in obj),
            "matrix must be a list of rows")
    try:
        rows = [[rat_from_str(str(a)) for a in r] for r in obj]
        m = Mat(rows, ncols=ncols if not rows else None)
    except ValueError as exc:
        raise SchemaError(f"bad matrix: {exc}") from exc
    if nrows is not None and m.nrows != nrows:
        raise SchemaError(f"matrix has {m.nrows} rows, expected {nrows}")
    if ncols is not None and m.ncols != ncols:
        raise SchemaError(f"matrix has {m.ncols} columns, expected {ncols}")
    return m


def subspace_to_obj(s: Subspace) -> list[list[str]]:
    return [[rat_str(a) for a in row] for row in s.basis]


# ---------------------------------------------------------------------------
# fans

def fan_to_obj(fan: Fan) -> dict:
    return {
        "n": fan.n,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c.ray_indices) for c in fan.max_cones],
    }


def fan_from_obj(obj) -> Fan:
    _expect(isinstance(obj, dict), "fan must be an object")
    for key in ("n", "rays", "max_cones"):
        _expect(key in obj, f"fan object lacks key {key!r}")
    n = obj["n"]
    _expect(isinstance(n, int) and n >= 0, "fan rank must be a nonnegative integer")
    rays = obj["rays"]
    _expect(isinstance(rays, list), "rays must be a list")
    parsed_rays = []
    for r in rays:
        _expect(isinstance(r, list) and all(isinstance(a, int) for a in r),
                "each ray must be a list of integers")
        parsed_rays.append(tuple(r))
    cones = obj["max_cones"]
    _expect(isinstance(cones, list) and cones, "max_cones must be a nonempty list")
    parsed_cones = []
    for c in cones:
        _expect(isinstance(c, list) and all(isinstance(i, int) for i in c),
                "each maximal cone must be a list of ray indices")
        _expect(all(0 <= i < len(parsed_rays) for i in c),
                f"cone {c} has a ray index out of range")
        try:
            parsed_cones.append(Cone(tuple(c)))
        except ValueError as exc:
            raise SchemaError(str(exc)) from exc
    return Fan(n, tuple(parsed_rays), tuple(parsed_cones))


# ---------------------------------------------------------------------------
# bundles

def filtration_to_obj(f: Filtration) -> list[dict]:
    return [{"j": j, "basis": subspace_to_obj(v)} for j, v in f.steps]


def bundle_to_obj(v: TVB) -> dict:
    return {
        "fan": fan_to_obj(v.fan),
        "rank": v.r,
        "filtrations": [
            {"ray": i, "steps": filtration_to_obj(f)}
            for i, f in enumerate(v.filts)
        ],
    }


def bundle_from_obj(obj, base_dir: Path | None = None) -> TVB:
    _expect(isinstance(obj, dict), "bundle must be an object")
    for key in ("fan", "rank", "filtrations"):
        _expect(key in obj, f"bundle object lacks key {key!r}")
    fan_spec = obj["fan"]
    if isinstance(fan_spec, str):
        fan = fan_from_obj(_load_json(_resolve(fan_spec, base_dir)))
    else:
        fan = fan_from_obj(fan_spec)
    rank = obj["rank"]
    _expect(isinstance(rank, int) and rank >= 1, "rank must be a positive integer")
    filt_objs = obj["filtrations"]
    _expect(isinstance(filt_objs, list), "filtrations must be a list")
    by_ray: dict[int, Filtration] = {}
    for fo in filt_objs:
        _expect(isinstance(fo, dict) and "ray" in fo and "steps" in fo,
                "each filtration needs 'ray' and 'steps'")
        ray = fo["ray"]
        _expect(isinstance(ray, int) and 0 <= ray < len(fan.rays),
                f"filtration ray index {ray} out of range")
        _expect(ray not in by_ray, f"two filtrations for ray {ray}")
        steps = []
        _expect(isinstance(fo["steps"], list) and fo["steps"],
                f"filtration for ray {ray} needs at least one step")
        for so in fo["steps"]:
            _expect(isinstance(so, dict) and "j" in so and "basis" in so,
                    "each step needs 'j' and 'basis'")
            _expect(isinstance(so["j"], int), "step threshold must be an integer")
            _expect(isinstance(so["basis"], list), "step basis must be a list")
            try:
                vectors = [[rat_from_str(str(a)) for a in row] for row in so["basis"]]
                sub = Subspace(rank, vectors)
            except ValueError as exc:
                raise SchemaError(f"bad step basis for ray {ray}: {exc}") from exc
            steps.append((so["j"], sub))
        try:
            by_ray[ray] = normalize_filtration(rank, steps)
        except ValueError as exc:
            raise SchemaError(f"bad filtration for ray {ray}: {exc}") from exc
    missing = sorted(set(range(len(fan.rays))) - set(by_ray))
    _expect(not missing, f"no filtration given for ray {missing[0] if missing else 0}")
    return TVB(fan, rank, tuple(by_ray[i] for i in range(len(fan.rays))))


# ---------------------------------------------------------------------------
# fields

def field_to_obj(field: ToricCoHiggsField) -> dict:
    return {
        "bundle": bundle_to_obj(field.bundle),
        "tuple": [mat_to_obj(m) for m in field.mats],
    }


def field_from_obj(obj, base_dir: Path | None = None) -> ToricCoHiggsField:
    _expect(isinstance(obj, dict), "field must be an object")
    for key in ("bundle", "tuple"):
        _expect(key in obj, f"field object lacks key {key!r}")
    bundle_spec = obj["bundle"]
    if isinstance(bundle_spec, str):
        path = _resolve(bundle_spec, base_dir)
        bundle = bundle_from_obj(_load_json(path), base_dir=path.parent)
    else:
        bundle = bundle_from_obj(bundle_spec, base_dir=base_dir)
    mats_obj = obj["tuple"]
    _expect(isinstance(mats_obj, list), "tuple must be a list of matrices")
    _expect(len(mats_obj) == bundle.fan.n,
            f"tuple has {len(mats_obj)} matrices, lattice rank is {bundle.fan.n}")
    mats = [mat_from_obj(mo, bundle.r, bundle.r) for mo in mats_obj]
    return ToricCoHiggsField(bundle, tuple(mats))


# ---------------------------------------------------------------------------
# file plumbing

def _resolve(path_str: str, base_dir: Path | None) -> Path:
    p = Path(path_str)
    if not p.is_absolute() and base_dir is not None:
        p = base_dir / p
    return p


def _load_json(path: Path):
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc


def load_fan(path) -> Fan:
    return fan_from_obj(_load_json(Path(path)))


def load_bundle(path) -> TVB:
    p = Path(path)
    return bundle_from_obj(_load_json(p), base_dir=p.parent)


def load_field(path) -> ToricCoHiggsField:
    p = Path(path)
    return field_from_obj(_load_json(p), base_dir=p.parent)


def save_json(path, obj) -> None:
    Path(path).write_text(dumps_canonical(obj))


def file_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# ---------------------------------------------------------------------------
# reports

def chern_to_obj(data: ChernData) -> dict:
    return {
        "cones": [
            {
                "cone": idx,
                "classes": [{"u": list(u), "mult": m} for u, m in classes],
            }
            for idx, classes in data.by_cone
        ]
    }


def bundle_verdict_to_obj(verdict: BundleVerdict) -> dict:
    out: dict = {"compatible": verdict.compatible, "status": verdict.status}
    if verdict.cone_index is not None:
        out["cone"] = verdict.cone_index
    if verdict.certificate is not None:
        out["certificate"] = verdict.certificate
    if verdict.gradings is not None:
        out["gradings"] = [
            {
                "cone": idx,
                "pieces": [
                    {"u": list(u), "basis": subspace_to_obj(s)}
                    for u, s in g.pieces
                ],
            }
            for idx, g in enumerate(verdict.gradings)
        ]
    return out


def tuple_eqs_to_obj(eqs: TupleVarietyEqs) -> dict:
    return {
        "n": eqs.n,
        "dim": eqs.dim,
        "pairs": [list(p) for p in eqs.pairs],
        "forms": [mat_to_obj(f) for f in eqs.forms],
        "forms_note": "the same bilinear forms apply to every slot pair",
    }


def field_verdict_to_obj(verdict: FieldVerdict) -> dict:
    return {
        "valid": verdict.valid,
        "filtration_violations": [list(v) for v in verdict.filtration_violations],
        "commutator_violations": [list(v) for v in verdict.commutator_violations],
    }


def integrability_to_obj(verdict: IntegrabilityVerdict) -> dict:
    out: dict = {"valid": verdict.valid}
    if verdict.first_failure is not None:
        cone, k, l = verdict.first_failure
        out["first_failure"] = {"cone": cone, "chart_pair": [k, l]}
    return out


def chart_expansion_to_obj(exp: ChartExpansion) -> dict:
    return {
        "cone": list(exp.cone.ray_indices),
        "terms": [
            {"u": list(u), "matrix": mat_to_obj(m)} for u, m in exp.terms
        ],
    }


def classification_to_obj(report: ClassificationReport) -> dict:
    out: dict = {
        "rank": report.rank,
        "n": report.n,
        "compatible": report.bundle_status == "compatible",
        "bundle_status": report.bundle_status,
        "dim_h": report.dim_h,
        "basis": [mat_to_obj(m) for m in report.basis],
        "commutative": report.commutative,
        "center": [mat_to_obj(m) for m in report.center_basis],
        "center_dim": len(report.center_basis),
        "notes": list(report.notes),
        "warnings": list(report.warnings),
    }
    if report.bundle_certificate is not None:
        out["certificate"] = report.bundle_certificate
    if report.parameters is not None:
        out["parameters"] = report.parameters
    if report.generators is not None:
        out["generators"] = [
            [mat_to_obj(m) for m in gen] for gen in report.generators
        ]
    if report.tuple_equations is not None:
        out["tuple_equations"] = tuple_eqs_to_obj(report.tuple_equations)
    if report.chern is not None:
        out["chern"] = chern_to_obj(report.chern)
    return out
