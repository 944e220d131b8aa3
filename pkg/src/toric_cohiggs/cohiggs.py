"""Invariant co-Higgs fields as commuting tuples of filtered endomorphisms.

A field on a rank-r bundle over an n-dimensional fan is an n-tuple of r x r
matrices: the coordinates of the field in the frame of the n invariant vector
fields attached to the torus coordinates.  A tuple is valid when every entry
preserves every filtration step and all entries pairwise commute.  Expanding
the field in the affine chart of a maximal cone rewrites the tuple through
the cone's dual basis, which gives an independent route to the commutation
check: the chart matrices of every cone must themselves commute.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bundles import (
    ChernData,
    DEFAULT_ORACLE_LIMIT,
    TVB,
    direct_sum,
    equivariant_chern_data,
    is_vector_bundle,
    line_bundle,
    tangent_bundle,
)
from .endalg import (
    TupleVarietyEqs,
    center,
    filtered_endos,
    is_commutative,
    tuple_variety_equations,
)
from .fans import Cone, Fan, dual_basis
from .linalg import Mat, Q, commutator


@dataclass(frozen=True)
class ToricCoHiggsField:
    """A candidate field: one matrix per lattice direction, validity separate."""

    bundle: TVB
    mats: tuple[Mat, ...]

    def __post_init__(self):
        object.__setattr__(self, "mats", tuple(self.mats))
        if len(self.mats) != self.bundle.fan.n:
            raise ValueError(
                f"{len(self.mats)} matrices for lattice rank {self.bundle.fan.n}"
            )
        for m in self.mats:
            if m.nrows != self.bundle.r or m.ncols != self.bundle.r:
                raise ValueError("field matrices must be rank x rank")


@dataclass(frozen=True)
class FieldVerdict:
    """Validity report: every violated step and every failed commutator."""

    valid: bool
    filtration_violations: tuple[tuple[int, int, int], ...]  # (slot, ray, threshold)
    commutator_violations: tuple[tuple[int, int], ...]  # (slot, slot), 0-based

    @property
    def filtration_ok(self) -> bool:
        return not self.filtration_violations

    @property
    def commutation_ok(self) -> bool:
        return not self.commutator_violations


def validate_field(v: TVB, mats: Sequence[Mat]) -> FieldVerdict:
    """Direct check of filtration preservation and pairwise commutation."""
    n = v.fan.n
    if len(mats) != n:
        raise ValueError(f"{len(mats)} matrices for lattice rank {n}")
    for m in mats:
        if m.nrows != v.r or m.ncols != v.r:
            raise ValueError("field matrices must be rank x rank")
    filt_bad = []
    for slot, a in enumerate(mats):
        for ray_idx, filt in enumerate(v.filts):
            for j, sub in filt.steps:
                if sub.dim in (0, v.r):
                    continue
                if any(not sub.contains_vector(a.mul_vec(w)) for w in sub.basis):
                    filt_bad.append((slot, ray_idx, j))
    comm_bad = []
    for i in range(n):
        for j in range(i + 1, n):
            if not commutator(mats[i], mats[j]).is_zero():
                comm_bad.append((i, j))
    return FieldVerdict(not filt_bad and not comm_bad, tuple(filt_bad), tuple(comm_bad))


def field_from_vector_field(v: TVB, coeffs: Sequence) -> ToricCoHiggsField:
    """The scalar field with entries a_j · Id; always valid."""
    n = v.fan.n
    coeffs = [Q(c) for c in coeffs]
    if len(coeffs) != n:
        raise ValueError(f"{len(coeffs)} coefficients for lattice rank {n}")
    mats = tuple(Mat.identity(v.r).scale(c) for c in coeffs)
    return ToricCoHiggsField(v, mats)


@dataclass(frozen=True)
class ChartExpansion:
    """Chart matrices of a field on one maximal cone.

    Entry k holds the character of the k-th chart coordinate (the monomial
    tag) and the matrix M_k = sum_j <u^k, e_j> A_j.  The tuple (A_j) is
    recovered from (M_k) by the inverse dual-basis matrix.
    """

    cone: Cone
    terms: tuple[tuple[tuple[int, ...], Mat], ...]


def chart_expansion(field: ToricCoHiggsField, sigma: Cone) -> ChartExpansion:
    duals = dual_basis(field.bundle.fan, sigma)
    r = field.bundle.r
    terms = []
    for u in duals:
        m = Mat.zero(r, r)
        for coeff, a in zip(u, field.mats):
            if coeff:
                m = m + a.scale(coeff)
        terms.append((u, m))
    return ChartExpansion(sigma, tuple(terms))


@dataclass(frozen=True)
class IntegrabilityVerdict:
    """Chart-by-chart commutation check over all maximal cones."""

    valid: bool
    first_failure: tuple[int, int, int] | None = None  # (cone index, k, l)


def verify_integrability(field: ToricCoHiggsField) -> IntegrabilityVerdict:
    """Commute all chart matrices on every maximal cone.

    Independent of ``validate_field``: it must agree with that function's
    commutation sub-verdict on every input.
    """
    for idx, sigma in enumerate(field.bundle.fan.max_cones):
        exp = chart_expansion(field, sigma)
        mats = [m for _, m in exp.terms]
        for k in range(len(mats)):
            for l in range(k + 1, len(mats)):
                if not commutator(mats[k], mats[l]).is_zero():
                    return IntegrabilityVerdict(False, (idx, k, l))
    return IntegrabilityVerdict(True)


def canonical_pair(fan: Fan) -> tuple[TVB, tuple[Mat, ...]]:
    """Tangent-plus-trivial-line bundle with the nilpotent candidate tuple.

    The j-th matrix sends the j-th tangent coordinate to the line summand's
    generator and everything else to zero.  The tuple is returned without any
    validity claim; run ``validate_field`` and ``verify_integrability`` on it
    and record what they say.
    """
    bundle = direct_sum(tangent_bundle(fan), line_bundle(fan, 0))
    n = fan.n
    r = n + 1
    mats = tuple(Mat.elementary(r, r, n, j) for j in range(n))
    return bundle, mats


@dataclass(frozen=True)
class ClassificationReport:
    """Everything the classification computes for one bundle."""

    rank: int
    n: int
    bundle_status: str
    bundle_certificate: str | None
    dim_h: int
    basis: tuple[Mat, ...]
    commutative: bool
    center_basis: tuple[Mat, ...]
    parameters: int | None
    generators: tuple[tuple[Mat, ...], ...] | None
    tuple_equations: TupleVarietyEqs | None
    chern: ChernData | None
    notes: tuple[str, ...]
    warnings: tuple[str, ...]


_GROUP_NOTE = (
    "counts describe the linear algebra of filtered endomorphisms; the "
    "filtered automorphisms form its unit group, an open invertibility "
    "condition that is reported, not imposed"
)


def classify(
    v: TVB,
    *,
    oracle_limit: int = DEFAULT_ORACLE_LIMIT,
) -> ClassificationReport:
    """Full classification of valid field tuples on one bundle.

    For a commutative endomorphism algebra the valid fields form a free
    module with n·dim generators (one basis matrix per slot); otherwise the
    report carries the exact bilinear equations of the commuting tuples.
    """
    verdict = is_vector_bundle(v, oracle_limit=oracle_limit)
    warnings = []
    if not verdict.compatible:
        warnings.append(
            f"filtrations are {verdict.status} on cone {verdict.cone_index} "
            f"({verdict.certificate}); classification proceeds on the raw "
            "filtration data"
        )
    alg = filtered_endos(v)
    commutative = is_commutative(alg)
    cen = tuple(center(alg))
    n = v.fan.n
    generators = None
    parameters = None
    equations = None
    if commutative:
        parameters = n * alg.dim
        gens = []
        for slot in range(n):
            for b in alg.basis:
                gens.append(
                    tuple(
                        b if j == slot else Mat.zero(v.r, v.r) for j in range(n)
                    )
                )
        generators = tuple(gens)
    else:
        equations = tuple_variety_equations(alg, n)
    chern = equivariant_chern_data(v, verdict) if verdict.compatible else None
    return ClassificationReport(
        rank=v.r,
        n=n,
        bundle_status=verdict.status,
        bundle_certificate=verdict.certificate,
        dim_h=alg.dim,
        basis=alg.basis,
        commutative=commutative,
        center_basis=cen,
        parameters=parameters,
        generators=generators,
        tuple_equations=equations,
        chern=chern,
        notes=(_GROUP_NOTE,),
        warnings=tuple(warnings),
    )
