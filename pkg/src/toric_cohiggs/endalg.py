"""The algebra of filtration-preserving endomorphisms of a bundle's fiber.

A matrix A is a filtered endomorphism when A·E(i) ⊆ E(i) for every ray
filtration value E(i); these form a unital associative matrix algebra.  The
module computes a canonical basis of that algebra, its center and structure
constants, and the bilinear equations cutting out commuting n-tuples of its
elements (the classification datum for invariant co-Higgs fields).

The algebra is handled as a linear solution space, not as its unit group:
invertibility is an open condition on top of the linear data and is reported,
never enforced.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bundles import TVB
from .errors import InternalError
from .linalg import (
    Mat,
    Subspace,
    commutator,
    kernel,
    solve_linear,
    solve_mat_constraints,
)


@dataclass(frozen=True)
class FilteredEndAlgebra:
    """Canonical basis of {A : A preserves every filtration step subspace}."""

    bundle: TVB
    basis: tuple[Mat, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, coords) -> Mat:
        """The algebra element with the given coordinates in the basis."""
        out = Mat.zero(self.bundle.r, self.bundle.r)
        for c, a in zip(coords, self.basis):
            if c:
                out = out + a.scale(c)
        return out


def filtered_endos(v: TVB) -> FilteredEndAlgebra:
    """Solve the membership constraints A·w ∈ V over all filtration steps.

    Step subspaces repeated across rays contribute their constraints once.
    Compatibility of the bundle is not required; the constraint system is
    meaningful for arbitrary filtration data.
    """
    constraints = []
    seen = set()
    for filt in v.filts:
        for _, sub in filt.steps:
            if sub.dim in (0, v.r):
                continue  # zero and full spaces constrain nothing
            if sub in seen:
                continue
            seen.add(sub)
            for w in sub.basis:
                constraints.append((w, sub))
    basis = solve_mat_constraints(constraints, v.r)
    return FilteredEndAlgebra(v, tuple(basis))


def is_commutative(alg: FilteredEndAlgebra) -> bool:
    basis = alg.basis
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if not commutator(basis[i], basis[j]).is_zero():
                return False
    return True


def center(alg: FilteredEndAlgebra) -> list[Mat]:
    """Basis of {Z in the algebra : [Z, A] = 0 for every basis element A}."""
    d = alg.dim
    if d == 0:
        return []
    rows = []
    r = alg.bundle.r
    # coordinates x with sum_b x_b [A_b, A_a] = 0 for all a
    for a in alg.basis:
        comms = [commutator(b, a).vectorize() for b in alg.basis]
        for pos in range(r * r):
            rows.append([comms[b][pos] for b in range(d)])
    coords = kernel(Mat(rows, ncols=d)) if rows else Subspace.full(d)
    return [alg.element(x) for x in coords.basis]


@dataclass(frozen=True)
class StructureConstants:
    """Tensor c with A_a · A_b = sum_d c[a][b][d] A_d in the algebra basis."""

    c: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def product_coords(self, a: int, b: int) -> tuple[Fraction, ...]:
        return self.c[a][b]


def _coords_in_basis(alg: FilteredEndAlgebra, target: Mat) -> tuple[Fraction, ...] | None:
    cols = Mat([b.vectorize() for b in alg.basis], ncols=alg.bundle.r ** 2).transpose()
    return solve_linear(cols, target.vectorize())


def structure_constants(alg: FilteredEndAlgebra) -> StructureConstants:
    """Exact coefficients of every basis product; fails if not closed.

    Filtered endomorphism algebras are multiplicatively closed, so a closure
    violation signals an internal bug.
    """
    tensor = []
    for a in alg.basis:
        row = []
        for b in alg.basis:
            coords = _coords_in_basis(alg, a @ b)
            if coords is None:
                raise InternalError(
                    "algebra basis is not closed under multiplication"
                )
            row.append(coords)
        tensor.append(tuple(row))
    return StructureConstants(tuple(tensor))


@dataclass(frozen=True)
class TupleVarietyEqs:
    """Bilinear equations cutting out commuting n-tuples of algebra elements.

    For coordinate vectors x, y of two tuple entries, the commutator expands
    as [x·A, y·A] = sum_d B_d(x, y) A_d; the same forms B_d apply to every
    pair of tuple slots 1 <= j < k <= n.  Identically zero forms are dropped,
    so a commutative algebra yields no equations and the commuting tuples are
    the full n·dim-parameter affine space.
    """

    n: int
    dim: int
    forms: tuple[Mat, ...]  # each dim x dim, one per surviving basis index

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (j, k) for j in range(1, self.n + 1) for k in range(j + 1, self.n + 1)
        )

    def evaluate(self, x, y) -> tuple[Fraction, ...]:
        """Values B_d(x, y) for one slot pair."""
        out = []
        for form in self.forms:
            val = sum(
                xi * form.entry(i, j) * yj
                for i, xi in enumerate(x)
                for j, yj in enumerate(y)
                if xi and yj
            )
            out.append(Fraction(val))
        return tuple(out)

    def satisfied_by(self, coord_tuples) -> bool:
        """True iff every slot pair evaluates to zero on the coordinates."""
        vecs = list(coord_tuples)
        for i in range(len(vecs)):
            for j in range(i + 1, len(vecs)):
                if any(val != 0 for val in self.evaluate(vecs[i], vecs[j])):
                    return False
        return True


def tuple_variety_equations(alg: FilteredEndAlgebra, n: int) -> TupleVarietyEqs:
    """Equations for n-tuples of pairwise-commuting algebra elements."""
    if n < 1:
        raise ValueError("tuple length must be >= 1")
    d = alg.dim
    if n == 1 or d == 0:
        return TupleVarietyEqs(n, d, ())
    sc = structure_constants(alg)
    gammas = []
    for dest in range(d):
        form = [
            [sc.c[a][b][dest] - sc.c[b][a][dest] for b in range(d)]
            for a in range(d)
        ]
        gammas.append(Mat(form, ncols=d))
    forms = tuple(g for g in gammas if not g.is_zero())
    return TupleVarietyEqs(n, d, forms)
