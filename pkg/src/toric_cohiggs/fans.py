"""Lattices, rays, smooth full-dimensional cones, and fans.

Rays are primitive integer vectors; characters live in the dual lattice and
pair with rays through the exact integer dot product.  Only smooth maximal
cones are supported: the rays of each maximal cone must form a basis of the
lattice (determinant ±1).  Completeness of a fan is never required, so
single-cone fixtures are legal; ``validate_fan(..., check_faces=True)`` turns
on the pairwise face compatibility test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .linalg import Mat, Q, _rref_rows, kernel

RayVec = tuple[int, ...]
Character = tuple[int, ...]


def pairing(u: Character, rho: RayVec) -> int:
    """Exact pairing <u, rho> = sum u_i rho_i."""
    if len(u) != len(rho):
        raise ValueError("pairing of vectors of different lengths")
    return sum(a * b for a, b in zip(u, rho))


def is_primitive(v: RayVec) -> bool:
    """Nonzero and with coordinate gcd 1."""
    g = 0
    for a in v:
        g = gcd(g, abs(a))
    return g == 1


@dataclass(frozen=True)
class Cone:
    """A maximal cone, stored as the sorted indices of its rays in the fan."""

    ray_indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.ray_indices)
        if len(set(idx)) != len(idx):
            raise ValueError(f"duplicate ray indices in cone {idx}")
        object.__setattr__(self, "ray_indices", tuple(sorted(idx)))


@dataclass(frozen=True)
class Fan:
    """Lattice rank n, primitive rays, and smooth maximal cones.

    Construction only normalizes types; mathematical validity is the job of
    ``validate_fan`` so that broken inputs can be reported as verdicts.
    """

    n: int
    rays: tuple[RayVec, ...]
    max_cones: tuple[Cone, ...]

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(a) for a in r) for r in self.rays))
        object.__setattr__(
            self,
            "max_cones",
            tuple(c if isinstance(c, Cone) else Cone(tuple(c)) for c in self.max_cones),
        )

    def cone_rays(self, cone: Cone) -> tuple[RayVec, ...]:
        return tuple(self.rays[i] for i in cone.ray_indices)


@dataclass(frozen=True)
class FanVerdict:
    ok: bool
    reason: str | None = None


def _cone_det_unimodular(fan: Fan, cone: Cone) -> bool:
    rows = [fan.rays[i] for i in cone.ray_indices]
    m = [[Q(a) for a in r] for r in rows]
    det = _det(m)
    return det in (1, -1)


def _det(m: list[list[Fraction]]) -> Fraction:
    """Determinant by Gaussian elimination on a copy."""
    n = len(m)
    if n == 0:
        return Q(1)
    m = [row[:] for row in m]
    det = Q(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Q(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = m[col][col]
        for i in range(col + 1, n):
            if m[i][col] != 0:
                f = m[i][col] / inv
                m[i] = [a - f * b for a, b in zip(m[i], m[col])]
    return det


def validate_fan(fan: Fan, check_faces: bool = False) -> FanVerdict:
    """Check the structural fan invariants, reporting the first failure.

    With ``check_faces`` every pair of maximal cones is additionally required
    to intersect in the cone spanned by their shared rays, decided by exact
    extreme-ray enumeration of the intersection.
    """
    if fan.n < 0:
        return FanVerdict(False, "negative lattice rank")
    for i, ray in enumerate(fan.rays):
        if len(ray) != fan.n:
            return FanVerdict(False, f"ray {i} has length {len(ray)}, expected {fan.n}")
        if all(a == 0 for a in ray):
            return FanVerdict(False, f"ray {i} is zero")
        if not is_primitive(ray):
            return FanVerdict(False, f"ray {i} = {ray} is not primitive")
    if len(set(fan.rays)) != len(fan.rays):
        return FanVerdict(False, "duplicate rays")
    if not fan.max_cones:
        return FanVerdict(False, "fan has no maximal cones")
    seen = set()
    for ci, cone in enumerate(fan.max_cones):
        if cone.ray_indices in seen:
            return FanVerdict(False, f"duplicate maximal cone {cone.ray_indices}")
        seen.add(cone.ray_indices)
        if any(i < 0 or i >= len(fan.rays) for i in cone.ray_indices):
            return FanVerdict(False, f"cone {ci} has a ray index out of range")
        if len(cone.ray_indices) != fan.n:
            return FanVerdict(
                False,
                f"cone {ci} has {len(cone.ray_indices)} rays, expected {fan.n}",
            )
        if not _cone_det_unimodular(fan, cone):
            return FanVerdict(False, f"cone {ci} is not smooth (determinant not ±1)")
    used = {i for cone in fan.max_cones for i in cone.ray_indices}
    missing = sorted(set(range(len(fan.rays))) - used)
    if missing:
        return FanVerdict(False, f"ray {missing[0]} lies in no maximal cone")
    if check_faces:
        for a, b in itertools.combinations(range(len(fan.max_cones)), 2):
            reason = _face_failure(fan, fan.max_cones[a], fan.max_cones[b])
            if reason is not None:
                return FanVerdict(False, f"cones {a} and {b} {reason}")
    return FanVerdict(True)


def _face_failure(fan: Fan, sigma: Cone, tau: Cone) -> str | None:
    """None if sigma ∩ tau is exactly the cone on their shared rays.

    In the coordinates y of sigma (x = R_sigma y, y >= 0) the intersection is
    {y >= 0, B y >= 0} with B = U_tau R_sigma; the test asks that every
    extreme ray of that cone is supported on the shared ray indices.
    """
    n = fan.n
    shared = set(sigma.ray_indices) & set(tau.ray_indices)
    u_tau = dual_basis(fan, tau)
    r_sigma_cols = [fan.rays[i] for i in sigma.ray_indices]
    b = [[pairing(u, col) for col in r_sigma_cols] for u in u_tau]
    ineqs = [[Q(int(i == j)) for j in range(n)] for i in range(n)]
    ineqs += [[Q(x) for x in row] for row in b]
    free_positions = [
        k for k, idx in enumerate(sigma.ray_indices) if idx not in shared
    ]
    for ray in _extreme_rays(ineqs, n):
        for k in free_positions:
            if ray[k] != 0:
                return (
                    "overlap beyond their common face "
                    f"(interior direction through ray index {sigma.ray_indices[k]})"
                )
    return None


def _extreme_rays(ineqs: list[list[Fraction]], n: int) -> list[tuple[Fraction, ...]]:
    """Extreme rays of the pointed cone {y : A y >= 0} with A the given rows.

    Brute-force over (n-1)-subsets of rows: a candidate direction is a
    one-dimensional kernel of the chosen tight rows that satisfies all
    inequalities.  Exact and adequate for the small cones handled here.
    """
    if n == 0:
        return []
    if n == 1:
        candidates = [(Q(1),), (Q(-1),)]
        return [c for c in candidates if all(row[0] * c[0] >= 0 for row in ineqs)]
    rays: set[tuple[Fraction, ...]] = set()
    for subset in itertools.combinations(range(len(ineqs)), n - 1):
        m = Mat([ineqs[i] for i in subset], ncols=n)
        ker = kernel(m)
        if ker.dim != 1:
            continue
        v = ker.basis[0]
        for cand in (v, tuple(-a for a in v)):
            if all(sum(r * c for r, c in zip(row, cand)) >= 0 for row in ineqs):
                rays.add(_normalize_ray(cand))
    return sorted(rays)


def _normalize_ray(v: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    lead = next(a for a in v if a != 0)
    return tuple(a / abs(lead) for a in v)


def fan_point() -> Fan:
    """The zero-dimensional fan (one empty maximal cone)."""
    return Fan(0, (), (Cone(()),))


def fan_pn(n: int) -> Fan:
    """Fan of n-dimensional projective space: e_1..e_n and minus their sum."""
    if n < 1:
        raise ValueError("projective space fan needs n >= 1")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = [
        Cone(tuple(sorted(c))) for c in itertools.combinations(range(n + 1), n)
    ]
    return Fan(n, tuple(rays), tuple(cones))


def fan_product(f: Fan, g: Fan) -> Fan:
    """Product fan: rays are (rho, 0) and (0, tau), cones are pairwise unions."""
    n = f.n + g.n
    rays = [tuple(r) + (0,) * g.n for r in f.rays]
    rays += [(0,) * f.n + tuple(r) for r in g.rays]
    cones = []
    for cf in f.max_cones:
        for cg in g.max_cones:
            idx = tuple(cf.ray_indices) + tuple(i + len(f.rays) for i in cg.ray_indices)
            cones.append(Cone(idx))
    return Fan(n, tuple(rays), tuple(cones))


def fan_hirzebruch(a: int) -> Fan:
    """Fan of the Hirzebruch surface with twist a >= 0."""
    if a < 0:
        raise ValueError("Hirzebruch twist must be >= 0")
    rays = ((1, 0), (0, 1), (-1, a), (0, -1))
    cones = (Cone((0, 1)), Cone((1, 2)), Cone((2, 3)), Cone((3, 0)))
    return Fan(2, rays, cones)


def dual_basis(fan: Fan, sigma: Cone) -> tuple[Character, ...]:
    """Characters u^1..u^n with <u^k, rho_l> = delta_kl for sigma's rays.

    The rays are taken in stored (sorted-index) order; entries are integers
    because the ray matrix is unimodular.
    """
    if sigma not in fan.max_cones:
        raise ValueError("cone is not a maximal cone of the fan")
    rows = [fan.rays[i] for i in sigma.ray_indices]
    if len(rows) != fan.n:
        raise ValueError("cone is not full-dimensional")
    n = fan.n
    aug = [[Q(a) for a in row] + [Q(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    reduced, pivots = _rref_rows(aug)
    if pivots != list(range(n)):
        raise ValueError("cone ray matrix is singular")
    inv_rows = [r[n:] for r in reduced[:n]]  # rows of M^{-1} where M rows are the rays
    # u^k is the k-th column of M^{-1}: <u^k, rho_l> = (M M^{-1})_{lk} = delta
    duals = []
    for k in range(n):
        col = [inv_rows[i][k] for i in range(n)]
        if any(c.denominator != 1 for c in col):
            raise ValueError("cone is not smooth: dual basis is not integral")
        duals.append(tuple(int(c) for c in col))
    return tuple(duals)
