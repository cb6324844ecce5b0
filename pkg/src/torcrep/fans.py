"""Simplicial rational cones and fans over a scaled lattice.

Cones are given by their primitive ray generators; a fan stores only its
maximal cones and derives faces on demand.  All membership and volume
computations are exact.

The JSON interchange schema for fans is::

    {"lattice": {"n": ..., "r": ..., "basis": [[row], ...]},
     "rays": [[scaled ints], ...],          # sorted lexicographically
     "maximal_cones": [[ray indices], ...]} # each sorted, list sorted

which is bit-exact across runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .errors import (
    InvalidFan,
    NotInLattice,
    NotInSupport,
    NotPrimitive,
)
from .intlinalg import (
    IntMatrix,
    hermite_normal_form,
    rank,
    smith_normal_form,
    solve_rational,
)
from .lattice import LatticePoint, ScaledLattice


@dataclass(frozen=True)
class Cone:
    """Simplicial cone spanned by pairwise-distinct, independent rays."""

    rays: tuple[LatticePoint, ...]

    @property
    def dim(self) -> int:
        return len(self.rays)

    def ray_set(self) -> frozenset[LatticePoint]:
        return frozenset(self.rays)

    def __str__(self) -> str:
        return "Cone(" + ", ".join(str(r) for r in self.rays) + ")"


def make_cone(points) -> Cone:
    """Canonical cone from ray generators; checks simpliciality."""
    rays = tuple(sorted(set(points), key=lambda p: p.coords))
    if rays:
        mat = IntMatrix.from_columns([r.coords for r in rays])
        if rank(mat) != len(rays):
            raise ValueError("rays are linearly dependent; cone is not simplicial")
    return Cone(rays)


def faces(cone: Cone) -> tuple[Cone, ...]:
    """All faces of a simplicial cone: one per subset of rays."""
    out = []
    for k in range(cone.dim + 1):
        for sub in combinations(cone.rays, k):
            out.append(Cone(sub))
    return tuple(out)


def contains_point(cone: Cone, p: LatticePoint, strict: bool = False) -> bool:
    """Exact membership test; ``strict`` tests the relative interior."""
    if not cone.rays:
        return p.is_zero() and not strict
    rd = cone.rays[0].denom
    # clear denominators: (rays/rd) lam = p/pd  <=>  (pd*rays) lam = rd*p
    mat = IntMatrix.from_columns(
        [tuple(p.denom * c for c in r.coords) for r in cone.rays]
    )
    lam = solve_rational(mat, tuple(rd * c for c in p.coords))
    if lam is None:
        return False
    if strict:
        return all(x > 0 for x in lam)
    return all(x >= 0 for x in lam)


def barycentric(cone: Cone, p: LatticePoint) -> tuple[Fraction, ...] | None:
    """Coefficients of ``p`` over the cone's rays, or None if not in the span."""
    mat = IntMatrix.from_columns([r.coords for r in cone.rays])
    return solve_rational(mat, p.coords)


def ray_matrix(cone: Cone, lattice: ScaledLattice) -> IntMatrix:
    """Ray generators in lattice-basis coordinates, as columns."""
    return IntMatrix.from_columns([lattice.basis_coords(r) for r in cone.rays])


def cone_index(cone: Cone, lattice: ScaledLattice) -> int:
    """Index ``[N ∩ span(c) : Z<rays>]``; 1 exactly for smooth cones."""
    mat = ray_matrix(cone, lattice)
    if cone.dim == lattice.dim:
        return abs(mat.det())
    s, _, _ = smith_normal_form(mat)
    prod = 1
    for i in range(min(s.rows, s.cols)):
        if s[i][i]:
            prod *= s[i][i]
    return prod


def is_smooth_cone(cone: Cone, lattice: ScaledLattice) -> bool:
    return cone_index(cone, lattice) == 1


def _saturation_coords(cone: Cone, lattice: ScaledLattice) -> IntMatrix:
    """Ray coordinates in a basis of ``N ∩ span(c)`` (a d-by-d matrix)."""
    mat = ray_matrix(cone, lattice)
    d = cone.dim
    if d == lattice.dim:
        return mat
    _, p, _ = smith_normal_form(mat)
    top = (p * mat).data[:d]
    return IntMatrix(top)


def psi_lattice_points(cone: Cone, lattice: ScaledLattice):
    """Lattice points of ``Conv(0, rays)`` with barycentric coordinates.

    Yields pairs ``(point, lambdas)`` in the saturated span lattice, found
    by an exact bounding-box walk.
    """
    x = _saturation_coords(cone, lattice)
    d = cone.dim
    det = x.det()
    adj = [
        [_cofactor(x, j, i) for j in range(d)] for i in range(d)
    ]  # adjugate: inverse times det
    vertices = [(0,) * d] + x.columns()
    lo = [min(v[i] for v in vertices) for i in range(d)]
    hi = [max(v[i] for v in vertices) for i in range(d)]
    sign = 1 if det > 0 else -1
    absdet = abs(det)

    def walk(prefix, i):
        if i == d:
            pt = tuple(prefix)
            lam_num = [sum(adj[k][j] * pt[j] for j in range(d)) for k in range(d)]
            if any(sign * v < 0 for v in lam_num):
                return
            if sign * sum(lam_num) > absdet:
                return
            yield pt, tuple(Fraction(sign * v, absdet) for v in lam_num)
            return
        for c in range(lo[i], hi[i] + 1):
            yield from walk(prefix + [c], i + 1)

    yield from walk([], 0)


def _cofactor(m: IntMatrix, i: int, j: int) -> int:
    minor = [
        [m[a][b] for b in range(m.cols) if b != j]
        for a in range(m.rows)
        if a != i
    ]
    if not minor:
        return 1
    s = -1 if (i + j) % 2 else 1
    return s * IntMatrix(minor).det()


def is_terminal(cone: Cone, lattice: ScaledLattice) -> bool:
    """True when the only lattice points of ``Conv(0, rays)`` are its vertices."""
    d = cone.dim
    for pt, lam in psi_lattice_points(cone, lattice):
        if all(v == 0 for v in lam):
            continue
        if sum(1 for v in lam if v != 0) == 1 and any(v == 1 for v in lam):
            continue
        return False
    return True


def is_canonical(cone: Cone, lattice: ScaledLattice) -> bool:
    """True when all nonzero points of ``Conv(0, rays)`` lie on the far facet."""
    for pt, lam in psi_lattice_points(cone, lattice):
        if all(v == 0 for v in lam):
            continue
        if sum(lam) != 1:
            return False
    return True


@dataclass(frozen=True)
class Fan:
    """Fan given by its maximal cones over a shared lattice."""

    lattice: ScaledLattice
    maximal_cones: tuple[Cone, ...]

    @cached_property
    def rays(self) -> tuple[LatticePoint, ...]:
        seen = set()
        for c in self.maximal_cones:
            seen.update(c.rays)
        return tuple(sorted(seen, key=lambda p: p.coords))

    @cached_property
    def ray_set(self) -> frozenset[LatticePoint]:
        return frozenset(self.rays)

    def two_cones(self) -> tuple[Cone, ...]:
        seen = set()
        for c in self.maximal_cones:
            for pair in combinations(c.rays, 2):
                seen.add(Cone(tuple(sorted(pair, key=lambda p: p.coords))))
        return tuple(sorted(seen, key=lambda c: tuple(r.coords for r in c.rays)))

    def is_smooth(self) -> bool:
        return all(is_smooth_cone(c, self.lattice) for c in self.maximal_cones)


def make_fan(lattice: ScaledLattice, cones, validate: bool = False) -> Fan:
    ordered = tuple(
        sorted(set(cones), key=lambda c: tuple(r.coords for r in c.rays))
    )
    fan = Fan(lattice, ordered)
    if validate:
        validate_fan(fan)
    return fan


def sigma_fan(lattice: ScaledLattice) -> Fan:
    """The fan of the quotient singularity: the positive orthant cone."""
    return make_fan(lattice, [make_cone(lattice.units())])


def validate_fan(fan: Fan) -> None:
    """Structural checks: primitive rays, simpliciality, pairwise face property.

    Raises InvalidFan on the first violation.  The pairwise check computes
    the extreme rays of each intersection exactly and verifies they span
    the cone on the common rays.
    """
    lat = fan.lattice
    for p in fan.rays:
        if not lat.contains(p):
            raise InvalidFan(f"ray {p} is not a lattice point")
        if not lat.is_primitive(p):
            raise InvalidFan(f"ray {p} is not primitive")
    for c in fan.maximal_cones:
        mat = IntMatrix.from_columns([r.coords for r in c.rays])
        if rank(mat) != c.dim:
            raise InvalidFan(f"cone {c} is not simplicial")
    for a, b in combinations(fan.maximal_cones, 2):
        common = a.ray_set() & b.ray_set()
        tau = make_cone(common) if common else Cone(())
        for x in _intersection_generators(a, b):
            pt = LatticePoint(x, a.rays[0].denom)
            if not contains_point(tau, pt):
                raise InvalidFan(
                    f"cones {a} and {b} do not intersect in a common face"
                )


def _intersection_generators(a: Cone, b: Cone):
    """Generators of ``a ∩ b``: extreme rays of the exact double system."""
    ra = [r.coords for r in a.rays]
    rb = [r.coords for r in b.rays]
    k = len(ra) + len(rb)
    cols = [tuple(v) for v in ra] + [tuple(-x for x in v) for v in rb]
    n = len(cols[0])
    out = []
    seen = set()
    for size in range(1, n + 2):
        for sub in combinations(range(k), size):
            mat = IntMatrix.from_columns([cols[j] for j in sub])
            h, u = hermite_normal_form(mat)
            zero_cols = [
                j for j in range(h.cols)
                if all(h[i][j] == 0 for i in range(h.rows))
            ]
            if len(zero_cols) != 1:
                continue
            gen = u.column(zero_cols[0])
            if all(v <= 0 for v in gen):
                gen = tuple(-v for v in gen)
            if any(v < 0 for v in gen):
                continue
            full = [0] * k
            for idx, j in enumerate(sub):
                full[j] = gen[idx]
            x = tuple(
                sum(full[j] * ra[j][i] for j in range(len(ra))) for i in range(n)
            )
            if any(x) and x not in seen:
                seen.add(x)
                out.append(x)
    return out


def star_subdivision(fan: Fan, mu: LatticePoint) -> Fan:
    """Star subdivision at a primitive point of the support.

    Cones avoiding ``mu`` survive; a cone containing it is replaced by the
    joins of ``mu`` with its facets not containing ``mu``.
    """
    lat = fan.lattice
    if not lat.contains(mu):
        raise NotInLattice(f"{mu} is not a lattice point")
    if not lat.is_primitive(mu):
        raise NotPrimitive(f"{mu} is not primitive")
    hit = False
    new_cones = []
    for cone in fan.maximal_cones:
        lam = barycentric(cone, mu)
        if lam is None or any(v < 0 for v in lam):
            new_cones.append(cone)
            continue
        hit = True
        for i, v in enumerate(lam):
            if v > 0:
                rays = [r for j, r in enumerate(cone.rays) if j != i]
                rays.append(mu)
                new_cones.append(make_cone(rays))
    if not hit:
        raise NotInSupport(f"{mu} is outside the support of the fan")
    result = make_fan(lat, new_cones)
    assert set(result.rays) == set(fan.rays) | {mu}
    return result


def support_volume(fan: Fan) -> Fraction:
    """Exact volume of the support in the slab ``age <= 1``.

    For a simplicial cone with rays of positive age the slab is the
    simplex on ``u_i / age(u_i)``, so the measure is additive across any
    subdivision of the support and invariant under refinement.
    """
    total = Fraction(0)
    n = fan.lattice.dim
    for c in fan.maximal_cones:
        if c.dim != n:
            raise ValueError("support volume requires full-dimensional cones")
        det = abs(ray_matrix(c, fan.lattice).det())
        denom = Fraction(1)
        for r in c.rays:
            a = r.age
            if a <= 0:
                raise ValueError("support volume requires rays of positive age")
            denom *= a
        total += Fraction(det) / denom
    return total


def refines(fine: Fan, coarse: Fan) -> bool:
    """Support equality plus containment of every maximal cone."""
    if fine.lattice != coarse.lattice:
        return False
    for c in fine.maximal_cones:
        if not any(
            all(contains_point(big, r) for r in c.rays)
            for big in coarse.maximal_cones
        ):
            return False
    return support_volume(fine) == support_volume(coarse)


# ---------------------------------------------------------------------------
# JSON interchange


def fan_to_json(fan: Fan) -> dict:
    rays = [list(r.coords) for r in fan.rays]
    index = {r: i for i, r in enumerate(fan.rays)}
    cones = sorted(sorted(index[r] for r in c.rays) for c in fan.maximal_cones)
    return {
        "lattice": {
            "n": fan.lattice.dim,
            "r": fan.lattice.denom,
            "basis": [list(row) for row in fan.lattice.basis.data],
        },
        "rays": rays,
        "maximal_cones": cones,
    }


def fan_to_json_str(fan: Fan) -> str:
    return json.dumps(fan_to_json(fan), sort_keys=True, separators=(",", ":"))


def fan_from_json(data: dict, validate: bool = True) -> Fan:
    try:
        lat = ScaledLattice(
            int(data["lattice"]["n"]),
            int(data["lattice"]["r"]),
            IntMatrix(data["lattice"]["basis"]),
        )
        rays = [LatticePoint(tuple(c), lat.denom) for c in data["rays"]]
        cones = []
        for idxs in data["maximal_cones"]:
            if any(not 0 <= i < len(rays) for i in idxs):
                raise ValueError(f"ray index out of range in {idxs}")
            cones.append(make_cone([rays[i] for i in idxs]))
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise InvalidFan(f"malformed fan data: {exc}") from exc
    fan = make_fan(lat, cones)
    if validate:
        validate_fan(fan)
    return fan


def fans_equal(a: Fan, b: Fan) -> bool:
    """Bit-exact fan equality via the canonical serialization."""
    return fan_to_json_str(a) == fan_to_json_str(b)


# ---------------------------------------------------------------------------
# Unimodular normal form for two-dimensional fans


def gl2_normal_form(fan: Fan) -> str:
    """Canonical serialization of a 2-dimensional fan modulo GL(2, Z).

    Every ordered unimodular ray pair inside a maximal cone is used as an
    anchor basis; the lexicographically smallest transformed serialization
    is a complete invariant of the GL(2, Z) orbit.
    """
    if fan.lattice.dim != 2:
        raise ValueError("normal form only defined for 2-dimensional fans")
    anchors = []
    for c in fan.maximal_cones:
        if c.dim != 2:
            continue
        u, v = (r.coords for r in c.rays)
        if abs(u[0] * v[1] - u[1] * v[0]) == 1:
            anchors.append((u, v))
            anchors.append((v, u))
    if not anchors:
        raise ValueError("fan has no unimodular anchor pair")
    forms = []
    denom = fan.lattice.denom
    for u, v in anchors:
        t = IntMatrix([[u[0], v[0]], [u[1], v[1]]]).inverse_unimodular()
        mapped = {
            r: LatticePoint(t.mul_vec(r.coords), denom) for r in fan.rays
        }
        rays = sorted((mapped[r].coords for r in fan.rays))
        index = {c: i for i, c in enumerate(rays)}
        cones = sorted(
            sorted(index[mapped[r].coords] for r in c.rays)
            for c in fan.maximal_cones
        )
        forms.append(
            json.dumps({"rays": [list(r) for r in rays], "cones": cones},
                       sort_keys=True, separators=(",", ":"))
        )
    return min(forms)


def gl2_equivalent(a: Fan, b: Fan) -> bool:
    return gl2_normal_form(a) == gl2_normal_form(b)
