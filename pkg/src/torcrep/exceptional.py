"""Exceptional divisors: star fans, line-bundle total spaces, certificates.

For a junior ray the star fan lives in the quotient lattice and describes
the exceptional divisor.  Weighting each star ray by minus the age of its
lift gives a divisor whose line-bundle total-space fan is isomorphic, via
an explicit unimodular map, to the open subfan of maximal cones through
the junior ray.  Verifying that map cone by cone certifies that the
divisor is normally embedded with tubular neighborhood equal to the whole
total space; in the crepant case the divisor is the canonical one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .divisors import TDivisor
from .errors import (
    CertificateFailure,
    LiftAmbiguous,
    NotComplete,
    NotSmooth,
    NotSurface,
    RayAbsent,
)
from .fans import Cone, Fan, barycentric, make_cone, make_fan
from .groups import GroupData
from .intlinalg import IntMatrix, solve_rational
from .lattice import LatticePoint, QuotientLattice, ScaledLattice, quotient_by_ray


@dataclass(frozen=True)
class StarFan:
    """Fan of the exceptional divisor in the quotient lattice.

    ``lifts`` maps each quotient ray generator back to the unique fan ray
    it came from; ``complete`` records whether the junior point is
    interior to the orthant.
    """

    quotient: QuotientLattice
    fan: Fan
    origin_ray: LatticePoint
    lifts: tuple[tuple[LatticePoint, LatticePoint], ...]
    complete: bool

    def lift_of(self, qray: LatticePoint) -> LatticePoint:
        return dict(self.lifts)[qray]


@dataclass(frozen=True)
class LineBundleFan:
    """Total-space fan of a line bundle over a star fan."""

    base: StarFan
    divisor: TDivisor
    fan: Fan


@dataclass(frozen=True)
class SurfaceType:
    """Classification of a smooth complete toric surface."""

    kind: str  # "P2", "hirzebruch" or "chain"
    parameter: int | None
    self_intersections: tuple[int, ...]

    def __str__(self) -> str:
        if self.kind == "P2":
            return "P2"
        if self.kind == "hirzebruch":
            return f"F{self.parameter}"
        return "blowup chain " + str(list(self.self_intersections))


@dataclass(frozen=True)
class EmbeddingCertificate:
    junior: LatticePoint
    iso: IntMatrix
    cone_bijection: tuple[tuple[Cone, Cone], ...]
    anchor_cones_checked: int
    verified: bool


def xi_g(fan: Fan, g_hat: LatticePoint) -> Fan:
    """Subfan of all faces of the maximal cones containing the given ray.

    Corresponds to an open toric subvariety; only the maximal cones are
    stored, faces are implicit.
    """
    if g_hat not in fan.ray_set:
        raise RayAbsent(f"{g_hat} is not a ray of the fan")
    cones = [c for c in fan.maximal_cones if g_hat in c.ray_set()]
    return make_fan(fan.lattice, cones)


def star_fan(fan: Fan, g_hat: LatticePoint) -> StarFan:
    """Project the cones through a ray into the quotient lattice."""
    if g_hat not in fan.ray_set:
        raise RayAbsent(f"{g_hat} is not a ray of the fan")
    quo = quotient_by_ray(fan.lattice, g_hat)
    lifts: dict[LatticePoint, LatticePoint] = {}
    cones = []
    for c in fan.maximal_cones:
        if g_hat not in c.ray_set():
            continue
        imgs = []
        for u in c.rays:
            if u == g_hat:
                continue
            ubar = quo.project(u)
            prev = lifts.get(ubar)
            if prev is not None and prev != u:
                raise LiftAmbiguous(
                    f"rays {prev} and {u} project to the same star ray {ubar}"
                )
            lifts[ubar] = u
            imgs.append(ubar)
        cones.append(make_cone(imgs))
    star = make_fan(quo.as_lattice, cones)
    for ubar in star.rays:
        if not quo.as_lattice.is_primitive(ubar):
            raise NotSmooth(f"star ray {ubar} is not primitive; fan is singular along the ray")
    complete = all(c > 0 for c in g_hat.coords)
    ordered = tuple(sorted(lifts.items(), key=lambda kv: kv[0].coords))
    return StarFan(quo, star, g_hat, ordered, complete)


def age_weighted_divisor(star: StarFan) -> TDivisor:
    """Star-fan divisor with coefficient minus the age of each ray's lift."""
    out = {}
    for ubar, u in star.lifts:
        a = u.age
        assert a.denominator == 1, "lift ages must be integers"
        out[ubar] = -int(a)
    return TDivisor.from_dict(out)


def total_space_fan(star: StarFan, div: TDivisor) -> LineBundleFan:
    """Fan of the line bundle: cones ``Cone((0,1), (u, -a_u))`` and faces."""
    n1 = star.fan.lattice.dim
    total_lat = ScaledLattice(n1 + 1, 1, IntMatrix.identity(n1 + 1))
    apex = LatticePoint((0,) * n1 + (1,), 1)
    cones = []
    for c in star.fan.maximal_cones:
        rays = [apex]
        for u in c.rays:
            rays.append(LatticePoint(u.coords + (-div.coefficient(u),), 1))
        cones.append(make_cone(rays))
    fan = make_fan(total_lat, cones)
    assert len(fan.rays) == len(star.fan.rays) + 1
    return LineBundleFan(star, div, fan)


def _iso_matrix(fan: Fan, star: StarFan, anchor: Cone) -> IntMatrix:
    """Lattice map sending ``(0,1)`` to the junior and ``(ubar, age u)`` to u.

    Domain coordinates are quotient-times-Z; the image is expressed in
    basis coordinates of the ambient lattice.
    """
    lat = fan.lattice
    g_hat = star.origin_ray
    quo = star.quotient
    dom_cols = []
    img_cols = []
    for u in anchor.rays:
        if u == g_hat:
            continue
        ubar = quo.project(u)
        a = u.age
        assert a.denominator == 1
        dom_cols.append(ubar.coords + (int(a),))
        img_cols.append(lat.basis_coords(u))
    dom_cols.append((0,) * quo.dim + (1,))
    img_cols.append(lat.basis_coords(g_hat))
    d = IntMatrix.from_columns(dom_cols)
    t = IntMatrix.from_columns(img_cols)
    return t * d.inverse_unimodular()


def certify_normal_embedding(
    fan: Fan, g_hat: LatticePoint, group: GroupData
) -> EmbeddingCertificate:
    """Verify the tubular-neighborhood isomorphism for one junior ray.

    For every maximal anchor cone through the ray: the induced lattice map
    must be unimodular, send each weighted star ray to its lift, and carry
    the total-space cones bijectively onto the maximal cones through the
    ray.  Raises CertificateFailure at the first violation.
    """
    lat = fan.lattice
    if not fan.is_smooth():
        raise NotSmooth("embedding certificates require a smooth fan")
    star = star_fan(fan, g_hat)
    div = age_weighted_divisor(star)
    total = total_space_fan(star, div)
    sub = xi_g(fan, g_hat)
    anchors = sub.maximal_cones
    anchor_set = set(anchors)

    first_iso = None
    first_bijection = None
    for anchor in anchors:
        iso = _iso_matrix(fan, star, anchor)
        if not iso.is_unimodular():
            raise CertificateFailure(
                f"anchor {anchor}: induced map is not unimodular"
            )
        for ubar, u in star.lifts:
            a = int(u.age)
            got = iso.mul_vec(ubar.coords + (a,))
            if got != lat.basis_coords(u):
                raise CertificateFailure(
                    f"anchor {anchor}: ray {ubar} maps off its lift {u}",
                    pair=(ubar, u),
                )
        apex = (0,) * star.quotient.dim + (1,)
        if iso.mul_vec(apex) != lat.basis_coords(g_hat):
            raise CertificateFailure(f"anchor {anchor}: apex does not map to the ray")
        bijection = []
        seen = set()
        for tc in total.fan.maximal_cones:
            img_rays = []
            for ray in tc.rays:
                x = iso.mul_vec(ray.coords)
                img_rays.append(lat.from_basis_coords(x))
            img = make_cone(img_rays)
            if img not in anchor_set or img in seen:
                raise CertificateFailure(
                    f"cone {tc} maps to {img}, not a fresh maximal cone",
                    pair=(tc, img),
                )
            seen.add(img)
            bijection.append((tc, img))
        if len(seen) != len(anchors):
            raise CertificateFailure("cone map is not onto the open subfan")
        if first_iso is None:
            first_iso = iso
            first_bijection = tuple(bijection)
    return EmbeddingCertificate(
        junior=g_hat,
        iso=first_iso,
        cone_bijection=first_bijection,
        anchor_cones_checked=len(anchors),
        verified=True,
    )


def coverage_check(fan: Fan, group: GroupData) -> bool | None:
    """Every maximal cone must contain a junior ray; None when no juniors."""
    juniors = set(group.juniors)
    if not juniors:
        return None
    return all(c.ray_set() & juniors for c in fan.maximal_cones)


def _angle_class(v) -> int:
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _ccw_cmp(u, v) -> int:
    hu, hv = _angle_class(u), _angle_class(v)
    if hu != hv:
        return -1 if hu < hv else 1
    cross = u[0] * v[1] - u[1] * v[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


def classify_surface(star: StarFan) -> SurfaceType:
    """Name the surface of a complete smooth 2-dimensional star fan.

    Rays are ordered counterclockwise; the self-intersection of each prime
    divisor comes from ``u_prev + u_next = -a * u``.
    """
    if star.fan.lattice.dim != 2:
        raise NotSurface("surface classification needs a 2-dimensional fan")
    if not star.complete:
        raise NotComplete("star fan is not complete")
    rays = sorted((r.coords for r in star.fan.rays), key=cmp_to_key(_ccw_cmp))
    k = len(rays)
    cone_sets = {frozenset(r.coords for r in c.rays) for c in star.fan.maximal_cones}
    if len(cone_sets) != k:
        raise NotComplete("maximal cones do not form a single cycle")
    for i in range(k):
        u, v = rays[i], rays[(i + 1) % k]
        if frozenset((u, v)) not in cone_sets:
            raise NotComplete("adjacent rays do not span a maximal cone")
        if abs(u[0] * v[1] - u[1] * v[0]) != 1:
            raise NotSmooth("adjacent ray pair is not a lattice basis")
    selfints = []
    for i in range(k):
        p, u, q = rays[(i - 1) % k], rays[i], rays[(i + 1) % k]
        s = (p[0] + q[0], p[1] + q[1])
        mat = IntMatrix.from_columns([u])
        sol = solve_rational(mat, s)
        assert sol is not None and sol[0].denominator == 1
        selfints.append(-int(sol[0]))
    vec = tuple(selfints)
    if k == 3:
        return SurfaceType("P2", None, vec)
    if k == 4:
        for rot in range(4):
            w = vec[rot:] + vec[:rot]
            if w[0] == 0 and w[2] == 0 and w[1] == -w[3] and w[1] >= 0:
                return SurfaceType("hirzebruch", w[1], vec)
    canon = min(
        min(vec[i:] + vec[:i] for i in range(k)),
        min(vec[::-1][i:] + vec[::-1][:i] for i in range(k)),
    )
    return SurfaceType("chain", None, canon)


def age_affinity_check(cone: Cone, b: LatticePoint) -> bool:
    """Ages are affine along exact expansions over a cone basis."""
    lam = barycentric(cone, b)
    if lam is None:
        raise ValueError(f"{b} is not in the span of the cone")
    total = Fraction(0)
    for coeff, ray in zip(lam, cone.rays):
        total += coeff * ray.age
    return total == b.age


def certificate_to_json(cert: EmbeddingCertificate,
                        surface: SurfaceType | None = None) -> dict:
    data = {
        "junior": list(cert.junior.coords),
        "iso_matrix": [list(row) for row in cert.iso.data],
        "anchor_cones_checked": cert.anchor_cones_checked,
        "cone_pairs": [
            [
                [list(r.coords) for r in tc.rays],
                [list(r.coords) for r in img.rays],
            ]
            for tc, img in cert.cone_bijection
        ],
        "verified": cert.verified,
        "surface_type": None,
    }
    if surface is not None:
        data["surface_type"] = {
            "kind": surface.kind,
            "parameter": surface.parameter,
            "self_intersections": list(surface.self_intersections),
        }
    return data
