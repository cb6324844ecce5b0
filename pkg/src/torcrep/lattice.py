"""Scaled lattices for abelian quotient singularities.

The lattice ``N = Z^n + sum Z*ghat`` generated by the fractional
expressions of a group sits inside ``(1/r) Z^n``.  All points are stored
multiplied by the common denominator ``r``, so every coordinate in this
package is an exact integer: a :class:`LatticePoint` with ``coords=(1,2,3)``
and ``denom=6`` is the rational vector ``(1/6)(1,2,3)``.

A :class:`ScaledLattice` keeps a column-Hermite basis of ``r*N`` inside
``Z^n``; membership, primitivity and quotients all reduce to integer
matrix algebra against that basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from .errors import (
    DenomMismatch,
    InvalidGenerator,
    NotInLattice,
    NotPrimitive,
)
from .intlinalg import IntMatrix, hermite_normal_form, xgcd


@dataclass(frozen=True)
class LatticePoint:
    """Point of ``(1/denom) Z^n`` stored as scaled integer coordinates."""

    coords: tuple[int, ...]
    denom: int

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))
        if self.denom < 1:
            raise ValueError("denominator must be positive")

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def age(self) -> Fraction:
        """Coordinate sum divided by the denominator."""
        return Fraction(sum(self.coords), self.denom)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def scale_to(self, denom: int) -> "LatticePoint":
        if denom % self.denom:
            raise DenomMismatch(f"cannot rescale denom {self.denom} to {denom}")
        f = denom // self.denom
        return LatticePoint(tuple(c * f for c in self.coords), denom)

    def fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.denom) for c in self.coords)

    def __str__(self) -> str:
        body = ",".join(str(c) for c in self.coords)
        if self.denom == 1:
            return f"({body})"
        return f"(1/{self.denom})({body})"


def unit_point(i: int, n: int, denom: int) -> LatticePoint:
    """The standard basis vector ``e_i`` scaled into denominator ``denom``."""
    return LatticePoint(tuple(denom if j == i else 0 for j in range(n)), denom)


@dataclass(frozen=True)
class ScaledLattice:
    """Lattice ``N`` with ``Z^n <= N <= (1/denom) Z^n``.

    ``basis`` is an n-by-n column Hermite form whose columns span
    ``denom * N`` inside ``Z^n``.
    """

    dim: int
    denom: int
    basis: IntMatrix

    @cached_property
    def det(self) -> int:
        return abs(self.basis.det())

    @cached_property
    def index_over_std(self) -> int:
        """Index ``[N : Z^n]``; equals the group order."""
        return self.denom**self.dim // self.det

    def zero(self) -> LatticePoint:
        return LatticePoint((0,) * self.dim, self.denom)

    def unit(self, i: int) -> LatticePoint:
        return unit_point(i, self.dim, self.denom)

    def units(self) -> tuple[LatticePoint, ...]:
        return tuple(self.unit(i) for i in range(self.dim))

    def point(self, coords) -> LatticePoint:
        return LatticePoint(tuple(coords), self.denom)

    def _coords_or_none(self, p: LatticePoint) -> tuple[int, ...] | None:
        # forward substitution against the lower-triangular Hermite basis
        if p.denom != self.denom:
            raise DenomMismatch(
                f"point denom {p.denom} differs from lattice denom {self.denom}"
            )
        b = self.basis
        x = []
        for i in range(self.dim):
            acc = p.coords[i] - sum(b[i][j] * x[j] for j in range(i))
            if acc % b[i][i]:
                return None
            x.append(acc // b[i][i])
        return tuple(x)

    def contains(self, p: LatticePoint) -> bool:
        return self._coords_or_none(p) is not None

    def basis_coords(self, p: LatticePoint) -> tuple[int, ...]:
        x = self._coords_or_none(p)
        if x is None:
            raise NotInLattice(f"{p} is not in the lattice")
        return x

    def basis_coords_rational(self, p) -> tuple[Fraction, ...]:
        """Coordinates of an arbitrary rational point in the lattice basis."""
        if isinstance(p, LatticePoint):
            vec = p.fractions()
        else:
            vec = tuple(Fraction(x) for x in p)
        b = self.basis
        x = []
        for i in range(self.dim):
            acc = vec[i] * self.denom - sum(b[i][j] * x[j] for j in range(i))
            x.append(Fraction(acc, b[i][i]))
        return tuple(x)

    def from_basis_coords(self, x) -> LatticePoint:
        return LatticePoint(self.basis.mul_vec(x), self.denom)

    def is_primitive(self, p: LatticePoint) -> bool:
        if p.is_zero():
            raise NotInLattice("the zero vector has no primitivity")
        x = self._coords_or_none(p)
        if x is None:
            raise NotInLattice(f"{p} is not in the lattice")
        return gcd(*x) == 1

    def primitivize(self, p: LatticePoint) -> LatticePoint:
        """The primitive lattice point on the ray through ``p``."""
        x = self.basis_coords(p)
        g = gcd(*x)
        return self.from_basis_coords(tuple(v // g for v in x))


def build_lattice(gens, n: int, denom: int | None = None) -> ScaledLattice:
    """Hermite basis of ``Z^n + sum Z*g`` for scaled generators ``gens``.

    Generators must have coordinates in ``[0, denom)`` and coordinate sum
    divisible by ``denom`` (the determinant-one condition).
    """
    gens = list(gens)
    if denom is None:
        if not gens:
            denom = 1
        else:
            denom = gens[0].denom
    cols = [tuple(denom if j == i else 0 for j in range(n)) for i in range(n)]
    for g in gens:
        if g.dim != n:
            raise InvalidGenerator(f"generator {g} has dimension {g.dim}, expected {n}")
        if g.denom != denom:
            raise DenomMismatch("generators must share one denominator")
        if any(c < 0 or c >= denom for c in g.coords):
            raise InvalidGenerator(f"generator {g} has coordinates outside [0, r)")
        if sum(g.coords) % denom:
            raise InvalidGenerator(
                f"generator {g} violates the determinant-one condition"
            )
        cols.append(g.coords)
    h, _ = hermite_normal_form(IntMatrix.from_columns(cols))
    basis_cols = h.columns()[:n]
    assert all(not any(c) for c in h.columns()[n:]), "Hermite form left extra columns"
    basis = IntMatrix.from_columns(basis_cols)
    assert basis.det() != 0
    return ScaledLattice(n, denom, basis)


def _completion_to_basis(w: tuple[int, ...]) -> tuple[IntMatrix, IntMatrix]:
    """Unimodular ``(u, w_mat)`` with ``u * w = e_1`` and ``w_mat = u^-1``."""
    n = len(w)
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    vec = list(w)
    for i in range(1, n):
        a, b = vec[0], vec[i]
        if b == 0:
            continue
        if a == 0:
            vec[0], vec[i] = vec[i], vec[0]
            u[0], u[i] = u[i], u[0]
            continue
        g, x, y = xgcd(a, b)
        r0 = u[0][:]
        ri = u[i][:]
        u[0] = [x * s + y * t for s, t in zip(r0, ri)]
        u[i] = [-(b // g) * s + (a // g) * t for s, t in zip(r0, ri)]
        vec[0], vec[i] = g, 0
    if vec[0] < 0:
        u[0] = [-x for x in u[0]]
        vec[0] = -vec[0]
    umat = IntMatrix(u)
    return umat, umat.inverse_unimodular()


@dataclass(frozen=True)
class QuotientLattice:
    """Quotient ``N / Z*v`` identified with ``Z^(n-1)``.

    ``projection`` and ``section`` act on basis coordinates of ``N``; the
    kernel of ``projection`` is exactly the line through ``v``.
    """

    dim: int
    projection: IntMatrix
    section: IntMatrix
    ray: LatticePoint
    parent: ScaledLattice

    @cached_property
    def as_lattice(self) -> ScaledLattice:
        return ScaledLattice(self.dim, 1, IntMatrix.identity(self.dim))

    def project(self, p: LatticePoint) -> LatticePoint:
        x = self.parent.basis_coords(p)
        return LatticePoint(self.projection.mul_vec(x), 1)

    def lift(self, q: LatticePoint) -> LatticePoint:
        if q.denom != 1:
            raise DenomMismatch("quotient points have denominator 1")
        return self.parent.from_basis_coords(self.section.mul_vec(q.coords))


def quotient_by_ray(lattice: ScaledLattice, v: LatticePoint) -> QuotientLattice:
    """Projection/section pair for ``N / Z*v`` with ``v`` primitive."""
    w = lattice.basis_coords(v)
    if not lattice.is_primitive(v):
        raise NotPrimitive(f"{v} is not primitive")
    u, wmat = _completion_to_basis(w)
    n = lattice.dim
    proj = IntMatrix(u.data[1:])
    sect = IntMatrix.from_columns(wmat.columns()[1:])
    # canonicalize by a row Hermite form of the projection
    hc, vmat = hermite_normal_form(proj.transpose())
    proj_c = hc.transpose()
    sect_c = sect * vmat.inverse_unimodular().transpose()
    assert proj_c * sect_c == IntMatrix.identity(n - 1)
    assert not any(proj_c.mul_vec(w))
    return QuotientLattice(n - 1, proj_c, sect_c, v, lattice)
