"""Projective points and the gnomonic lift onto the unit semi-sphere."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .algebraic import AlgebraicReal, Real

EQUATOR_TOL = 1e-12


def _is_zero(c) -> bool:
    return not isinstance(c, AlgebraicReal) and c == 0


def _as_real(c) -> Real:
    if isinstance(c, AlgebraicReal):
        return c
    if isinstance(c, float):
        raise TypeError("projective coordinates must be exact")
    return Fraction(c)


def _divide(a: Real, b: Real) -> Real:
    if _is_zero(a):
        return Fraction(0)
    if isinstance(a, AlgebraicReal) or isinstance(b, AlgebraicReal):
        if a is b or (isinstance(a, AlgebraicReal) and isinstance(b, AlgebraicReal) and a == b):
            return Fraction(1)
        return a / b
    return a / b


def normalize(coords) -> Tuple[Real, Real, Real]:
    """Canonical representative of (x:y:z).

    Divides by z when z != 0; otherwise by x when x != 0, giving (1:m:0);
    otherwise the point is (0:1:0).
    """
    x, y, z = (_as_real(c) for c in coords)
    if not _is_zero(z):
        return _divide(x, z), _divide(y, z), Fraction(1)
    if not _is_zero(x):
        return Fraction(1), _divide(y, x), Fraction(0)
    if not _is_zero(y):
        return Fraction(0), Fraction(1), Fraction(0)
    raise ValueError("(0:0:0) is not a projective point")


class ProjectivePoint:
    """A point of the real projective plane with exact coordinates."""

    __slots__ = ("coords",)

    def __init__(self, x, y, z):
        self.coords = normalize((x, y, z))

    @classmethod
    def affine(cls, x, y) -> "ProjectivePoint":
        return cls(x, y, 1)

    @property
    def x(self):
        return self.coords[0]

    @property
    def y(self):
        return self.coords[1]

    @property
    def z(self):
        return self.coords[2]

    @property
    def at_infinity(self) -> bool:
        return _is_zero(self.coords[2])

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(c, AlgebraicReal) for c in self.coords)

    def floats(self) -> Tuple[float, float, float]:
        return tuple(float(c) for c in self.coords)

    def swap(self, patch: str) -> "ProjectivePoint":
        """Exchange z with the coordinate named by ``patch`` ('x' or 'y')."""
        x, y, z = self.coords
        if patch == "x":
            return ProjectivePoint(z, y, x)
        if patch == "y":
            return ProjectivePoint(x, z, y)
        raise ValueError(f"unknown patch {patch!r}")

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return all(_real_eq(a, b) for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash(tuple(math.floor(c) for c in self.coords))

    def sort_key(self):
        return (float(self.z) == 0,) + self.floats()

    def __repr__(self):
        return "(" + ":".join(_fmt(c) for c in self.coords) + ")"


def _real_eq(a, b) -> bool:
    if isinstance(a, AlgebraicReal) or isinstance(b, AlgebraicReal):
        if isinstance(a, AlgebraicReal):
            return a == b
        return b == a
    return a == b


def _fmt(c) -> str:
    if isinstance(c, AlgebraicReal):
        return f"~{float(c):.12g}"
    return str(c)


def swap_patch_coords(p: ProjectivePoint, patch: str) -> ProjectivePoint:
    return p.swap(patch)


@dataclass(frozen=True)
class SpherePoint:
    X: float
    Y: float
    Z: float

    def as_list(self):
        return [self.X, self.Y, self.Z]


def _canonical_sign(x: float, y: float, z: float) -> int:
    if abs(z) > EQUATOR_TOL:
        return 1 if z > 0 else -1
    if abs(x) > EQUATOR_TOL:
        return 1 if x > 0 else -1
    return 1 if y > 0 else -1


def gnomonic_lift(p) -> SpherePoint:
    """The upper-hemisphere unit vector on the ray through (x, y, z).

    Points on the equator are represented with X > 0, or X = 0 and Y > 0.
    """
    if not isinstance(p, ProjectivePoint):
        p = ProjectivePoint(*p)
    x, y, z = p.floats()
    n = math.sqrt(x * x + y * y + z * z)
    x, y, z = x / n, y / n, z / n
    s = _canonical_sign(x, y, z)
    return SpherePoint(s * x + 0.0, s * y + 0.0, s * z + 0.0)


def lift_float(x: float, y: float, z: float = 1.0) -> SpherePoint:
    """Gnomonic lift of a float triple (used for sweep polylines)."""
    n = math.sqrt(x * x + y * y + z * z)
    if n == 0:
        raise ValueError("(0:0:0) is not a projective point")
    x, y, z = x / n, y / n, z / n
    s = _canonical_sign(x, y, z)
    return SpherePoint(s * x + 0.0, s * y + 0.0, s * z + 0.0)


@dataclass(frozen=True)
class AtInfinity:
    direction: Tuple[float, float]


def gnomonic_project(sp: SpherePoint):
    """(X/Z, Y/Z), or :class:`AtInfinity` for equatorial points."""
    if sp.Z > EQUATOR_TOL:
        return (sp.X / sp.Z, sp.Y / sp.Z)
    return AtInfinity((sp.X, sp.Y))


def direction_slope(p: ProjectivePoint, patch: str = "z") -> Optional[Real]:
    """Slope of the asymptote an infinite point of ``patch`` represents.

    Returns None for a vertical direction.  In the z = 1 chart the infinite
    points are (1:m:0) and (0:1:0); in the x = 1 chart (coordinates z, y)
    they are points with x = 0; in the y = 1 chart (coordinates x, z) those
    with y = 0.
    """
    x, y, z = p.coords
    if patch == "z":
        a, b = x, y
    elif patch == "x":
        a, b = z, y
    elif patch == "y":
        a, b = x, z
    else:
        raise ValueError(f"unknown patch {patch!r}")
    if _is_zero(a):
        return None
    return _divide(b, a)
