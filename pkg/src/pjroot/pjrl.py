"""Projective root locus: closure of the pencil variety and its parameter slices.

The pencil polynomials q, r cut out the root locus in (x, y, k_d, k_n).  A
reduced grevlex Gröbner basis of <q, r>, homogenized in (x, y) with a new
variable z, defines its closure in the projective plane.  Fixing the gain
ratio k = k_n/k_d yields a finite set of projective points: W_0 (k = 0),
W_inf (k = infinity) and W_lambda (k = lambda).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .algebraic import AlgebraicReal, Real
from .geometry import ProjectivePoint, direction_slope
from .groebner import GrobnerBasis, buchberger
from .pencil import PENCIL_VARS, PencilPair, RationalFunction, build_pencil
from .polycore import MultiPoly, grevlex, homogenize, lex
from .solver import NotZeroDimensional, certify_point, solve_zero_dim

HOM_VARS = ("x", "y", "z", "k_d", "k_n")
XYZ = ("x", "y", "z")
LAMBDA = "lam"
SYMBOLIC_VARS = ("x", "y", "z", LAMBDA)


class DegenerateSpecialization(ValueError):
    def __init__(self):
        super().__init__("degenerate specialization")


# -- parameter values ---------------------------------------------------------------


@dataclass(frozen=True)
class ParameterValue:
    """A point k = k_n/k_d of the projective line, stored canonically."""

    k_n: Fraction
    k_d: Fraction

    def __post_init__(self):
        k_n, k_d = Fraction(self.k_n), Fraction(self.k_d)
        if k_n == 0 and k_d == 0:
            raise ValueError("k_n and k_d cannot both be zero")
        if k_d == 0:
            k_n = Fraction(1)
        else:
            k_n, k_d = k_n / k_d, Fraction(1)
        object.__setattr__(self, "k_n", k_n)
        object.__setattr__(self, "k_d", k_d)

    @classmethod
    def finite(cls, k) -> "ParameterValue":
        return cls(Fraction(k), Fraction(1))

    @classmethod
    def infinity(cls) -> "ParameterValue":
        return cls(Fraction(1), Fraction(0))

    @property
    def is_infinite(self) -> bool:
        return self.k_d == 0

    @property
    def value(self) -> Optional[Fraction]:
        return None if self.is_infinite else self.k_n

    @property
    def kind(self) -> str:
        if self.is_infinite:
            return "terminal"
        return "initial" if self.k_n == 0 else "intermediary"

    def swapped(self) -> "ParameterValue":
        """The same gain seen with the roles of k_d and k_n exchanged."""
        return ParameterValue(self.k_d, self.k_n)

    def __str__(self):
        if self.is_infinite:
            return "inf"
        from .polycore import format_rational

        return format_rational(self.k_n)


def as_parameter(k) -> ParameterValue:
    if isinstance(k, ParameterValue):
        return k
    if k is None or (isinstance(k, str) and k.lower() in ("inf", "infinity")):
        return ParameterValue.infinity()
    return ParameterValue.finite(k)


# -- closure ------------------------------------------------------------------------


@dataclass(frozen=True)
class HomogeneousSystem:
    polys: Tuple[MultiPoly, ...]
    source_basis: Optional[GrobnerBasis]
    swapped: bool = False

    @property
    def variables(self):
        return HOM_VARS

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


def pencil_basis(pair: PencilPair) -> GrobnerBasis:
    return buchberger(pair.generators(), grevlex(*PENCIL_VARS))


def _homogenize_xy(p: MultiPoly) -> MultiPoly:
    return homogenize(p.embed(PENCIL_VARS), ("x", "y"), "z").embed(HOM_VARS)


def projective_closure(pair: Union[PencilPair, RationalFunction]) -> HomogeneousSystem:
    """Homogenized reduced grevlex basis of <q, r> in x > y > k_d > k_n."""
    if isinstance(pair, RationalFunction):
        pair = build_pencil(pair)
    basis = pencil_basis(pair)
    polys = tuple(_homogenize_xy(g) for g in basis)
    return HomogeneousSystem(polys, basis, pair.swapped)


def naive_homogenization(pair: Union[PencilPair, RationalFunction]) -> HomogeneousSystem:
    """Homogenized q and r themselves; may contain points outside the closure."""
    if isinstance(pair, RationalFunction):
        pair = build_pencil(pair)
    return HomogeneousSystem(tuple(_homogenize_xy(g) for g in pair.generators()), None, pair.swapped)


def _polys_of(sys) -> List[MultiPoly]:
    return list(sys.polys) if isinstance(sys, HomogeneousSystem) else list(sys)


def specialize(sys, k, recompute: bool = False) -> List[MultiPoly]:
    """Substitute a gain into the system, giving polynomials in (x, y, z).

    ``k`` is in the pencil's own convention (k_n multiplies the lower-degree
    polynomial).  With ``recompute`` the result is replaced by its reduced
    grevlex basis in x > y > z.
    """
    k = as_parameter(k)
    out = []
    for p in _polys_of(sys):
        s = p.embed(HOM_VARS).subs({"k_n": k.k_n, "k_d": k.k_d})
        if not s.is_zero():
            out.append(s)
    if not out:
        raise DegenerateSpecialization()
    if recompute:
        out = list(buchberger(out, grevlex(*XYZ)).elements)
    else:
        out = [p.primitive() for p in out]
    return out


# -- slices -------------------------------------------------------------------------


@dataclass(frozen=True)
class Component:
    """A positive-dimensional piece of a slice, kept symbolically."""

    patch: str
    polys: Tuple[MultiPoly, ...]


@dataclass
class LocusSlice:
    k: Optional[ParameterValue]
    finite_points: List[ProjectivePoint] = field(default_factory=list)
    infinite_points: List[ProjectivePoint] = field(default_factory=list)
    components: List[Component] = field(default_factory=list)
    system: List[MultiPoly] = field(default_factory=list, repr=False)

    @property
    def kind(self) -> str:
        return self.k.kind if self.k is not None else "intermediary"

    @property
    def points(self) -> List[ProjectivePoint]:
        return self.finite_points + self.infinite_points

    @property
    def empty(self) -> bool:
        return not self.points and not self.components

    def point_set(self) -> set:
        return set(self.points)


def _solve_patch(polys: Sequence[MultiPoly], variables, patch: str, components: list):
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        components.append(Component(patch, ()))
        return []
    if any(p.is_constant() for p in polys):
        return []
    try:
        return solve_zero_dim(polys, variables)
    except NotZeroDimensional as exc:
        components.append(Component(patch, tuple(exc.basis.elements)))
        return []


def solve_slice(specialized: Sequence[MultiPoly], k=None) -> LocusSlice:
    """Real projective points of a specialized system in (x, y, z).

    Finite points come from the z = 1 chart; points at infinity from z = 0,
    first with x = 1 (points (1:m:0)) and then the single point (0:1:0).
    """
    polys = [p.embed(XYZ) for p in specialized]
    if not polys:
        raise ValueError("empty system")
    k = as_parameter(k) if k is not None else None
    components: List[Component] = []
    finite = [
        ProjectivePoint(x, y, 1)
        for x, y in _solve_patch([p.subs({"z": 1}) for p in polys], ("x", "y"), "z=1", components)
    ]
    infinite = [
        ProjectivePoint(1, y, 0)
        for (y,) in _solve_patch([p.subs({"z": 0, "x": 1}) for p in polys], ("y",), "z=0,x=1", components)
    ]
    if all(p.evaluate({"x": 0, "y": 1, "z": 0}) == 0 for p in polys):
        infinite.append(ProjectivePoint(0, 1, 0))
    finite = _dedupe(finite)
    infinite = _dedupe(infinite)
    return LocusSlice(k, finite, infinite, components, polys)


def _dedupe(points: List[ProjectivePoint]) -> List[ProjectivePoint]:
    out: List[ProjectivePoint] = []
    for p in sorted(points, key=ProjectivePoint.sort_key):
        if p not in out:
            out.append(p)
    return out


def slice_at(sys: HomogeneousSystem, k, recompute: bool = True) -> LocusSlice:
    """Slice at a gain given in the plant's convention (k multiplies n(s))."""
    user_k = as_parameter(k)
    pencil_k = user_k.swapped() if sys.swapped else user_k
    sl = solve_slice(specialize(sys, pencil_k, recompute), pencil_k)
    sl.k = user_k
    return sl


def initial_slice(sys: HomogeneousSystem) -> LocusSlice:
    return slice_at(sys, ParameterValue.finite(0))


def terminal_slice(sys: HomogeneousSystem) -> LocusSlice:
    return slice_at(sys, ParameterValue.infinity())


def slice_contains(sl_or_polys, point: ProjectivePoint) -> bool:
    """Exact membership of ``point`` in the zero set of a specialized system."""
    polys = sl_or_polys.system if isinstance(sl_or_polys, LocusSlice) else list(sl_or_polys)
    return certify_point([p.embed(XYZ) for p in polys], XYZ, point.coords)


# -- charts -------------------------------------------------------------------------


PATCH_VARS = {"z": "z", "x": "x", "y": "y", "xy": "z", "zy": "x", "xz": "y"}


@dataclass(frozen=True)
class AffineView:
    patch: str
    polys: Tuple[MultiPoly, ...]

    @property
    def variables(self):
        return self.polys[0].variables if self.polys else ()


def affine_view(sys, patch: str, k=None) -> AffineView:
    """Set the chart variable to 1, after specializing the gain if ``k`` is given.

    ``sys`` may be a :class:`HomogeneousSystem` or any list of homogeneous
    polynomials (for instance a symbolic intermediary system).
    """
    var = PATCH_VARS[patch]
    polys = specialize(sys, k) if k is not None else _polys_of(sys)
    out = []
    for p in polys:
        v = p.subs({var: 1})
        if not v.is_zero():
            out.append(v)
    return AffineView(var, tuple(out))


def swap_patch_coords(p: ProjectivePoint, patch: str) -> ProjectivePoint:
    return p.swap(PATCH_VARS[patch])


def asymptote_directions(sl: LocusSlice, patch: str = "z") -> List[Optional[Real]]:
    """Slopes of the asymptotes of a slice in the chart ``patch``.

    Points lying on the chart's line at infinity become directions; ``None``
    stands for a vertical asymptote.  Results are sorted, vertical last.
    """
    var = PATCH_VARS[patch]
    idx = XYZ.index(var)
    slopes = []
    for p in sl.points:
        c = p.coords[idx]
        if isinstance(c, AlgebraicReal) or c != 0:
            continue
        s = direction_slope(p, var)
        if s is None and None in slopes:
            continue
        if s is not None and any(t is not None and t == s for t in slopes):
            continue
        slopes.append(s)
    finite = sorted(s for s in slopes if s is not None)
    return finite + [None] * (None in slopes)


# -- symbolic gain ------------------------------------------------------------------


def symbolic_intermediary(sys: HomogeneousSystem) -> List[MultiPoly]:
    """The system with k_d = 1 and k_n = lam as a polynomial ring variable.

    Components living entirely in lam = 0 are removed by saturation, so the
    result describes the slices for nonzero lam.  Returns the reduced grevlex
    basis in x > y > z > lam.
    """
    lam = MultiPoly.variable(LAMBDA, SYMBOLIC_VARS)
    polys = []
    for p in sys.polys:
        s = p.embed(HOM_VARS).subs({"k_d": 1}).rename({"k_n": LAMBDA}).embed(SYMBOLIC_VARS)
        if not s.is_zero():
            polys.append(s)
    sat_vars = ("w",) + SYMBOLIC_VARS
    w = MultiPoly.variable("w", sat_vars)
    aux = [p.embed(sat_vars) for p in polys] + [1 - w * lam.embed(sat_vars)]
    elim = buchberger(aux, lex(*sat_vars))
    free = [g.subs({"w": 0}) for g in elim if g.degree("w") == 0]
    return list(buchberger(free, grevlex(*SYMBOLIC_VARS)).elements)


def intermediary_slice(sys: HomogeneousSystem, lam) -> LocusSlice:
    """W_lambda for a nonzero rational gain."""
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    return slice_at(sys, ParameterValue.finite(lam))
