"""Real-root machinery.

* :func:`real_roots` isolates the real roots of a univariate polynomial with
  Sturm sequences and returns them exactly (rational) or as certified
  intervals.
* :func:`solve_zero_dim` finds every real point of a zero-dimensional
  polynomial system.  The system is made radical, a separating linear form
  t is found, and each coordinate is written as a polynomial in t (the
  shape-position lex basis {x_i - a_i(t), mu(t)}).  Real points correspond
  one-to-one with the real roots of mu.
* :func:`sweep_conventional` and :func:`sweep_complementary` evaluate the
  root locus numerically over a gain grid for plotting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import univariate as U
from .algebraic import AlgebraicReal, Real, real_root
from .groebner import GrobnerBasis, buchberger
from .pencil import RationalFunction, characteristic_coeffs
from .polycore import Monomial, MultiPoly, grevlex

DEFAULT_WIDTH = Fraction(1, 10 ** 12)


class NotZeroDimensional(ValueError):
    """The system has infinitely many complex solutions."""

    def __init__(self, basis: GrobnerBasis):
        self.basis = basis
        super().__init__("polynomial system is not zero-dimensional")


@dataclass(frozen=True)
class IsolatedRoot:
    interval: Tuple[Fraction, Fraction]
    multiplicity_hint: int
    refined: float
    value: Real = field(compare=False, repr=False)

    @property
    def exact(self) -> bool:
        return not isinstance(self.value, AlgebraicReal)


def real_roots(p, width=DEFAULT_WIDTH) -> List[IsolatedRoot]:
    """All real roots of a nonzero univariate polynomial.

    ``p`` may be a :class:`MultiPoly` in one variable or a dense coefficient
    list.  Rational roots come back with a zero-width interval; irrational
    ones with an isolating interval narrower than ``width``.
    """
    coeffs = p.to_univariate() if isinstance(p, MultiPoly) else U.trim(p)
    if not coeffs:
        raise ValueError("the zero polynomial has no isolated roots")
    out = []
    for factor, mult in U.sqf_list(coeffs):
        for lo, hi in U.isolate(factor):
            v = real_root(factor, lo, hi)
            if isinstance(v, AlgebraicReal):
                v.refine(width)
                interval = (v.lo, v.hi)
            else:
                interval = (v, v)
            out.append(IsolatedRoot(interval, mult, float(v), v))
    out.sort(key=lambda r: r.interval[0])
    return out


# -- finite-dimensional quotient algebra -----------------------------------------------


class _Quotient:
    """Arithmetic in Q[vars]/I through normal forms modulo a Gröbner basis."""

    def __init__(self, basis: GrobnerBasis):
        self.basis = basis
        self.order = basis.order
        self.standard = basis.standard_monomials()
        self.dim = len(self.standard)

    def nf(self, p: MultiPoly) -> MultiPoly:
        return self.basis.reduce(p)

    def power_normal_forms(self, t: MultiPoly, count: int):
        cur = MultiPoly.constant(1, self.order.variables)
        out = [cur]
        for _ in range(count - 1):
            cur = self.nf(cur * t)
            out.append(cur)
        return out


class _Span:
    """Incremental reduced row echelon form over Q with combination tracking."""

    def __init__(self):
        self.rows: Dict[Monomial, Tuple[dict, dict]] = {}

    def _reduce(self, vec: dict, combo: dict):
        vec, combo = dict(vec), dict(combo)
        for piv, (rv, rc) in self.rows.items():
            c = vec.get(piv)
            if not c:
                continue
            f = c / rv[piv]
            for m, v in rv.items():
                nv = vec.get(m, 0) - f * v
                if nv:
                    vec[m] = nv
                else:
                    vec.pop(m, None)
            for j, v in rc.items():
                nv = combo.get(j, 0) - f * v
                if nv:
                    combo[j] = nv
                else:
                    combo.pop(j, None)
        return vec, combo

    def add(self, vec: dict, label) -> Optional[dict]:
        """Insert ``vec``; returns the dependency combination if it is dependent."""
        vec, combo = self._reduce(vec, {label: Fraction(1)})
        if not vec:
            return combo
        piv = next(iter(vec))
        for p2, (rv, rc) in list(self.rows.items()):
            c = rv.get(piv)
            if c:
                f = c / vec[piv]
                nv_ = {m: rv.get(m, 0) - f * vec.get(m, 0) for m in set(rv) | set(vec)}
                nc_ = {j: rc.get(j, 0) - f * combo.get(j, 0) for j in set(rc) | set(combo)}
                self.rows[p2] = ({m: v for m, v in nv_.items() if v}, {j: v for j, v in nc_.items() if v})
        self.rows[piv] = (vec, combo)
        return None

    def express(self, vec: dict) -> dict:
        """Coefficients c_j with vec = sum c_j * (inserted vector j)."""
        rest, combo = self._reduce(vec, {})
        if rest:
            raise ArithmeticError("vector is not in the span")
        return {j: -c for j, c in combo.items()}


def _minimal_polynomial(Q: _Quotient, t: MultiPoly) -> U.UPoly:
    span = _Span()
    cur = MultiPoly.constant(1, Q.order.variables)
    for k in range(Q.dim + 1):
        dep = span.add(dict(cur.items()), k)
        if dep is not None:
            return U.trim([dep.get(j, 0) for j in range(k + 1)])
        cur = Q.nf(cur * t)
    raise ArithmeticError("no linear dependency found")  # pragma: no cover


def _separating_forms(n: int):
    """Candidate linear forms (1, c, c^2, ...) for c = 1, -1, 2, -2, ..."""
    c = 1
    while True:
        for cc in (c, -c):
            yield tuple(cc ** i for i in range(n))
        c += 1


def _radical_basis(polys: Sequence[MultiPoly], variables) -> Tuple[GrobnerBasis, List[U.UPoly]]:
    order = grevlex(*variables)
    G = buchberger(polys, order)
    if G.is_unit():
        return G, []
    if not G.is_zero_dimensional():
        raise NotZeroDimensional(G)
    Q = _Quotient(G)
    eliminants = []
    extra = []
    for v in variables:
        mu = _minimal_polynomial(Q, MultiPoly.variable(v, variables))
        sq = U.sqf_part(mu)
        eliminants.append(sq)
        if U.degree(sq) < U.degree(mu):
            extra.append(MultiPoly({tuple(i if j == variables.index(v) else 0 for j in range(len(variables))): c
                                    for i, c in enumerate(sq)}, variables))
    if extra:
        G = buchberger(list(G.elements) + extra, order)
    return G, eliminants


def _eval_interval_multi(coeffs: U.UPoly, t: Real, width) -> Tuple[Fraction, Fraction]:
    if isinstance(t, AlgebraicReal):
        lo, hi = t.interval(width)
        return U.eval_interval(coeffs, lo, hi)
    v = U.evaluate(coeffs, t)
    return v, v


def solve_zero_dim(system: Sequence[MultiPoly], variables: Sequence[str] = None) -> List[Tuple[Real, ...]]:
    """All real solutions of a zero-dimensional system, exactly.

    Coordinates are ``Fraction`` when rational and :class:`AlgebraicReal`
    otherwise.  Raises :class:`NotZeroDimensional` (carrying the Gröbner
    basis) when the complex solution set is infinite.
    """
    system = list(system)
    if variables is None:
        variables = system[0].variables if system else ()
    variables = tuple(variables)
    polys = [p.embed(variables) for p in system if not p.is_zero()]
    if not variables:
        return [] if any(polys) else [()]
    if not polys:
        raise NotZeroDimensional(GrobnerBasis((), grevlex(*variables)))
    G, eliminants = _radical_basis(polys, variables)
    if G.is_unit():
        return []
    Q = _Quotient(G)
    n = len(variables)
    gens = [MultiPoly.variable(v, variables) for v in variables]
    for form in _separating_forms(n):
        t = sum((g * c for g, c in zip(gens, form)), MultiPoly.zero(variables))
        mu = _minimal_polynomial(Q, t)
        if U.degree(mu) == Q.dim:
            break
    # express each coordinate as a polynomial in t
    span = _Span()
    for k, pw in enumerate(Q.power_normal_forms(t, Q.dim)):
        span.add(dict(pw.items()), k)
    coord_polys = []
    for g in gens:
        combo = span.express(dict(Q.nf(g).items()))
        coord_polys.append(U.trim([combo.get(k, 0) for k in range(Q.dim)]))
    coord_roots = [[(lo, hi) for lo, hi in U.isolate(e)] for e in eliminants]
    points = []
    for lo, hi in U.isolate(mu):
        t0 = real_root(mu, lo, hi)
        coords = []
        for i, a in enumerate(coord_polys):
            if not isinstance(t0, AlgebraicReal):
                coords.append(Fraction(U.evaluate(a, t0)))
                continue
            coords.append(_identify(a, t0, eliminants[i], coord_roots[i]))
        points.append(tuple(coords))
    points.sort(key=lambda p: tuple(float(c) for c in p))
    return points


def _identify(a: U.UPoly, t0: AlgebraicReal, elim: U.UPoly, roots) -> Real:
    """Value a(t0) located among the isolated real roots of ``elim``."""
    width = (t0.hi - t0.lo)
    while True:
        elo, ehi = _eval_interval_multi(a, t0, width)
        hits = [
            (lo, hi) for lo, hi in roots
            if (lo == hi and elo <= lo <= ehi) or (lo != hi and elo < hi and ehi > lo)
        ]
        if len(hits) == 1:
            lo, hi = hits[0]
            return real_root(elim, lo, hi)
        if not hits:
            raise ArithmeticError("coordinate enclosure misses every root")  # pragma: no cover
        width = width / 16
        # refine overlapping isolating intervals too so neighbours separate
        roots = [U.refine(elim, lo, hi, max((hi - lo) / 4, Fraction(0))) if lo != hi else (lo, hi)
                 for lo, hi in roots]


def certify_point(system: Sequence[MultiPoly], variables: Sequence[str], point: Sequence[Real],
                  width=Fraction(1, 10 ** 15)) -> bool:
    """Check that every polynomial vanishes at ``point``.

    Exact for rational points; for algebraic coordinates, checks that zero
    lies in an interval enclosure of each polynomial.
    """
    variables = tuple(variables)
    if all(not isinstance(c, AlgebraicReal) for c in point):
        vals = dict(zip(variables, point))
        return all(p.embed(variables).evaluate(vals) == 0 for p in system)
    boxes = {}
    for v, c in zip(variables, point):
        if isinstance(c, AlgebraicReal):
            boxes[v] = c.interval(width)
        else:
            boxes[v] = (Fraction(c), Fraction(c))
    for p in system:
        lo, hi = _eval_box(p.embed(variables), variables, boxes)
        if lo > 0 or hi < 0:
            return False
    return True


def _eval_box(p: MultiPoly, variables, boxes):
    lo_total = hi_total = Fraction(0)
    for m, c in p.items():
        tlo = thi = Fraction(c)
        for v, e in zip(variables, m):
            for _ in range(e):
                blo, bhi = boxes[v]
                prods = (tlo * blo, tlo * bhi, thi * blo, thi * bhi)
                tlo, thi = min(prods), max(prods)
        lo_total += tlo
        hi_total += thi
    return lo_total, hi_total


# -- numeric sweeps ------------------------------------------------------------------


@dataclass(frozen=True)
class SweepPoint:
    k: Fraction
    roots: Tuple[Tuple[float, float], ...]
    degree_drop: bool = False


def default_k_grid(samples: int = 400, lo: float = 1e-3, hi: float = 1e3) -> List[Fraction]:
    """Zero plus logarithmically spaced gains of both signs (``samples`` values)."""
    if samples < 2:
        raise ValueError("need at least two samples")
    n_pos = samples // 2
    n_neg = samples - 1 - n_pos
    pos = np.geomspace(lo, hi, n_pos) if n_pos else []
    neg = np.geomspace(lo, hi, n_neg) if n_neg else []
    grid = [-Fraction(float(v)).limit_denominator(10 ** 12) for v in reversed(neg)]
    grid.append(Fraction(0))
    grid.extend(Fraction(float(v)).limit_denominator(10 ** 12) for v in pos)
    return grid


def linear_k_grid(k_min, k_max, samples: int) -> List[Fraction]:
    k_min, k_max = Fraction(k_min), Fraction(k_max)
    if samples < 2 or not k_min < k_max:
        raise ValueError("need samples >= 2 and k_min < k_max")
    step = (k_max - k_min) / (samples - 1)
    return [k_min + i * step for i in range(samples)]


def _polish(coeffs_desc: np.ndarray, roots: np.ndarray) -> np.ndarray:
    deriv = np.polyder(coeffs_desc)
    out = roots.copy()
    for i, r in enumerate(roots):
        best, best_res = r, abs(np.polyval(coeffs_desc, r))
        cur = r
        for _ in range(3):
            d = np.polyval(deriv, cur)
            if d == 0:
                break
            cur = cur - np.polyval(coeffs_desc, cur) / d
            res = abs(np.polyval(coeffs_desc, cur))
            if res < best_res:
                best, best_res = cur, res
        out[i] = best
    return out


def numeric_roots(coeffs: Sequence[Fraction]) -> List[Tuple[float, float]]:
    """All complex roots of a univariate polynomial (lowest degree first) as (Re, Im)."""
    coeffs = U.trim(coeffs)
    if U.degree(coeffs) < 1:
        return []
    desc = np.array([float(c) for c in reversed(coeffs)])
    roots = np.roots(desc)
    roots = _polish(desc, roots.astype(complex))
    # conjugate-symmetrise: real polynomials have conjugate root pairs
    out = []
    for r in roots:
        x, y = float(r.real), float(r.imag)
        if abs(y) < 1e-14 * max(1.0, abs(x)):
            y = 0.0
        out.append((x + 0.0, y + 0.0))
    out.sort()
    return out


def sweep_conventional(G: RationalFunction, k_grid: Sequence) -> List[SweepPoint]:
    """Closed-loop poles (roots of d + k n) for every gain in ``k_grid``."""
    n_deg, d_deg = G.degrees()
    full = max(n_deg, d_deg)
    out = []
    for k in k_grid:
        k = Fraction(k)
        coeffs = characteristic_coeffs(G, k)
        drop = U.degree(coeffs) < full
        out.append(SweepPoint(k, tuple(numeric_roots(coeffs)), drop))
    return out


def residual(G: RationalFunction, k, root: Tuple[float, float]) -> float:
    coeffs = characteristic_coeffs(G, k)
    desc = [float(c) for c in reversed(coeffs)]
    return abs(np.polyval(desc, complex(*root)))


BLOW_UP = 1e-9


def patch_image(x: float, y: float, patch: str):
    """Image of the affine point (x:y:1) in another chart, or None at infinity.

    ``zy`` is the x = 1 chart with coordinates (z, y); ``xz`` the y = 1 chart
    with coordinates (x, z).
    """
    if patch == "xy":
        return (x, y)
    if patch == "zy":
        if abs(x) < BLOW_UP:
            return None
        return (1.0 / x, y / x)
    if patch == "xz":
        if abs(y) < BLOW_UP:
            return None
        return (x / y, 1.0 / y)
    raise ValueError(f"unknown patch {patch!r}")


@dataclass(frozen=True)
class ComplementarySample:
    k: Fraction
    images: Tuple[Optional[Tuple[float, float]], ...]

    @property
    def points(self) -> List[Tuple[float, float]]:
        return [p for p in self.images if p is not None]

    @property
    def blow_up(self) -> List[bool]:
        return [p is None for p in self.images]


def sweep_complementary(sweep: Sequence[SweepPoint], patch: str = "zy") -> List[ComplementarySample]:
    """Map each sweep root (x, y) to the x = 1 chart: (z, y') = (1/x, y/x)."""
    return [
        ComplementarySample(sp.k, tuple(patch_image(x, y, patch) for x, y in sp.roots))
        for sp in sweep
    ]


def track_branches(sweep: Sequence[SweepPoint]) -> List[List[int]]:
    """Branch id for every root of every sample (empty for degree-drop samples).

    Consecutive samples are matched by minimum total distance; a root that
    cannot be matched starts a new branch.
    """
    from scipy.optimize import linear_sum_assignment

    ids: List[List[int]] = []
    prev_roots = None
    prev_ids = None
    next_id = 0
    for sp in sweep:
        roots = np.array(sp.roots, dtype=float).reshape(-1, 2)
        if sp.degree_drop:
            ids.append([])
            continue
        if prev_roots is None or len(prev_roots) == 0:
            cur = list(range(next_id, next_id + len(roots)))
            next_id += len(roots)
        else:
            cost = np.linalg.norm(prev_roots[:, None, :] - roots[None, :, :], axis=2)
            rows, cols = linear_sum_assignment(cost)
            cur = [-1] * len(roots)
            for r, c in zip(rows, cols):
                cur[c] = prev_ids[r]
            for i, v in enumerate(cur):
                if v < 0:
                    cur[i] = next_id
                    next_id += 1
        ids.append(cur)
        prev_roots, prev_ids = roots, cur
    return ids


def max_real_part(G: RationalFunction, k) -> Optional[float]:
    roots = numeric_roots(characteristic_coeffs(G, k))
    return max(x for x, _ in roots) if roots else None


def axis_crossings(G: RationalFunction, k_values: Sequence, tol: float = 1e-9) -> List[float]:
    """Gains where the rightmost closed-loop pole crosses Re = 0.

    Scans ``k_values`` (sorted) for a sign change of the largest real part
    and refines each bracket by bisection.  Degree-drop gains are skipped.
    """
    ks = sorted(float(k) for k in k_values)
    samples = [(k, max_real_part(G, Fraction(k))) for k in ks]
    samples = [(k, v) for k, v in samples if v is not None]
    out = []
    for (a, fa), (b, fb) in zip(samples, samples[1:]):
        if fa == 0:
            out.append(a)
            continue
        if fa * fb >= 0:
            continue
        lo, hi, flo = a, b, fa
        while hi - lo > tol * max(1.0, abs(lo)):
            mid = (lo + hi) / 2
            fm = max_real_part(G, Fraction(mid))
            if fm is None:
                break
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        out.append((lo + hi) / 2)
    if samples and samples[-1][1] == 0:
        out.append(samples[-1][0])
    return out


def imaginary_axis_crossings(G: RationalFunction, k_lo, k_hi, samples: int = 200,
                             tol: float = 1e-9) -> List[float]:
    """Axis crossings for gains in [k_lo, k_hi] on a uniform scan."""
    return axis_crossings(G, np.linspace(float(k_lo), float(k_hi), samples), tol)
