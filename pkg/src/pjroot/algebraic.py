"""Exact real algebraic numbers: a defining polynomial plus an isolating interval.

Only irrational numbers are represented by :class:`AlgebraicReal`; every
constructor returns a plain ``Fraction`` when the value turns out rational,
so coordinates are always either ``Fraction`` or ``AlgebraicReal``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, floor
from typing import List, Sequence, Union

from . import univariate as U

Real = Union[Fraction, "AlgebraicReal"]


def _without_rational_roots(p: U.UPoly) -> U.UPoly:
    p = U.sqf_part(p)
    for lo, hi in U.isolate(p):
        r = U.rational_root_in(p, lo, hi)
        if r is not None:
            p = U.exact_div(p, [-r, Fraction(1)])
    return U.primitive(p)


def real_root(poly: Sequence, lo, hi) -> Real:
    """The unique root of ``poly`` in [lo, hi] as an exact real.

    ``(lo, hi)`` must isolate a single root (as produced by
    :func:`univariate.isolate`).
    """
    p = U.sqf_part(U.trim(poly))
    lo, hi = Fraction(lo), Fraction(hi)
    if lo == hi:
        return lo
    r = U.rational_root_in(p, lo, hi)
    if r is not None:
        return r
    q = _without_rational_roots(p)
    return AlgebraicReal(q, lo, hi)


def real_roots_of(poly: Sequence) -> List[Real]:
    p = U.sqf_part(U.trim(poly))
    return [real_root(p, lo, hi) for lo, hi in U.isolate(p)]


class AlgebraicReal:
    """An irrational real root of a square-free integer polynomial."""

    __slots__ = ("poly", "lo", "hi", "_seq")

    def __init__(self, poly: Sequence, lo: Fraction, hi: Fraction):
        self.poly = U.primitive(U.trim(poly))
        self.lo = Fraction(lo)
        self.hi = Fraction(hi)
        self._seq = None
        if self.lo >= self.hi:
            raise ValueError("isolating interval must be non-degenerate")
        if U.evaluate(self.poly, self.lo) * U.evaluate(self.poly, self.hi) >= 0:
            raise ValueError("interval does not bracket a sign change")

    # -- refinement ------------------------------------------------------------------

    def refine(self, width) -> "AlgebraicReal":
        """Shrink the isolating interval below ``width`` (in place) and return self."""
        lo, hi = U.refine(self.poly, self.lo, self.hi, Fraction(width))
        if lo == hi:  # impossible for a rational-root-free polynomial
            raise ArithmeticError("irrational number hit an exact root")
        self.lo, self.hi = lo, hi
        return self

    def interval(self, width=None):
        if width is not None:
            self.refine(width)
        return self.lo, self.hi

    def __float__(self):
        scale = max(abs(self.lo), abs(self.hi), Fraction(1))
        self.refine(scale * Fraction(1, 2 ** 60))
        return float((self.lo + self.hi) / 2)

    def sign(self) -> int:
        while self.lo < 0 < self.hi:
            self.refine((self.hi - self.lo) / 2)
        return 1 if self.lo >= 0 else -1

    def __floor__(self):
        while floor(self.lo) != floor(self.hi) or self.hi == floor(self.hi):
            self.refine((self.hi - self.lo) / 2)
        return floor(self.lo)

    @property
    def degree(self) -> int:
        return U.degree(self.poly)

    # -- comparison --------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return False
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        if self is other:
            return True
        g = U.gcd_(self.poly, other.poly)
        if U.degree(g) < 1:
            return False
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo >= hi:
            return False
        # g is square-free; a common root lies in both intervals iff g changes sign on the overlap
        roots = U.isolate(g, lo, hi)
        return len(roots) > 0

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash(("algebraic", floor(self)))

    def _cmp(self, other) -> int:
        if self == other:
            return 0
        other_lo, other_hi = _bounds(other)
        while True:
            if self.hi < other_lo or (self.hi == other_lo and other_lo != other_hi):
                return -1
            if self.lo > other_hi or (self.lo == other_hi and other_lo != other_hi):
                return 1
            if self.hi <= other_lo:
                return -1
            if self.lo >= other_hi:
                return 1
            self.refine((self.hi - self.lo) / 2)
            if isinstance(other, AlgebraicReal):
                other.refine((other.hi - other.lo) / 2)
                other_lo, other_hi = other.lo, other.hi

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- arithmetic --------------------------------------------------------------------

    def __neg__(self):
        n = U.degree(self.poly)
        flipped = [c if (n - i) % 2 == 0 else -c for i, c in enumerate(self.poly)]
        return AlgebraicReal(flipped, -self.hi, -self.lo)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _affine(self, a: Fraction, b: Fraction) -> Real:
        """a*self + b for rational a != 0."""
        if a == 0:
            return Fraction(b)
        # t = a*x + b  <=>  x = (t - b)/a
        q = U.compose_linear(self.poly, 1 / a, -b / a)
        lo, hi = sorted((a * self.lo + b, a * self.hi + b))
        return AlgebraicReal(q, lo, hi)

    def reciprocal(self) -> "AlgebraicReal":
        self.sign()  # pushes 0 out of the interval
        q = U.reverse(self.poly)
        lo, hi = sorted((1 / self.lo, 1 / self.hi))
        return AlgebraicReal(q, lo, hi)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._affine(Fraction(1), Fraction(other))
        if isinstance(other, AlgebraicReal):
            return _combine(self, other, "+")
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, AlgebraicReal)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._affine(Fraction(other), Fraction(0))
        if isinstance(other, AlgebraicReal):
            return _combine(self, other, "*")
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self._affine(1 / Fraction(other), Fraction(0))
        if isinstance(other, AlgebraicReal):
            return _combine(self, other.reciprocal(), "*")
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.reciprocal() * other
        return NotImplemented

    # -- presentation ----------------------------------------------------------------

    def defining_polynomial(self, var: str = "x") -> str:
        return U.to_string(self.poly, var)

    def descriptor(self, var: str = "x", width=Fraction(1, 10 ** 12)) -> dict:
        from .polycore import format_rational

        self.refine(width)
        return {
            "poly": self.defining_polynomial(var),
            "interval": [format_rational(self.lo), format_rational(self.hi)],
            "float": float(self),
        }

    def __repr__(self):
        return f"AlgebraicReal({self.defining_polynomial('t')}, ~{float(self):.12g})"


def _bounds(v):
    if isinstance(v, AlgebraicReal):
        return v.lo, v.hi
    v = Fraction(v)
    return v, v


def is_rational(v) -> bool:
    return not isinstance(v, AlgebraicReal)


def to_float(v) -> float:
    return float(v)


def sign(v) -> int:
    if isinstance(v, AlgebraicReal):
        return v.sign()
    return (v > 0) - (v < 0)


# -- resultant-based combination of two algebraic numbers --------------------------------
#
# Coefficients of the bivariate polynomials are dense polynomials in t (UPoly),
# the outer list indexes powers of s.


def _bi_trim(p):
    p = [U.trim(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def _resultant_s(f, g) -> U.UPoly:
    """Res_s(f, g) for f, g in Q[t][s] via a fraction-free Sylvester determinant."""
    f, g = _bi_trim(f), _bi_trim(g)
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for i in range(n):
        row = [[] for _ in range(size)]
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [[] for _ in range(size)]
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return _bareiss_det(rows)


def _bareiss_det(a) -> U.UPoly:
    a = [list(r) for r in a]
    n = len(a)
    sign = 1
    prev: U.UPoly = [Fraction(1)]
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return []
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = U.sub(U.mul(a[i][j], a[k][k]), U.mul(a[i][k], a[k][j]))
                a[i][j] = U.exact_div(num, prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return U.scale(det, sign) if det else []


def _combine(a: AlgebraicReal, b: AlgebraicReal, op: str) -> Real:
    m = U.degree(b.poly)
    f = [[c] for c in a.poly]  # p(s), constant in t
    if op == "+":
        # q(t - s) = sum_k q_k (t - s)^k, collected by powers of s
        g = [[] for _ in range(m + 1)]
        for k, qk in enumerate(b.poly):
            for j in range(k + 1):
                coef = qk * comb(k, j) * (-1) ** j
                tpow = [Fraction(0)] * (k - j) + [coef]
                g[j] = U.add(g[j], tpow)
    else:
        # s^m q(t/s) = sum_k q_k t^k s^(m-k)
        g = [[] for _ in range(m + 1)]
        for k, qk in enumerate(b.poly):
            g[m - k] = U.add(g[m - k], [Fraction(0)] * k + [qk])
    res = _resultant_s(f, g)
    res = U.sqf_part(res)
    while True:
        if op == "+":
            lo, hi = a.lo + b.lo, a.hi + b.hi
        else:
            prods = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
            lo, hi = min(prods), max(prods)
        found = U.isolate(res, lo, hi)
        if len(found) == 1:
            rlo, rhi = found[0]
            return real_root(res, rlo, rhi)
        a.refine((a.hi - a.lo) / 4)
        b.refine((b.hi - b.lo) / 4)


def value_of(poly_coeffs: Sequence, lo, hi) -> Real:
    """Convenience wrapper around :func:`real_root` accepting any numbers."""
    return real_root([Fraction(c) for c in poly_coeffs], Fraction(lo), Fraction(hi))


def approx_interval(v: Real, width) -> tuple:
    if isinstance(v, AlgebraicReal):
        return v.interval(width)
    return Fraction(v), Fraction(v)
