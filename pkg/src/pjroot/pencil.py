"""Transfer functions and the real pencil polynomials q, r.

Writing s = x + iy turns k_d d(s) + k_n n(s) = 0 into two real equations

    q = k_d q_d(x, y) + k_n q_n(x, y) = 0
    r = k_d r_d(x, y) + k_n r_n(x, y) = 0

where q_d + i r_d = d(x + iy) and q_n + i r_n = n(x + iy).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from . import univariate as U
from .polycore import MultiPoly

S_VAR = ("s",)
XY = ("x", "y")
PENCIL_VARS = ("x", "y", "k_d", "k_n")


class NotCoprimeError(ValueError):
    """Numerator and denominator share a non-constant factor."""

    def __init__(self, factor: MultiPoly):
        self.factor = factor
        super().__init__(f"numerator and denominator share the factor {factor}")


def _upoly(p: MultiPoly):
    return p.to_univariate("s") if p.variables == S_VAR else p.embed(S_VAR).to_univariate("s")


def common_factor(n: MultiPoly, d: MultiPoly) -> MultiPoly:
    """Monic gcd of two univariate polynomials in s."""
    return MultiPoly.from_univariate(U.gcd_(_upoly(n), _upoly(d)), "s")


def coprimality_check(n: MultiPoly, d: MultiPoly) -> bool:
    """True iff gcd(n, d) is a nonzero constant."""
    if d.is_zero():
        raise ValueError("denominator must be nonzero")
    return U.degree(U.gcd_(_upoly(n), _upoly(d))) == 0


@dataclass(frozen=True)
class RationalFunction:
    """G(s) = num(s)/den(s) with coprime parts and monic denominator."""

    num: MultiPoly
    den: MultiPoly

    def __post_init__(self):
        num = self.num.embed(S_VAR)
        den = self.den.embed(S_VAR)
        if den.is_zero():
            raise ValueError("denominator is zero")
        if num.is_zero():
            raise ValueError("numerator is zero")
        if not coprimality_check(num, den):
            raise NotCoprimeError(common_factor(num, den))
        lead = den.to_univariate("s")[-1]
        object.__setattr__(self, "num", num.scale(1 / lead))
        object.__setattr__(self, "den", den.scale(1 / lead))

    @classmethod
    def from_coefficients(cls, num, den) -> "RationalFunction":
        """Build from dense coefficient lists, lowest degree first."""
        return cls(MultiPoly.from_univariate(num, "s"), MultiPoly.from_univariate(den, "s"))

    @property
    def num_coeffs(self):
        return self.num.to_univariate("s")

    @property
    def den_coeffs(self):
        return self.den.to_univariate("s")

    def degrees(self) -> Tuple[int, int]:
        return U.degree(self.num_coeffs), U.degree(self.den_coeffs)

    def __str__(self):
        return f"({self.num})/({self.den})"


def complex_split(p: MultiPoly) -> Tuple[MultiPoly, MultiPoly]:
    """Real and imaginary parts of p(x + iy) as polynomials in (x, y)."""
    coeffs = _upoly(p)
    x = MultiPoly.variable("x", XY)
    y = MultiPoly.variable("y", XY)
    re = MultiPoly.zero(XY)
    im = MultiPoly.zero(XY)
    for c in reversed(coeffs):
        # (re + i im)(x + i y) + c
        re, im = re * x - im * y + c, re * y + im * x
    return re, im


@dataclass(frozen=True)
class PencilPair:
    q: MultiPoly
    r: MultiPoly
    q_d: MultiPoly
    r_d: MultiPoly
    q_n: MultiPoly
    r_n: MultiPoly
    swapped: bool = False

    @property
    def parts(self):
        return {"q_d": self.q_d, "r_d": self.r_d, "q_n": self.q_n, "r_n": self.r_n}

    def generators(self):
        return [self.q, self.r]


def build_pencil(G: RationalFunction) -> PencilPair:
    """The pencil polynomials q and r in (x, y, k_d, k_n).

    When deg(num) > deg(den) the roles of k_d and k_n are exchanged, so the
    polynomial carrying k_d is always the one of higher degree; ``swapped``
    records this so that k = 0 and k = infinity can be relabelled.
    """
    n_deg, d_deg = G.degrees()
    d, n = G.den, G.num
    swapped = n_deg > d_deg
    if swapped:
        d, n = n, d
    q_d, r_d = complex_split(d)
    q_n, r_n = complex_split(n)
    kd = MultiPoly.variable("k_d", PENCIL_VARS)
    kn = MultiPoly.variable("k_n", PENCIL_VARS)

    def lift(p):
        return p.embed(PENCIL_VARS)

    q = kd * lift(q_d) + kn * lift(q_n)
    r = kd * lift(r_d) + kn * lift(r_n)
    return PencilPair(q, r, q_d, r_d, q_n, r_n, swapped)


def characteristic_coeffs(G: RationalFunction, k) -> list:
    """Coefficients of d(s) + k n(s), lowest degree first (exact)."""
    k = Fraction(k)
    return U.add(G.den_coeffs, U.scale(G.num_coeffs, k))
