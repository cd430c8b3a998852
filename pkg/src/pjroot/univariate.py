"""Dense univariate polynomials over Q and Sturm-sequence root isolation.

A polynomial is a list of ``Fraction`` coefficients, lowest degree first,
with no trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from fractions import Fraction
from math import floor, gcd
from typing import List, Sequence, Tuple

UPoly = List[Fraction]


def trim(p: Sequence) -> UPoly:
    p = [Fraction(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def degree(p: UPoly) -> int:
    return len(p) - 1


def add(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def scale(a: UPoly, c) -> UPoly:
    return trim([x * c for x in a])


def divmod_(a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(r) >= len(b) and r:
        c = r[-1] / lead
        k = len(r) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            r[k + i] -= c * y
        r = trim(r)
    return trim(q), r


def exact_div(a: UPoly, b: UPoly) -> UPoly:
    q, r = divmod_(a, b)
    if r:
        raise ArithmeticError("division is not exact")
    return q


def monic(p: UPoly) -> UPoly:
    return [c / p[-1] for c in p] if p else []


def gcd_(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd by the Euclidean algorithm (``[]`` if both are zero)."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def derivative(p: UPoly) -> UPoly:
    return trim([c * i for i, c in enumerate(p)][1:])


def evaluate(p: UPoly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose_linear(p: UPoly, a, b) -> UPoly:
    """p(a*t + b) as a polynomial in t."""
    out: UPoly = []
    lin = trim([b, a])
    for c in reversed(p):
        out = add(mul(out, lin), [c])
    return out


def reverse(p: UPoly) -> UPoly:
    """t^n p(1/t)."""
    return trim(list(reversed(p)))


def primitive(p: UPoly) -> UPoly:
    """Integer coefficients with content 1 and positive leading coefficient."""
    if not p:
        return []
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if ints[-1] < 0:
        g = -g
    return [Fraction(v // g) for v in ints]


def sqf_part(p: UPoly) -> UPoly:
    if degree(p) <= 0:
        return monic(p)
    return monic(exact_div(p, gcd_(p, derivative(p))))


def sqf_list(p: UPoly) -> List[Tuple[UPoly, int]]:
    """Yun's square-free decomposition: monic factors with multiplicities."""
    p = trim(p)
    if degree(p) <= 0:
        return []
    out = []
    dp = derivative(p)
    a = gcd_(p, dp)
    b = exact_div(p, a)
    c = exact_div(dp, a)
    d = sub(c, derivative(b))
    i = 1
    while degree(b) > 0:
        a = gcd_(b, d)
        if degree(a) > 0:
            out.append((a, i))
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = sub(c, derivative(b))
        i += 1
    return out


def to_string(p: UPoly, var: str = "x") -> str:
    from .polycore import MultiPoly

    return str(MultiPoly.from_univariate(p, var))


# -- Sturm sequences ---------------------------------------------------------------


def sturm_sequence(p: UPoly) -> List[UPoly]:
    seq = [trim(p), derivative(p)]
    while seq[-1] and degree(seq[-1]) > 0:
        r = divmod_(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(scale(r, -1))
    return [s for s in seq if s]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_variations(seq: Sequence[UPoly], x) -> int:
    signs = [_sign(evaluate(s, x)) for s in seq]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: Sequence[UPoly], lo, hi) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def root_bound(p: UPoly) -> Fraction:
    """Cauchy bound: every root satisfies |x| < bound."""
    lead = abs(p[-1])
    return 1 + max((abs(c) / lead for c in p[:-1]), default=Fraction(0))


Interval = Tuple[Fraction, Fraction]


def _nudge(p: UPoly, seq, x: Fraction, toward: Fraction) -> Fraction:
    """A point strictly between root ``x`` and ``toward`` with no root in between."""
    step = (toward - x) / 2
    while True:
        y = x + step
        if evaluate(p, y) != 0:
            clear = count_roots(seq, x, y) == 0 if y > x else count_roots(seq, y, x) == 1
            if clear:
                return y
        step /= 2


def isolate(p: UPoly, lo=None, hi=None) -> List[Interval]:
    """Isolate the distinct real roots of ``p`` inside [lo, hi].

    Returns sorted intervals; ``(r, r)`` marks an exact rational root found
    during bisection, any other interval ``(a, b)`` contains exactly one
    root, strictly inside, with ``p(a) * p(b) < 0``.
    """
    p = sqf_part(trim(p))
    if degree(p) <= 0:
        return []
    seq = sturm_sequence(p)
    bound = root_bound(p)
    lo = -bound if lo is None else Fraction(lo)
    hi = bound if hi is None else Fraction(hi)
    if lo > hi:
        return []
    if lo == hi:
        return [(lo, lo)] if evaluate(p, lo) == 0 else []
    roots: List[Interval] = []
    if evaluate(p, lo) == 0:
        roots.append((lo, lo))
        lo = _nudge(p, seq, lo, hi)
    if evaluate(p, hi) == 0:
        roots.append((hi, hi))
        hi = _nudge(p, seq, hi, lo)
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = count_roots(seq, a, b)
        if n == 0:
            continue
        if n == 1:
            roots.append((a, b))
            continue
        m = (a + b) / 2
        if evaluate(p, m) == 0:
            roots.append((m, m))
            stack.append((a, _nudge(p, seq, m, a)))
            stack.append((_nudge(p, seq, m, b), b))
        else:
            stack.append((a, m))
            stack.append((m, b))
    roots.sort()
    return roots


def refine(p: UPoly, lo: Fraction, hi: Fraction, width) -> Interval:
    """Bisect an isolating interval of ``p`` to width below ``width``."""
    if lo == hi:
        return lo, hi
    flo = _sign(evaluate(p, lo))
    while hi - lo >= width:
        m = (lo + hi) / 2
        fm = _sign(evaluate(p, m))
        if fm == 0:
            return m, m
        if fm == flo:
            lo = m
        else:
            hi = m
    return lo, hi


def rational_root_in(p: UPoly, lo: Fraction, hi: Fraction):
    """The rational root of ``p`` in the isolating interval (lo, hi), or None."""
    if lo == hi:
        return lo
    ip = primitive(p)
    lead = abs(int(ip[-1]))
    trail_idx = next(i for i, c in enumerate(ip) if c)
    if trail_idx and lo < 0 < hi:
        return Fraction(0)
    lo, hi = refine(p, lo, hi, Fraction(1, 2 * lead))
    if lo == hi:
        return lo
    k = floor(lo * lead) + 1
    cand = Fraction(k, lead)
    if lo < cand < hi and evaluate(p, cand) == 0:
        return cand
    return None


def eval_interval(p: UPoly, lo: Fraction, hi: Fraction) -> Interval:
    """Enclosure of p over [lo, hi] by interval Horner evaluation."""
    alo = ahi = Fraction(0)
    for c in reversed(p):
        prods = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(prods) + c, max(prods) + c
    return alo, ahi
