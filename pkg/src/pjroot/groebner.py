"""Buchberger's algorithm, multivariate division and ideal membership."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .polycore import Monomial, MonomialOrder, MultiPoly

_Terms = Dict[Monomial, Fraction]


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _Elem:
    """Basis element aligned with the order's variables, with cached leading term."""

    __slots__ = ("terms", "lm", "lc")

    def __init__(self, terms: _Terms, key):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]


def _normal_form(terms: _Terms, basis: Sequence[_Elem], key) -> _Terms:
    p = dict(terms)
    rem: _Terms = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for g in basis:
            if _divides(g.lm, m):
                shift = tuple(x - y for x, y in zip(m, g.lm))
                f = c / g.lc
                for gm, gc in g.terms.items():
                    mm = tuple(x + y for x, y in zip(gm, shift))
                    v = p.get(mm, 0) - f * gc
                    if v:
                        p[mm] = v
                    else:
                        p.pop(mm, None)
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _spoly_terms(f: _Elem, g: _Elem) -> _Terms:
    L = _lcm(f.lm, g.lm)
    sf = tuple(x - y for x, y in zip(L, f.lm))
    sg = tuple(x - y for x, y in zip(L, g.lm))
    out: _Terms = {}
    for m, c in f.terms.items():
        out[tuple(x + y for x, y in zip(m, sf))] = c / f.lc
    for m, c in g.terms.items():
        mm = tuple(x + y for x, y in zip(m, sg))
        v = out.get(mm, 0) - c / g.lc
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _aligned(polys: Sequence[MultiPoly], order: MonomialOrder) -> List[_Terms]:
    return [dict(p.embed(order.variables).items()) for p in polys]


def reduce(f: MultiPoly, basis: Sequence[MultiPoly], order: MonomialOrder) -> MultiPoly:
    """Fully reduced remainder of ``f`` on division by ``basis``.

    No term of the result is divisible by a leading monomial of the basis.
    The result lives in the order's variable set.
    """
    key = order.key
    elems = [_Elem(t, key) for t in _aligned([b for b in basis if b], order)]
    rem = _normal_form(dict(f.embed(order.variables).items()), elems, key)
    return MultiPoly._raw(rem, order.variables)


def s_polynomial(f: MultiPoly, g: MultiPoly, order: MonomialOrder) -> MultiPoly:
    """S(f, g) = (L/LT(f)) f - (L/LT(g)) g with L the lcm of the leading monomials."""
    key = order.key
    tf, tg = _aligned([f, g], order)
    return MultiPoly._raw(_spoly_terms(_Elem(tf, key), _Elem(tg, key)), order.variables)


@dataclass(frozen=True)
class Ideal:
    generators: Tuple[MultiPoly, ...]
    variables: Tuple[str, ...]

    def __init__(self, generators: Sequence[MultiPoly], variables: Sequence[str] = None):
        gens = [g for g in generators if not g.is_zero()]
        if variables is None:
            variables = gens[0].variables if gens else ()
        object.__setattr__(self, "generators", tuple(g.embed(variables) for g in gens))
        object.__setattr__(self, "variables", tuple(variables))


@dataclass(frozen=True)
class GrobnerBasis:
    elements: Tuple[MultiPoly, ...]
    order: MonomialOrder
    reduced: bool = True
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    @property
    def variables(self):
        return self.order.variables

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def reduce(self, f: MultiPoly) -> MultiPoly:
        return reduce(f, self.elements, self.order)

    def contains(self, f: MultiPoly) -> bool:
        return self.reduce(f).is_zero()

    def is_unit(self) -> bool:
        """True when the ideal is the whole ring (no common zeros at all)."""
        return any(g.is_constant() for g in self.elements)

    def is_zero_dimensional(self) -> bool:
        if self.is_unit():
            return True
        lms = self.leading_monomials()
        n = len(self.variables)
        for i in range(n):
            if not any(m[i] and sum(m) == m[i] for m in lms):
                return False
        return True

    def standard_monomials(self) -> List[Monomial]:
        """Monomials not divisible by any leading monomial (finite ideals only)."""
        if not self.is_zero_dimensional():
            raise ValueError("ideal is not zero-dimensional")
        if self.is_unit():
            return []
        lms = self.leading_monomials()
        n = len(self.variables)
        out = []
        stack = [(0,) * n]
        seen = set(stack)
        while stack:
            m = stack.pop()
            if any(_divides(l, m) for l in lms):
                continue
            out.append(m)
            for i in range(n):
                nxt = m[:i] + (m[i] + 1,) + m[i + 1:]
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        out.sort(key=self.order.key)
        return out


def _reduce_basis(elems: List[_Elem], key) -> List[_Elem]:
    # minimal basis: drop elements whose leading monomial is a multiple of another's
    elems = sorted(elems, key=lambda e: key(e.lm))
    minimal: List[_Elem] = []
    for e in elems:
        if not any(_divides(g.lm, e.lm) for g in minimal):
            minimal.append(e)
    out = []
    for i, e in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = dict(e.terms)
        lead = tail.pop(e.lm)
        rem = _normal_form(tail, others, key)
        rem[e.lm] = lead
        inv = 1 / lead
        out.append(_Elem({m: c * inv for m, c in rem.items()}, key))
    # interreduction with respect to the final set (earlier tails used unreduced peers)
    changed = True
    while changed:
        changed = False
        for i, e in enumerate(out):
            others = out[:i] + out[i + 1:]
            tail = dict(e.terms)
            tail.pop(e.lm)
            rem = _normal_form(tail, others, key)
            if rem != tail:
                rem[e.lm] = Fraction(1)
                out[i] = _Elem(rem, key)
                changed = True
    return out


def buchberger(ideal, order: MonomialOrder, reduced: bool = True) -> GrobnerBasis:
    """Reduced Gröbner basis of ``ideal`` under ``order``.

    ``ideal`` may be an :class:`Ideal` or any sequence of polynomials.  Pairs
    are processed smallest-lcm first; the product and chain criteria discard
    pairs known to reduce to zero.
    """
    gens = ideal.generators if isinstance(ideal, Ideal) else [g for g in ideal if not g.is_zero()]
    key = order.key
    G: List[_Elem] = []
    pairs = set()
    stats = {"pairs": 0, "reductions_to_zero": 0, "product_skips": 0, "chain_skips": 0}

    def add(terms):
        e = _Elem(terms, key)
        k = len(G)
        G.append(e)
        for i in range(k):
            pairs.add((i, k))

    for t in _aligned(gens, order):
        rem = _normal_form(t, G, key)
        if rem:
            add(rem)

    while pairs:
        i, j = min(pairs, key=lambda p: (key(_lcm(G[p[0]].lm, G[p[1]].lm)), p))
        pairs.discard((i, j))
        gi, gj = G[i], G[j]
        if _coprime(gi.lm, gj.lm):
            stats["product_skips"] += 1
            continue
        L = _lcm(gi.lm, gj.lm)
        chain = False
        for k, gk in enumerate(G):
            if k in (i, j) or not _divides(gk.lm, L):
                continue
            if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                chain = True
                break
        if chain:
            stats["chain_skips"] += 1
            continue
        stats["pairs"] += 1
        rem = _normal_form(_spoly_terms(gi, gj), G, key)
        if rem:
            add(rem)
        else:
            stats["reductions_to_zero"] += 1

    if not G:
        return GrobnerBasis((), order, reduced, stats)
    if any(not any(m) for g in G for m in (g.lm,)):
        one = MultiPoly.constant(1, order.variables)
        return GrobnerBasis((one,), order, True, stats)
    if reduced:
        G = _reduce_basis(G, key)
        G.sort(key=lambda e: key(e.lm))
    polys = tuple(MultiPoly._raw(dict(e.terms), order.variables) for e in G)
    return GrobnerBasis(polys, order, reduced, stats)


def groebner_basis(polys: Sequence[MultiPoly], order: MonomialOrder) -> GrobnerBasis:
    return buchberger(polys, order)


def ideal_membership(f: MultiPoly, basis: GrobnerBasis) -> bool:
    return basis.contains(f)


def satisfies_buchberger_criterion(basis: Sequence[MultiPoly], order: MonomialOrder) -> bool:
    """Every pairwise S-polynomial reduces to zero modulo ``basis``."""
    elems = [p for p in basis if p]
    for f, g in combinations(elems, 2):
        if not reduce(s_polynomial(f, g, order), elems, order).is_zero():
            return False
    return True


def same_ideal(a: Sequence[MultiPoly], b: Sequence[MultiPoly], order: MonomialOrder) -> bool:
    """Mutual containment test; computes a Gröbner basis of each side."""
    ga = buchberger(list(a), order)
    gb = buchberger(list(b), order)
    return all(ga.contains(p) for p in b) and all(gb.contains(p) for p in a)
