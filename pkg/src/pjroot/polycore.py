"""Exact multivariate polynomials over the rationals.

Polynomials are immutable mappings from exponent tuples to ``Fraction``
coefficients, tagged with an ordered tuple of variable names.  The order of
the names is the variable precedence used by the monomial orders, e.g.
``("x", "y", "z", "k_d", "k_n")`` means x > y > z > k_d > k_n.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

Monomial = Tuple[int, ...]
Coefficient = Union[int, Fraction]

ORDER_KINDS = ("grevlex", "lex", "grlex")


class VariableMismatch(ValueError):
    """Raised when two polynomials live in incompatible variable sets."""


def _embeds(small: Sequence[str], big: Sequence[str]) -> bool:
    # order-preserving subsequence test
    it = iter(big)
    return all(name in it for name in small)


def common_variables(a: Sequence[str], b: Sequence[str]) -> Tuple[str, ...]:
    a, b = tuple(a), tuple(b)
    if a == b:
        return a
    if _embeds(a, b):
        return b
    if _embeds(b, a):
        return a
    raise VariableMismatch(f"variable sets {a} and {b} do not embed into one another")


class MonomialOrder:
    """A monomial order over a fixed variable precedence.

    ``key(m)`` maps an exponent tuple (aligned with ``variables``) to a sort
    key; larger keys are larger monomials.
    """

    __slots__ = ("kind", "variables", "key")

    def __init__(self, kind: str, variables: Sequence[str]):
        if kind not in ORDER_KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be unique")
        self.kind = kind
        self.variables = tuple(variables)
        if kind == "lex":
            self.key = _lex_key
        elif kind == "grlex":
            self.key = _grlex_key
        else:
            self.key = _grevlex_key

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.variables == other.variables
        )

    def __hash__(self):
        return hash((self.kind, self.variables))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, {'>'.join(self.variables)})"

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)


def _lex_key(m):
    return m


def _grlex_key(m):
    return (sum(m), m)


def _grevlex_key(m):
    # ties at equal degree: smaller exponent in the least variable wins
    return (sum(m), tuple(-e for e in reversed(m)))


def grevlex(*variables: str) -> MonomialOrder:
    return MonomialOrder("grevlex", variables)


def lex(*variables: str) -> MonomialOrder:
    return MonomialOrder("lex", variables)


def compare_monomials(m1: Monomial, m2: Monomial, order: MonomialOrder) -> int:
    """Return -1, 0 or 1 as ``m1`` is less than, equal to or greater than ``m2``."""
    return order.compare(tuple(m1), tuple(m2))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficient {c!r} is not an exact rational")


class MultiPoly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("_terms", "_vars", "_lt_cache", "_hash")

    def __init__(self, terms: Mapping[Monomial, Coefficient], variables: Sequence[str]):
        variables = tuple(variables)
        n = len(variables)
        clean: Dict[Monomial, Fraction] = {}
        for mono, coef in terms.items():
            mono = tuple(mono)
            if len(mono) != n:
                raise ValueError(f"monomial {mono} does not match {n} variables")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            c = _as_fraction(coef)
            if c:
                clean[mono] = clean.get(mono, 0) + c
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean
        self._vars = variables
        self._lt_cache = {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction], variables: Tuple[str, ...]) -> "MultiPoly":
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._vars = variables
        obj._lt_cache = {}
        obj._hash = None
        return obj

    # -- construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls._raw({}, tuple(variables))

    @classmethod
    def constant(cls, c: Coefficient, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        c = _as_fraction(c)
        return cls._raw({(0,) * len(variables): c} if c else {}, variables)

    @classmethod
    def variable(cls, name: str, variables: Sequence[str]) -> "MultiPoly":
        variables = tuple(variables)
        i = variables.index(name)
        mono = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls._raw({mono: Fraction(1)}, variables)

    @classmethod
    def from_univariate(cls, coeffs: Sequence[Coefficient], name: str) -> "MultiPoly":
        """Build from dense coefficients, lowest degree first."""
        return cls({(i,): c for i, c in enumerate(coeffs) if c}, (name,))

    # -- basic accessors ----------------------------------------------------------

    @property
    def variables(self) -> Tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * len(self._vars), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def degree_in(self, names: Iterable[str]) -> int:
        """Maximum total degree over the given block of variables (-1 for zero)."""
        idx = [self._vars.index(n) for n in names]
        return max((sum(m[i] for i in idx) for m in self._terms), default=-1)

    def degree(self, name: str) -> int:
        return self.degree_in([name])

    def used_variables(self) -> Tuple[str, ...]:
        return tuple(
            v for i, v in enumerate(self._vars) if any(m[i] for m in self._terms)
        )

    def is_homogeneous(self, names: Iterable[str] = None) -> bool:
        names = self._vars if names is None else tuple(names)
        idx = [self._vars.index(n) for n in names]
        return len({sum(m[i] for i in idx) for m in self._terms}) <= 1

    # -- ordering -------------------------------------------------------------------

    def _order_perm(self, order: MonomialOrder):
        if order.variables == self._vars:
            return None
        if set(order.variables) != set(self._vars):
            # allow orders over a superset with unused extra variables
            missing = set(self._vars) - set(order.variables)
            if missing:
                raise VariableMismatch(f"order lacks variables {sorted(missing)}")
        pos = {v: i for i, v in enumerate(self._vars)}
        return [pos.get(v) for v in order.variables]

    def _okey(self, order: MonomialOrder):
        perm = self._order_perm(order)
        if perm is None:
            return order.key
        key = order.key
        return lambda m: key(tuple(0 if i is None else m[i] for i in perm))

    def leading_term(self, order: MonomialOrder) -> Tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        hit = self._lt_cache.get(order)
        if hit is None:
            mono = max(self._terms, key=self._okey(order))
            hit = (mono, self._terms[mono])
            self._lt_cache[order] = hit
        return hit

    def leading_monomial(self, order: MonomialOrder) -> Monomial:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        return self.leading_term(order)[1]

    def sorted_terms(self, order: MonomialOrder):
        """Terms sorted from largest to smallest monomial."""
        return sorted(self._terms.items(), key=lambda t: self._okey(order)(t[0]), reverse=True)

    def monic(self, order: MonomialOrder) -> "MultiPoly":
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def primitive(self, order: MonomialOrder = None) -> "MultiPoly":
        """Scale to integer coefficients with gcd 1 and positive leading coefficient."""
        if not self._terms:
            return self
        from math import gcd

        den = 1
        for c in self._terms.values():
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self._terms.values()]
        g = 0
        for v in ints:
            g = gcd(g, v)
        factor = Fraction(den, g)
        order = order or MonomialOrder("grevlex", self._vars)
        if self.leading_coefficient(order) < 0:
            factor = -factor
        return self.scale(factor)

    # -- variable-set manipulation -------------------------------------------------

    def embed(self, variables: Sequence[str]) -> "MultiPoly":
        """Re-express in a variable set containing all currently used variables."""
        variables = tuple(variables)
        if variables == self._vars:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        used = self.used_variables()
        missing = [v for v in used if v not in pos]
        if missing:
            raise VariableMismatch(f"cannot drop used variables {missing}")
        src = [(i, pos[v]) for i, v in enumerate(self._vars) if v in pos]
        n = len(variables)
        out = {}
        for m, c in self._terms.items():
            e = [0] * n
            for i, j in src:
                e[j] = m[i]
            out[tuple(e)] = c
        return MultiPoly._raw(out, variables)

    def _coerce(self, other) -> Tuple["MultiPoly", "MultiPoly"]:
        if isinstance(other, MultiPoly):
            vs = common_variables(self._vars, other._vars)
            return self.embed(vs), other.embed(vs)
        return self, MultiPoly.constant(_as_fraction(other), self._vars)

    # -- arithmetic -------------------------------------------------------------------

    def __add__(self, other):
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(a._terms)
        for m, c in b._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MultiPoly._raw(out, a._vars)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self._terms.items()}, self._vars)

    def __sub__(self, other):
        try:
            a, b = self._coerce(other)
        except TypeError:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self._coerce(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in a._terms.items():
            for m2, c2 in b._terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return MultiPoly._raw(out, a._vars)

    __rmul__ = __mul__

    def scale(self, c: Coefficient) -> "MultiPoly":
        c = _as_fraction(c)
        if not c:
            return MultiPoly.zero(self._vars)
        return MultiPoly._raw({m: v * c for m, v in self._terms.items()}, self._vars)

    def mul_term(self, mono: Monomial, c: Fraction) -> "MultiPoly":
        return MultiPoly._raw(
            {tuple(x + y for x, y in zip(m, mono)): v * c for m, v in self._terms.items()},
            self._vars,
        )

    def __truediv__(self, c):
        if isinstance(c, MultiPoly):
            if not c.is_constant() or c.is_zero():
                return NotImplemented
            c = c.constant_value()
        return self.scale(1 / _as_fraction(c))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.constant(1, self._vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if self._vars == other._vars:
                return self._terms == other._terms
            try:
                a, b = self._coerce(other)
            except VariableMismatch:
                # compare by used variables only
                return self._named_terms() == other._named_terms()
            return a._terms == b._terms
        try:
            c = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return self._terms == ({(0,) * len(self._vars): c} if c else {})

    def _named_terms(self):
        return {
            frozenset((v, e) for v, e in zip(self._vars, m) if e): c
            for m, c in self._terms.items()
        }

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._named_terms().items()))
        return self._hash

    # -- substitution and evaluation ------------------------------------------------

    def subs(self, values: Mapping[str, object], drop: bool = True) -> "MultiPoly":
        """Substitute rationals or polynomials for variables.

        Substituted variables are removed from the variable set when ``drop`` is
        true (otherwise kept with exponent 0).  Polynomial values must embed into
        the remaining variable set.
        """
        idx = {v: i for i, v in enumerate(self._vars)}
        scalar_vals, poly_vals = {}, {}
        for name, val in values.items():
            if name not in idx:
                continue
            if isinstance(val, MultiPoly):
                poly_vals[idx[name]] = val
            else:
                scalar_vals[idx[name]] = _as_fraction(val)
        gone = set(scalar_vals) | set(poly_vals)
        if drop:
            target = tuple(v for i, v in enumerate(self._vars) if i not in gone)
            kept = [i for i in range(len(self._vars)) if i not in gone]
        else:
            target = self._vars
            kept = None
        pvals = {i: p.embed(target) for i, p in poly_vals.items()}
        powers: Dict[Tuple[int, int], MultiPoly] = {}
        out: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            coef = c
            for i, val in scalar_vals.items():
                if m[i]:
                    coef *= val ** m[i]
            if not coef:
                continue
            if kept is None:
                mono = tuple(0 if i in gone else e for i, e in enumerate(m))
            else:
                mono = tuple(m[i] for i in kept)
            if not pvals or not any(m[i] for i in pvals):
                s = out.get(mono, 0) + coef
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
                continue
            term = MultiPoly._raw({mono: coef}, target)
            for i, val in pvals.items():
                if m[i]:
                    if (i, m[i]) not in powers:
                        powers[(i, m[i])] = val ** m[i]
                    term = term * powers[(i, m[i])]
            for mm, cc in term._terms.items():
                s = out.get(mm, 0) + cc
                if s:
                    out[mm] = s
                else:
                    out.pop(mm, None)
        return MultiPoly._raw(out, target)

    def __call__(self, **values):
        return self.subs(values)

    def evaluate(self, values: Mapping[str, Coefficient]) -> Fraction:
        """Exact evaluation at a rational point (all variables must be given)."""
        res = self.subs(values)
        if not res.is_constant():
            raise ValueError(f"unassigned variables {res.used_variables()}")
        return res.constant_value()

    def eval_float(self, values: Mapping[str, complex]):
        vals = [values[v] for v in self._vars]
        total = 0
        for m, c in self._terms.items():
            t = float(c)
            for v, e in zip(vals, m):
                if e:
                    t = t * v ** e
            total += t
        return total

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        return MultiPoly._raw(dict(self._terms), tuple(mapping.get(v, v) for v in self._vars))

    def derivative(self, name: str) -> "MultiPoly":
        i = self._vars.index(name)
        out = {}
        for m, c in self._terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return MultiPoly._raw(out, self._vars)

    def to_univariate(self, name: str = None):
        """Dense coefficient list (lowest degree first) of a univariate polynomial."""
        used = self.used_variables()
        if name is None:
            if len(used) > 1:
                raise ValueError(f"polynomial is not univariate: {used}")
            name = used[0] if used else self._vars[0]
        elif any(v != name for v in used):
            raise ValueError(f"polynomial is not univariate in {name}: {used}")
        i = self._vars.index(name)
        deg = max((m[i] for m in self._terms), default=-1)
        coeffs = [Fraction(0)] * (deg + 1)
        for m, c in self._terms.items():
            coeffs[m[i]] = c
        return coeffs

    def monomial_content(self) -> Monomial:
        """Largest monomial dividing every term."""
        if not self._terms:
            return (0,) * len(self._vars)
        it = iter(self._terms)
        g = list(next(it))
        for m in it:
            g = [min(a, b) for a, b in zip(g, m)]
        return tuple(g)

    def strip_variable(self, name: str) -> "MultiPoly":
        """Divide out the largest power of ``name`` that divides every term."""
        i = self._vars.index(name)
        k = self.monomial_content()[i]
        if not k:
            return self
        return MultiPoly._raw(
            {m[:i] + (m[i] - k,) + m[i + 1:]: c for m, c in self._terms.items()}, self._vars
        )

    # -- printing ----------------------------------------------------------------------

    def to_string(self, order: MonomialOrder = None) -> str:
        if not self._terms:
            return "0"
        order = order or MonomialOrder("grevlex", self._vars)
        parts = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self._vars, m) if e
            )
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"MultiPoly({self.to_string()!r}, vars={self._vars})"


def format_rational(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def gens(variables: Sequence[str]):
    """Generators of the polynomial ring over ``variables``."""
    variables = tuple(variables)
    return tuple(MultiPoly.variable(v, variables) for v in variables)


def poly_add(a: MultiPoly, b) -> MultiPoly:
    return a + b


def poly_mul(a: MultiPoly, b) -> MultiPoly:
    return a * b


def poly_scale(a: MultiPoly, c: Coefficient) -> MultiPoly:
    return a.scale(c)


def homogenize(p: MultiPoly, block: Sequence[str], new_var: str) -> MultiPoly:
    """Homogenize ``p`` over ``block`` with the new variable ``new_var``.

    The new variable is inserted right after the last block variable, so
    homogenizing over (x, y) in x>y>k_d>k_n gives x>y>z>k_d>k_n.  Variables
    outside the block are treated as coefficients.
    """
    if new_var in p.variables:
        raise ValueError(f"{new_var} already a variable of the polynomial")
    block = tuple(block)
    vs = p.variables
    idx = [vs.index(b) for b in block]
    insert_at = max(idx) + 1 if idx else len(vs)
    new_vars = vs[:insert_at] + (new_var,) + vs[insert_at:]
    d = p.degree_in(block)
    out = {}
    for m, c in p.items():
        e = d - sum(m[i] for i in idx)
        out[m[:insert_at] + (e,) + m[insert_at:]] = c
    return MultiPoly._raw(out, new_vars)


def dehomogenize(p: MultiPoly, var: str) -> MultiPoly:
    """Set ``var`` = 1 and drop it from the variable set."""
    return p.subs({var: 1})
