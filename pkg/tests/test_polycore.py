from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, PENCIL
from pjroot.polycore import (
    MonomialOrder,
    MultiPoly,
    VariableMismatch,
    compare_monomials,
    dehomogenize,
    grevlex,
    homogenize,
    lex,
    poly_add,
    poly_mul,
    poly_scale,
)

XY = ("x", "y")
XYZ3 = ("x", "y", "z")


def test_difference_of_squares():
    assert P("x+1", ("x",)) * P("x-1", ("x",)) == P("x^2-1", ("x",))


def test_scale_and_add_build_real_pencil_part():
    q = poly_add(poly_scale(P("x^2-y^2+1", PENCIL), 1) * P("k_d", PENCIL), P("k_n", PENCIL) * P("x", PENCIL))
    assert q == P("k_d*(x^2-y^2+1) + k_n*x", PENCIL)


def test_additive_inverse_is_zero():
    p = P("3*x^2*y - 1/2*y + 7", XY)
    assert (p + poly_scale(p, -1)).is_zero()


def test_mul_embeds_smaller_variable_set():
    a = P("x", ("x",))
    b = P("y", ("x", "y"))
    assert poly_mul(a, b) == P("x*y", XY)


def test_mismatched_variables_raise():
    with pytest.raises(VariableMismatch):
        P("x", ("x", "y")) + P("z", ("z", "x"))


def test_no_zero_coefficients_stored():
    p = MultiPoly({(1, 0): 2, (0, 1): 0}, XY)
    assert p.terms == {(1, 0): Fraction(2)}


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        MultiPoly({(1,): 0.5}, ("x",))


@pytest.mark.parametrize(
    "order,m1,m2,expected",
    [
        (grevlex("x", "y"), (2, 0), (1, 1), 1),
        (grevlex("x", "y"), (1, 0), (0, 2), -1),
        (lex("x", "y"), (1, 0), (0, 2), 1),
        (MonomialOrder("grlex", XY), (1, 0), (0, 2), -1),
        (grevlex("x", "y"), (1, 1), (1, 1), 0),
    ],
)
def test_compare_monomials(order, m1, m2, expected):
    assert compare_monomials(m1, m2, order) == expected


def test_grevlex_differs_from_grlex_on_three_variables():
    # x*z^2 vs y^3 ... degree 3 tie: grevlex looks at z first
    g = grevlex(*XYZ3)
    gl = MonomialOrder("grlex", XYZ3)
    assert compare_monomials((1, 2, 0), (0, 1, 2), g) == 1
    assert compare_monomials((1, 0, 2), (0, 3, 0), g) == -1
    assert compare_monomials((1, 0, 2), (0, 3, 0), gl) == 1


def test_homogenize_pencil_generators():
    V = PENCIL
    assert homogenize(P("2*x*y*k_d + y*k_n", V), XY, "z") == P("2*x*y*k_d + y*z*k_n")
    assert homogenize(P("x^2*k_d - y^2*k_d + x*k_n + k_d", V), XY, "z") == P(
        "x^2*k_d - y^2*k_d + x*z*k_n + z^2*k_d"
    )


def test_homogenize_places_new_variable_after_block():
    h = homogenize(P("x*k_d + k_n", PENCIL), XY, "z")
    assert h.variables == ("x", "y", "z", "k_d", "k_n")


def test_homogenize_fixed_point_and_constants():
    p = P("x^2+y^2", XY)
    assert dehomogenize(homogenize(p, XY, "z"), "z") == p
    assert homogenize(p, XY, "z") == P("x^2+y^2", XYZ3)
    c = MultiPoly.constant(5, XY)
    assert homogenize(c, XY, "z") == MultiPoly.constant(5, XYZ3)
    assert homogenize(MultiPoly.zero(XY), XY, "z").is_zero()


def test_dehomogenize_examples():
    lam = ("x", "y", "z", "lam")
    assert dehomogenize(P("y*(2*x+z*lam)", lam), "z") == P("y*(2*x+lam)", ("x", "y", "lam"))
    g = P("x^2*y*k_n + y^3*k_n + 2*x*y*z*k_n")
    assert dehomogenize(g, "x") == P("y*k_n*(y^2+2*z+1)", ("y", "z", "k_d", "k_n"))
    assert dehomogenize(MultiPoly.constant(5, ("z",)), "z") == MultiPoly.constant(5, ())


def test_homogenize_rejects_existing_variable():
    with pytest.raises(ValueError):
        homogenize(P("x*z", XYZ3), XY, "z")


# -- properties ------------------------------------------------------------------------

monomials = st.tuples(*[st.integers(0, 4)] * 3)
orders = st.sampled_from([grevlex(*XYZ3), lex(*XYZ3), MonomialOrder("grlex", XYZ3)])
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def polys(draw, variables=XYZ3, max_terms=5, max_exp=3):
    n = len(variables)
    terms = draw(
        st.dictionaries(st.tuples(*[st.integers(0, max_exp)] * n), rationals, max_size=max_terms)
    )
    return MultiPoly(terms, variables)


@given(orders, monomials, monomials, monomials)
def test_order_is_total_antisymmetric_transitive(order, a, b, c):
    ab, ba = order.compare(a, b), order.compare(b, a)
    assert ab == -ba
    assert (ab == 0) == (a == b)
    if order.compare(a, b) > 0 and order.compare(b, c) > 0:
        assert order.compare(a, c) > 0


@given(orders, monomials, monomials, monomials)
def test_order_is_multiplicative(order, a, b, t):
    at = tuple(i + j for i, j in zip(a, t))
    bt = tuple(i + j for i, j in zip(b, t))
    assert order.compare(a, b) == order.compare(at, bt)


@given(orders, monomials)
def test_one_is_smallest(order, a):
    assert order.compare(a, (0, 0, 0)) >= 0


@given(st.sampled_from([grevlex(*XYZ3), MonomialOrder("grlex", XYZ3)]), monomials, monomials)
def test_graded_orders_compare_degree_first(order, a, b):
    if sum(a) > sum(b):
        assert order.compare(a, b) == 1


@settings(max_examples=60)
@given(polys(), polys(), polys())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(polys(variables=("x", "y", "k_d", "k_n")))
def test_homogenize_round_trip(p):
    h = homogenize(p, XY, "z")
    assert dehomogenize(h, "z") == p.embed(p.variables)


@settings(max_examples=60)
@given(polys(variables=("x", "y", "k_d", "k_n"), max_exp=2), st.fractions(min_value=-5, max_value=5, max_denominator=5))
def test_homogenize_is_homogeneous_of_block_degree(p, t):
    if p.is_zero():
        return
    h = homogenize(p, XY, "z")
    d = p.degree_in(XY)
    assert h.is_homogeneous(("x", "y", "z"))
    # substitute x -> t*x etc. through a fresh variable and compare with t^d * h
    V = ("x", "y", "z", "k_d", "k_n", "t")
    hv = h.embed(V)
    T = MultiPoly.variable("t", V)
    scaled = hv.subs({"x": T * MultiPoly.variable("x", V), "y": T * MultiPoly.variable("y", V),
                      "z": T * MultiPoly.variable("z", V)}, drop=False)
    assert scaled == hv * T ** d
