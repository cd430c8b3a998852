import math
from fractions import Fraction

import pytest

from conftest import HOM, P, match_up_to_scalar, same_up_to_scalar
from pjroot.algebraic import AlgebraicReal, real_root
from pjroot.geometry import ProjectivePoint, gnomonic_lift
from pjroot.groebner import buchberger
from pjroot.pencil import build_pencil
from pjroot.pjrl import (
    SYMBOLIC_VARS,
    DegenerateSpecialization,
    ParameterValue,
    affine_view,
    as_parameter,
    asymptote_directions,
    initial_slice,
    intermediary_slice,
    naive_homogenization,
    projective_closure,
    slice_at,
    slice_contains,
    solve_slice,
    specialize,
    swap_patch_coords,
    symbolic_intermediary,
    terminal_slice,
)
from pjroot.polycore import dehomogenize, grevlex
from pjroot.solver import real_roots, sweep_conventional

XYZ = ("x", "y", "z")
SQRT3 = real_root([-3, 0, 1], 1, 2)


def pts(*triples):
    return {ProjectivePoint(*t) for t in triples}


# -- parameter values ------------------------------------------------------------------


def test_parameter_canonical_form():
    assert ParameterValue(Fraction(6), Fraction(3)) == ParameterValue.finite(2)
    assert ParameterValue(Fraction(-5), Fraction(0)) == ParameterValue.infinity()
    assert as_parameter("inf").is_infinite and as_parameter(None).is_infinite
    assert str(ParameterValue.finite(Fraction(1, 2))) == "1/2"
    assert ParameterValue.finite(0).kind == "initial"
    assert ParameterValue.infinity().kind == "terminal"
    assert ParameterValue.finite(3).swapped() == ParameterValue.finite(Fraction(1, 3))
    with pytest.raises(ValueError):
        ParameterValue(Fraction(0), Fraction(0))


# -- closure ---------------------------------------------------------------------------


def test_closure_of_imag_poles(closures):
    expected = [
        P("2*x*y*k_d + y*z*k_n"),
        P("x^2*k_d - y^2*k_d + x*z*k_n + z^2*k_d"),
        P("x^2*y*k_n + y^3*k_n - y*z^2*k_n"),
        P("2*y^3*k_d - x*y*z*k_n - 2*y*z^2*k_d"),
    ]
    assert match_up_to_scalar(closures["imag_poles"].polys, expected)


def test_closure_of_double_pole(closures):
    expected = [
        P("2*x*y*k_d + y*z*k_n"),
        P("x^2*k_d - y^2*k_d + x*z*k_n + z^2*k_n"),
        P("x^2*y*k_n + y^3*k_n + 2*x*y*z*k_n"),
        P("2*y^3*k_d - x*y*z*k_n - 2*y*z^2*k_n"),
    ]
    assert match_up_to_scalar(closures["double_pole"].polys, expected)


def test_closure_of_equal_degree_contains_monomials(closures):
    sys = closures["equal_degree"]
    assert len(sys) == 4
    assert any(same_up_to_scalar(p, P("x*y*k_n")) for p in sys)
    assert any(same_up_to_scalar(p, P("x*y*k_d")) for p in sys)


def test_closure_invariants(closures):
    for sys in closures.values():
        assert sys.variables == HOM
        for p, g in zip(sys.polys, sys.source_basis.elements):
            assert p.is_homogeneous(XYZ)
            assert p.is_homogeneous(("k_d", "k_n")) and p.degree_in(("k_d", "k_n")) == 1
            assert dehomogenize(p, "z") == g


# -- specialization --------------------------------------------------------------------


def test_specialize_terminal_recomputed(closures):
    got = specialize(closures["imag_poles"], "inf", recompute=True)
    assert match_up_to_scalar(got, [P("y*z", XYZ), P("x*z", XYZ), P("y*(x^2+y^2)", XYZ)])
    got = specialize(closures["double_pole"], "inf", recompute=True)
    assert match_up_to_scalar(got, [P("y*z", XYZ), P("x*z+z^2", XYZ), P("x^2*y+y^3", XYZ)])


def test_specialize_initial_drops_gain_only_terms(closures):
    sys = closures["imag_poles"]
    got = specialize(sys, 0)
    expected = [p.subs({"k_n": 0, "k_d": 1}) for p in sys.polys]
    assert match_up_to_scalar(got, [e for e in expected if not e.is_zero()])
    assert len(got) == 3


def test_degenerate_specialization():
    with pytest.raises(DegenerateSpecialization, match="degenerate specialization"):
        specialize([P("x*k_n")], 0)


# -- endpoint slices -------------------------------------------------------------------


@pytest.mark.parametrize(
    "name,w0,winf",
    [
        ("imag_poles", [(0, 1, 1), (0, -1, 1)], [(0, 0, 1), (1, 0, 0)]),
        ("double_pole", [(0, 0, 1)], [(-1, 0, 1), (1, 0, 0)]),
        ("third_order", [(0, 0, 1), (-4, 4, 1), (-4, -4, 1)], [(1, 0, 0), (1, SQRT3, 0), (1, -SQRT3, 0)]),
        ("equal_degree", [(0, 1, 1), (0, -1, 1)], [(1, 0, 1), (-1, 0, 1)]),
    ],
)
def test_endpoint_slices(closures, name, w0, winf):
    sys = closures[name]
    a, b = initial_slice(sys), terminal_slice(sys)
    assert a.point_set() == pts(*w0) and len(a.points) == len(w0)
    assert b.point_set() == pts(*winf) and len(b.points) == len(winf)
    assert not a.components and not b.components
    for sl in (a, b):
        for p in sl.points:
            assert slice_contains(sl, p)


def test_terminal_split_into_finite_and_infinite(closures):
    sl = terminal_slice(closures["imag_poles"])
    assert sl.finite_points == [ProjectivePoint(0, 0, 1)]
    assert sl.infinite_points == [ProjectivePoint(1, 0, 0)]
    assert sl.kind == "terminal"


def test_algebraic_terminal_points_are_certified(closures):
    sl = terminal_slice(closures["third_order"])
    alg = [p for p in sl.points if not p.is_exact]
    assert len(alg) == 2
    for p in alg:
        y = p.y
        assert isinstance(y, AlgebraicReal)
        assert y.defining_polynomial("y") == "y^2 - 3"
        lo, hi = y.interval(Fraction(1, 10 ** 10))
        assert hi - lo < Fraction(1, 10 ** 9)


def test_solve_slice_records_components():
    # the whole line at infinity vanishes: a component, not points
    sl = solve_slice([P("z*x", XYZ), P("z*y", XYZ)])
    assert sl.finite_points == [ProjectivePoint(0, 0, 1)]
    assert [c.patch for c in sl.components] == ["z=0,x=1"]


def test_solve_slice_empty():
    sl = solve_slice([P("x^2+y^2+z^2", XYZ), P("x", XYZ)])
    assert sl.empty


def test_naive_homogenization_admits_spurious_point(plants, closures):
    naive = naive_homogenization(plants["imag_poles"])
    spurious = ProjectivePoint(1, 1, 0)
    naive_polys = specialize(naive, "inf")
    assert slice_contains(naive_polys, spurious)
    closed = terminal_slice(closures["imag_poles"])
    assert spurious not in closed.point_set()
    assert not slice_contains(closed, spurious)


def test_naive_variety_contains_closure_slices(plants, closures):
    for name in ("imag_poles", "double_pole", "equal_degree"):
        naive = naive_homogenization(plants[name])
        for k in (0, Fraction(1, 3), 2, "inf"):
            sl = slice_at(closures[name], k)
            polys = specialize(naive, k)
            assert all(slice_contains(polys, p) for p in sl.points)


def test_slices_agree_with_sweep_on_finite_chart(plants, closures):
    for name in ("imag_poles", "double_pole", "third_order", "equal_degree"):
        G = plants[name]
        for k in (Fraction(1, 4), Fraction(1, 2), 2, 4):
            sl = slice_at(closures[name], k)
            exact = sorted((float(p.x), float(p.y)) for p in sl.finite_points)
            sp = sweep_conventional(G, [k])[0]
            real = sorted((x, y) for x, y in sp.roots if abs(y) < 1e-9)
            # real sweep roots are among the slice points; complex roots appear as (x, y) pairs too
            for r in sp.roots:
                assert min(math.dist(r, e) for e in exact) < 1e-6
            for e in exact:
                assert min(math.dist(r, e) for r in sp.roots) < 1e-6
            assert len(real) <= len(sp.roots)


def test_specialized_system_vanishes_at_sweep_points(plants, closures):
    for name in ("imag_poles", "double_pole", "third_order"):
        for k in (Fraction(1, 7), Fraction(5, 2), 30):
            polys = specialize(closures[name], k)
            for x, y in sweep_conventional(plants[name], [k])[0].roots:
                vals = {"x": x, "y": y, "z": 1.0}
                assert all(abs(p.eval_float(vals)) < 1e-8 * max(1, abs(x), abs(y)) ** 4 for p in polys)


# -- equal-degree intermediary slices --------------------------------------------------


@pytest.mark.parametrize("lam", [Fraction(1, 2), Fraction(1, 3), Fraction(3, 4)])
def test_equal_degree_small_gain_branch(closures, lam):
    sl = intermediary_slice(closures["equal_degree"], lam)
    assert not sl.infinite_points
    lifts = sorted(gnomonic_lift(p).as_list() for p in sl.points)
    y = math.sqrt((1 + lam) / 2)
    z = math.sqrt((1 - lam) / 2)
    expected = sorted([[0.0, -y, z], [0.0, y, z]])
    for a, b in zip(lifts, expected):
        assert all(abs(u - v) < 1e-9 for u, v in zip(a, b))


@pytest.mark.parametrize("lam", [Fraction(2), Fraction(3), Fraction(5, 4)])
def test_equal_degree_large_gain_branch(closures, lam):
    sl = intermediary_slice(closures["equal_degree"], lam)
    lifts = sorted(gnomonic_lift(p).as_list() for p in sl.points)
    x = math.sqrt((1 + lam) / (2 * lam))
    z = math.sqrt((lam - 1) / (2 * lam))
    expected = sorted([[-x, 0.0, z], [x, 0.0, z]])
    assert len(lifts) == 2
    for a, b in zip(lifts, expected):
        assert all(abs(u - v) < 1e-9 for u, v in zip(a, b))


def test_equal_degree_unit_gain_has_no_finite_points(closures):
    sl = intermediary_slice(closures["equal_degree"], 1)
    assert sl.finite_points == []
    assert sl.point_set() == pts((0, 1, 0), (1, 0, 0))


def test_intermediary_rejects_zero(closures):
    with pytest.raises(ValueError):
        intermediary_slice(closures["imag_poles"], 0)


# -- charts ----------------------------------------------------------------------------


def _symbolic_view(sys, patch):
    return affine_view(symbolic_intermediary(sys), patch).polys


def test_symbolic_system_variables(closures):
    sym = symbolic_intermediary(closures["imag_poles"])
    assert all(p.variables == SYMBOLIC_VARS for p in sym)
    assert any(same_up_to_scalar(p, P("y*(2*x+z*lam)", SYMBOLIC_VARS)) for p in sym)


def test_imag_poles_complementary_hyperbola(closures):
    view = _symbolic_view(closures["imag_poles"], "x")
    hyperbola = P("z^2-y^2-1", ("y", "z", "lam"))
    stripped = [p.strip_variable("y") for p in view if p.monomial_content()[0]]
    assert any(same_up_to_scalar(p, hyperbola) for p in stripped)


def test_double_pole_complementary_parabola(closures):
    view = _symbolic_view(closures["double_pole"], "x")
    V = ("y", "z", "lam")
    expected = [P("y*(2+z*lam)", V), P("1-y^2+z*lam+z^2*lam", V), P("y*(1+y^2+2*z)", V)]
    assert match_up_to_scalar(view, expected)
    parabola = P("y^2+2*z+1", V)
    assert any(same_up_to_scalar(p.strip_variable("y"), parabola) for p in view)


def test_double_pole_conventional_view(closures):
    view = _symbolic_view(closures["double_pole"], "z")
    V = ("x", "y", "lam")
    expected = [P("y*(2*x+lam)", V), P("x^2-y^2+lam*(x+1)", V), P("y*((x+1)^2+y^2-1)", V)]
    assert match_up_to_scalar(view, expected)


def test_third_order_complementary_elimination(closures):
    view = _symbolic_view(closures["third_order"], "x")
    V = ("y", "z", "lam")
    stripped = [p.strip_variable("y") for p in view]
    basis = buchberger(stripped, grevlex(*V)).elements
    l1 = P("y^2-32*z^2-16*z-3", V)
    l2 = P("(lam-256)*z^3-192*z^2-64*z-8", V)
    assert match_up_to_scalar(basis, [l1, l2])


def test_affine_view_at_fixed_gain(closures):
    view = affine_view(closures["double_pole"], "x", k=1)
    assert view.patch == "x"
    assert all("x" not in p.variables for p in view.polys)


def test_swap_patch_coords_initial_points(closures):
    w0 = initial_slice(closures["third_order"]).points
    swapped = {swap_patch_coords(p, "x") for p in w0}
    assert swapped == pts((1, 0, 0), (Fraction(-1, 4), -1, 1), (Fraction(-1, 4), 1, 1))


def test_asymptotes_of_third_order(closures):
    slopes = asymptote_directions(terminal_slice(closures["third_order"]), "z")
    assert slopes[1] == 0
    assert slopes[0] == -SQRT3 and slopes[2] == SQRT3


def test_complementary_asymptotes_of_imag_poles(closures):
    sl = initial_slice(closures["imag_poles"])
    assert asymptote_directions(sl, "x") == [-1, 1]


def test_vertical_asymptote():
    sl = solve_slice([P("x", XYZ), P("z", XYZ)])
    assert sl.point_set() == pts((0, 1, 0))
    assert asymptote_directions(sl, "z") == [None]


def test_complementary_coordinate_explodes_near_crossing_gain(closures):
    view = affine_view(symbolic_intermediary(closures["third_order"]), "x").polys
    V = ("y", "z", "lam")
    l2 = next(g for g in buchberger([p.strip_variable("y") for p in view], grevlex(*V)).elements if g.degree("lam"))
    for lam in (Fraction(256) - Fraction(1, 10 ** 4), Fraction(256) + Fraction(1, 10 ** 4)):
        roots = [r.refined for r in real_roots(l2.subs({"lam": lam, "y": 0}).embed(("z",)))]
        assert len(roots) == 1 and abs(roots[0]) > 1e3
    # exactly at the crossing gain the cubic drops to a quadratic with no real root
    assert real_roots(l2.subs({"lam": 256, "y": 0}).embed(("z",))) == []
