"""Exact projective root locus of rational transfer functions."""

from .algebraic import AlgebraicReal
from .geometry import ProjectivePoint, SpherePoint, gnomonic_lift, gnomonic_project, normalize
from .groebner import GrobnerBasis, Ideal, buchberger, ideal_membership, reduce, s_polynomial
from .parsing import ParseError, parse_polynomial, parse_rational_expression
from .pencil import NotCoprimeError, PencilPair, RationalFunction, build_pencil, complex_split
from .pjrl import (
    HomogeneousSystem,
    LocusSlice,
    ParameterValue,
    affine_view,
    asymptote_directions,
    initial_slice,
    naive_homogenization,
    projective_closure,
    solve_slice,
    specialize,
    symbolic_intermediary,
    terminal_slice,
)
from .polycore import MonomialOrder, MultiPoly, dehomogenize, grevlex, homogenize, lex
from .solver import NotZeroDimensional, real_roots, solve_zero_dim, sweep_complementary, sweep_conventional

__version__ = "0.1.0"
