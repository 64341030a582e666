"""Hilbert-Samuel data, arithmetic degrees and dimension filtrations of
modules over polynomial rings."""

from .poly import GREVLEX, LEX, QQ, MonomialOrder, PolyRing, Polynomial, PrimeField, compare_monomials, poly_arith
from .groebner import INFINITE, GroebnerBasis, groebner_basis, normal_form, syzygies
from .ideals import Ideal, ideal_op
from .monomial import MonomialIdeal, MonomialPrime
from .session import parse_session, format_session

__version__ = "0.1.0"
