"""Higher Jacobian ideals, Nash blowup algebras and motivic zeta functions of germs."""

from .poly import Polynomial, Substitution, parse_poly, substitute
from .jacobian import IdealGens, Version, jac_matrix, jacobian_ideal
from .groebner import MonomialOrder, groebner_basis, ideal_equal, local_dimension, standard_basis
from .nash import ContactWitness, nash_algebra
from .resolve import ResolutionGraph, compare_coverings, m_separate, resolve_curve
from .motivic import GroVal, RationalSeries, contact_locus_class, nearby_cycle, zeta

__version__ = "0.1.0"

__all__ = [
    "Polynomial",
    "Substitution",
    "parse_poly",
    "substitute",
    "IdealGens",
    "Version",
    "jac_matrix",
    "jacobian_ideal",
    "MonomialOrder",
    "groebner_basis",
    "standard_basis",
    "ideal_equal",
    "local_dimension",
    "ContactWitness",
    "nash_algebra",
    "ResolutionGraph",
    "resolve_curve",
    "m_separate",
    "compare_coverings",
    "GroVal",
    "RationalSeries",
    "contact_locus_class",
    "zeta",
    "nearby_cycle",
]
