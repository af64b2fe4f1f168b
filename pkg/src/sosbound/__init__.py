"""Effective degree bounds and certificates for SOS relaxations over zero-dimensional ideals."""

from .assumption import AssumptionReport, check_at_infinity, check_bezout, full_report
from .certgen import Certificate, build_certificate, quotient_sqrt, sqrt_mod_power, verify_certificate
from .degbound import DegreeBoundReport, dim_graded_piece, frak_n, hilbert_coeffs, sos_order
from .gradpipe import certify_copositivity, check_gradient_assumption, gradient_relaxation, principal_minors_nonzero
from .groebner import QuotientAlgebra, groebner_basis, ideal_quotient, solve_variety, variety
from .polycore import Polynomial, parse_polynomial
from .sdp import SdpSolution, build_relaxation, hierarchy_sweep, relax

__version__ = "0.1.0"

__all__ = [
    "AssumptionReport",
    "Certificate",
    "DegreeBoundReport",
    "Polynomial",
    "QuotientAlgebra",
    "SdpSolution",
    "build_certificate",
    "build_relaxation",
    "certify_copositivity",
    "check_at_infinity",
    "check_bezout",
    "check_gradient_assumption",
    "dim_graded_piece",
    "frak_n",
    "full_report",
    "gradient_relaxation",
    "groebner_basis",
    "hierarchy_sweep",
    "hilbert_coeffs",
    "ideal_quotient",
    "parse_polynomial",
    "principal_minors_nonzero",
    "quotient_sqrt",
    "relax",
    "solve_variety",
    "sos_order",
    "sqrt_mod_power",
    "variety",
    "verify_certificate",
]
