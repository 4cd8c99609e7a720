"""Certified computations for sums of two primes and a bounded number of powers of two."""

from .admissibility import AdmissibilityConfig, admissible_c3_min, constrained_h_min
from .c3 import c3_lower_bound, c3_report
from .constants import ConstantSet, c2_partial_sum, c3_tail_bound, preset
from .expsum import ExpSumConfig, MeasureEnclosure, delta_enclosure, g_eval, g_range, lambda_for_c
from .interval import CertifiedInterval
from .kthreshold import KThresholdResult, solve_k, solve_k_selfconsistent
from .ntcore import factorize, is_two_primitive_root, k_value, mult_order_2
from .residues import ResidueCountVector, h_bruteforce, h_closed_form, h_min, h_vector
from .verifier import RepresentationWitness, min_powers, sweep

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityConfig",
    "CertifiedInterval",
    "ConstantSet",
    "ExpSumConfig",
    "KThresholdResult",
    "MeasureEnclosure",
    "RepresentationWitness",
    "ResidueCountVector",
    "admissible_c3_min",
    "c2_partial_sum",
    "c3_lower_bound",
    "c3_report",
    "c3_tail_bound",
    "constrained_h_min",
    "delta_enclosure",
    "factorize",
    "g_eval",
    "g_range",
    "h_bruteforce",
    "h_closed_form",
    "h_min",
    "h_vector",
    "is_two_primitive_root",
    "k_value",
    "lambda_for_c",
    "min_powers",
    "mult_order_2",
    "preset",
    "solve_k",
    "solve_k_selfconsistent",
    "sweep",
]
