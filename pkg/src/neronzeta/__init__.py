"""Exact zeta-series analysis from jumps and Neron data.

The input is a jump spectrum together with the Neron data (toric rank,
abelian rank, component count, abelian quotient class) at each divisor of the
degree ``e`` of the minimal extension with semi-abelian reduction.  From it
the package builds the zeta function both as a series and in closed form,
locates its pole, and checks the monodromy and Euler characteristic
identities that tie the pieces together.
"""

from .elliptic import KodairaType, elliptic_zeta, kodaira_input
from .gring import L, ONE, ZERO, AbelianClassSymbol, GRingElement, LaurentPoly, chi_top, poincare
from .jumps import (
    JumpSpectrum,
    ProfileError,
    ProfileRecord,
    ReductionProfile,
    SpectrumError,
    TamenessError,
    TraceFormulaError,
    base_change,
    conductor,
    elementary_divisors,
    make_profile,
    order_function,
    profile_at,
    unipotent_rank,
)
from .kernels import BACKEND
from .monodromy import (
    InconsistentSpectrumError,
    IntegralityError,
    IntPolynomial,
    alternating_trace,
    char_poly_sigma,
    check_hg_cyclotomic,
    check_jump_divisor,
    check_multiplicity_bound,
    cyclotomic,
    eigen_exponents,
    hi_char_poly,
)
from .results import CheckResult
from .zeta import (
    DegenerateSpecializationError,
    MotivicRational,
    MotivicSeries,
    PoleReport,
    chi_identity_check,
    closed_form,
    degree,
    expand,
    pole_analysis,
    series,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AbelianClassSymbol",
    "CheckResult",
    "DegenerateSpecializationError",
    "GRingElement",
    "InconsistentSpectrumError",
    "IntPolynomial",
    "IntegralityError",
    "JumpSpectrum",
    "KodairaType",
    "L",
    "LaurentPoly",
    "MotivicRational",
    "MotivicSeries",
    "ONE",
    "PoleReport",
    "ProfileError",
    "ProfileRecord",
    "ReductionProfile",
    "SpectrumError",
    "TamenessError",
    "TraceFormulaError",
    "ZERO",
    "alternating_trace",
    "base_change",
    "char_poly_sigma",
    "check_hg_cyclotomic",
    "check_jump_divisor",
    "check_multiplicity_bound",
    "chi_identity_check",
    "chi_top",
    "closed_form",
    "conductor",
    "cyclotomic",
    "degree",
    "eigen_exponents",
    "elementary_divisors",
    "elliptic_zeta",
    "expand",
    "hi_char_poly",
    "kodaira_input",
    "make_profile",
    "order_function",
    "pole_analysis",
    "poincare",
    "profile_at",
    "series",
    "unipotent_rank",
]
