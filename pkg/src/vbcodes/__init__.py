"""Binary linear codes from (vectorial) Boolean functions: construction,
weight distributions from Walsh spectra, and minimality checks."""
__version__ = "0.1.0"

from .errors import BudgetExceeded, ConstraintViolation, VbcodesError, VerificationFailure
from .gf2 import FieldContext, Subspace, field
from .boolfun import BooleanFunction, WalshSpectrum, fwht
from .vectorial import VectorialFunction, all_spectra, classify_vectorial
from .constructions import build_family
from .codes import LinearCode, WeightDistribution, build_code, weight_distribution
from .minimality import (ab_check, bound_argument, genericAB_criterion, is_minimal_bruteforce,
                         minimality_walsh_criterion)

__all__ = [
    "BooleanFunction", "BudgetExceeded", "ConstraintViolation", "FieldContext", "LinearCode",
    "Subspace", "VbcodesError", "VectorialFunction", "VerificationFailure", "WalshSpectrum",
    "WeightDistribution", "ab_check", "all_spectra", "bound_argument", "build_code", "build_family",
    "classify_vectorial", "field", "fwht", "genericAB_criterion", "is_minimal_bruteforce",
    "minimality_walsh_criterion", "weight_distribution",
]
