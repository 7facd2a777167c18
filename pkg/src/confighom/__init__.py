"""Exact homology of symmetric products, truncated products and braid spaces."""

from .chaincore import (
    F2,
    Q,
    Z,
    ChainComplex,
    Coefficients,
    Fp,
    GradedGroup,
    homology,
    relative_homology,
    smith_normal_form,
)
from .errors import HypothesisError, MalformedComplexError, UnsupportedSpaceError

__version__ = "0.1.0"

__all__ = [
    "Z",
    "Q",
    "F2",
    "Fp",
    "Coefficients",
    "GradedGroup",
    "ChainComplex",
    "homology",
    "relative_homology",
    "smith_normal_form",
    "HypothesisError",
    "MalformedComplexError",
    "UnsupportedSpaceError",
]
