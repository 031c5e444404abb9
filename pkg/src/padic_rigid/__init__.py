"""Finite-precision laboratory for randomized p-adic group constructions."""

from .padic import (
    PadicApprox,
    PadicVector,
    basis_vector,
    padd,
    pmul,
    reduce_precision,
    unit_inverse,
    valuation,
)
from .polynomials import IntPolynomial, evaluate, parse_univariate, univariate
from .sampling import (
    Seed,
    SupportedElement,
    TreeCoefficients,
    partial_sum_b,
    sample_nearly_uniform,
    sample_support,
    sample_tree,
    sample_uniform,
    xi_of_branch,
)

__version__ = "0.1.0"

__all__ = [
    "PadicApprox",
    "PadicVector",
    "IntPolynomial",
    "Seed",
    "SupportedElement",
    "TreeCoefficients",
    "basis_vector",
    "evaluate",
    "padd",
    "parse_univariate",
    "partial_sum_b",
    "pmul",
    "reduce_precision",
    "sample_nearly_uniform",
    "sample_support",
    "sample_tree",
    "sample_uniform",
    "unit_inverse",
    "univariate",
    "valuation",
    "xi_of_branch",
]
