"""Splitting perfect polynomials over F_{p^2}.

A polynomial A is perfect when the sum of its monic divisors equals A
itself.  This package provides exact tools around the splitting case:

- quadratic-extension field arithmetic (``field``),
- dense/factored polynomials and the divisor-sum sigma (``polynomial``),
- the exponent-level perfection criteria (``perfection``),
- the block-circulant exponent system and exact rank/kernel work over Q
  and Q(omega) (``circulant``),
- exhaustive search and classification of perfect exponent patterns
  (``search``),
- a command-line front end (``cli``).
"""

from .field import (
    ExtElement,
    FieldSpec,
    divisors,
    is_prime,
    make_field,
    nth_roots_of_unity,
)
from .polynomial import (
    DEFAULT_DEGREE_BOUND,
    DegreeBoundError,
    DensePoly,
    NonSplittingError,
    SplitPoly,
    expand,
    is_perfect,
    sigma_bruteforce,
    sigma_closed_form,
    sigma_prime_power,
    sigma_split,
)
from .perfection import (
    CosetFactor,
    SplitSpec,
    check_exponent_criterion,
    coset_decompose,
    criterion_agrees_with_sigma,
    is_trivially_perfect,
    lambda_set,
)
from .circulant import (
    CyclotomicNumber,
    ExponentSystem,
    Rational,
    RankReport,
    build_delta,
    build_delta_tilde,
    build_system,
    circulant_eigenvalues,
    coefficient_sum,
    cyclotomic_constant_test,
    rank_and_kernel,
    regroup_permutation,
    verify_rank_claims,
)
from .search import (
    Classification,
    classify,
    classify_spec,
    enumerate_specs,
    registered_families,
    search_perfect,
    shift_spec,
)

__version__ = "0.1.0"

__all__ = [
    "ExtElement",
    "FieldSpec",
    "divisors",
    "is_prime",
    "make_field",
    "nth_roots_of_unity",
    "DEFAULT_DEGREE_BOUND",
    "DegreeBoundError",
    "DensePoly",
    "NonSplittingError",
    "SplitPoly",
    "expand",
    "is_perfect",
    "sigma_bruteforce",
    "sigma_closed_form",
    "sigma_prime_power",
    "sigma_split",
    "CosetFactor",
    "SplitSpec",
    "check_exponent_criterion",
    "coset_decompose",
    "criterion_agrees_with_sigma",
    "is_trivially_perfect",
    "lambda_set",
    "CyclotomicNumber",
    "ExponentSystem",
    "Rational",
    "RankReport",
    "build_delta",
    "build_delta_tilde",
    "build_system",
    "circulant_eigenvalues",
    "coefficient_sum",
    "cyclotomic_constant_test",
    "rank_and_kernel",
    "regroup_permutation",
    "verify_rank_claims",
    "Classification",
    "classify",
    "classify_spec",
    "enumerate_specs",
    "registered_families",
    "search_perfect",
    "shift_spec",
    "__version__",
]
