"""Exact integer, polynomial and lattice kernels."""

from .ffield import GF, FiniteField, ff_poly_factor, fp_is_irreducible
from .intfactor import divisors, factor_integer, is_prime, prime_power
from .linalg import det, hnf, hnf_basis, smith_form, snf_invariants
from .poly import resultant, sturm_count
from .zzfactor import zz_poly_factor

__all__ = [
    "GF",
    "FiniteField",
    "det",
    "divisors",
    "factor_integer",
    "ff_poly_factor",
    "fp_is_irreducible",
    "hnf",
    "hnf_basis",
    "is_prime",
    "prime_power",
    "resultant",
    "smith_form",
    "snf_invariants",
    "sturm_count",
    "zz_poly_factor",
]
