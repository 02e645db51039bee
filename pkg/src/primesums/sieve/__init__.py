"""
Sieve module for prime-derived tables.

This module provides the segmented prime table, the smallest-prime-factor
sieve, and the binary cache they can be stored in.
"""

from .primeEngine import (
    FactorSieve,
    OddSemiprimeProducts,
    PrimeTable,
    build_factor_sieve,
    build_prime_table,
    enumerate_odd_semiprime_products,
    odd_semiprime_product_set,
    omega,
    theta,
)
from .primeCache import cached_prime_table, load_prime_table, save_prime_table
from .sieveConfig import cache_format, sieve_settings

__all__ = [
    "FactorSieve",
    "OddSemiprimeProducts",
    "PrimeTable",
    "build_factor_sieve",
    "build_prime_table",
    "cached_prime_table",
    "enumerate_odd_semiprime_products",
    "load_prime_table",
    "odd_semiprime_product_set",
    "omega",
    "save_prime_table",
    "theta",
    "cache_format",
    "sieve_settings",
]
