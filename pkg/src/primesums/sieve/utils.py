"""
Low level sieve helpers: the base sieve, one odd-only segment, and the
memory estimate used to refuse oversized builds.
"""
#Core libraries
import math

#Third party libraries
import numpy as np

#------------------------------------------------------------------------------
# Sieve kernels
#------------------------------------------------------------------------------
def simple_sieve(limit: int) -> np.ndarray:
    """Return all primes <= ``limit`` from a plain (non-segmented) sieve."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p::p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def sieve_odd_segment(
    first_index: int,
    odd_count: int,
    base_primes: np.ndarray,
    ) -> np.ndarray:
    """Sieve the odd numbers ``2*i + 1`` for i in [first_index, first_index + odd_count).

    Parameters
    ----------
    first_index:
        Odd index of the first number in the segment (number = 2*index + 1).
    odd_count:
        Number of odd numbers in the segment.
    base_primes:
        All primes up to the square root of the segment's last number.

    Returns
    -------
    np.ndarray
        Boolean mask, True where the corresponding odd number is prime.
    """
    low = 2 * first_index + 1
    high = low + 2 * odd_count  # exclusive
    mask = np.ones(odd_count, dtype=bool)
    if first_index == 0:
        mask[0] = False  # 1 is not prime

    for p in base_primes:
        p = int(p)
        if p == 2:
            continue
        p2 = p * p
        if p2 >= high:
            break
        start = max(p2, ((low + p - 1) // p) * p)
        if (start & 1) == 0:
            start += p
        if start >= high:
            continue
        mask[(start - low) // 2::p] = False
    return mask


def segment_bounds(limit: int, segment_odd_count: int) -> list:
    """Split the odd indices of [1, limit] into (first_index, odd_count) pieces."""
    total_odd = (limit + 1) // 2
    bounds = []
    for first in range(0, total_odd, segment_odd_count):
        bounds.append((first, min(segment_odd_count, total_odd - first)))
    return bounds

#------------------------------------------------------------------------------
# Memory estimates
#------------------------------------------------------------------------------
def approx_prime_count(limit: int) -> int:
    """Upper bound on pi(limit) (Rosser-Schoenfeld style, valid for limit >= 17)."""
    if limit < 17:
        return 7
    return int(1.25506 * limit / math.log(limit)) + 1


def estimate_table_bytes(limit: int, with_factor_sieve: bool = False) -> int:
    """Bytes needed for a prime table (and optionally a factor sieve) at ``limit``."""
    count = approx_prime_count(limit)
    # primes (int64) + theta prefix (float64) + packed odd bitmap
    table = 16 * count + (limit // 16 + 1)
    if with_factor_sieve:
        spf_itemsize = 4 if limit < 2 ** 31 else 8
        table += spf_itemsize * (limit + 1)
    return table


def nth_prime_upper_bound(n: int) -> int:
    """Rosser's bound p_n < n (log n + log log n) for n >= 6."""
    if n < 6:
        return 13
    return int(n * (math.log(n) + math.log(math.log(n)))) + 1
