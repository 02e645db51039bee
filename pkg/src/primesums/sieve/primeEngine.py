"""
Prime tables and factor sieves.

This module builds every prime-derived quantity the rest of the package
reads: the ordered primes, pi(y), theta(y), smallest prime factors,
big-Omega, and the odd semiprime product set.
"""
from __future__ import annotations

#Core libraries
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

#Third party libraries
import numpy as np

#Local libraries
from ..errors import DomainError, RangeError, ResourceError, require_domain, require_range
from ..summation import EPS, compensated_cumsum
from .sieveConfig import sieve_settings
from . import utils as sieve_utils

logger = logging.getLogger(__name__)

# Block length of the compensated prefix sum behind theta
THETA_BLOCK = 1024


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array

#------------------------------------------------------------------------------
# Prime table
#------------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Immutable product of the segmented sieve.

    Attributes
    ----------
    limit
        Every prime <= limit is listed
    primes
        Strictly increasing int64 array of the primes
    theta_prefix
        theta_prefix[k] = log p_1 + ... + log p_{k+1}, compensated
    odd_bits
        Bit-packed (big-endian bit order) primality of the odd numbers,
        bit i standing for 2*i + 1
    """
    limit: int
    primes: np.ndarray = field(repr=False)
    theta_prefix: np.ndarray = field(repr=False)
    odd_bits: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return int(self.primes.size)

    def _check(self, y: int, what: str = "query") -> None:
        require_range(y, self.limit, what)

    def pi(self, y: int) -> int:
        """Number of primes <= y."""
        self._check(y)
        if y < 2:
            return 0
        return int(np.searchsorted(self.primes, y, side="right"))

    def pi_array(self, ys) -> np.ndarray:
        ys = np.asarray(ys, dtype=np.int64)
        if ys.size and int(ys.max()) > self.limit:
            raise RangeError(f"query {int(ys.max())} exceeds the table limit {self.limit}")
        return np.searchsorted(self.primes, ys, side="right")

    def theta(self, y: int) -> float:
        """Sum of log p over primes p <= y."""
        count = self.pi(y)
        if count == 0:
            return 0.0
        return float(self.theta_prefix[count - 1])

    def theta_error(self, y: int) -> float:
        """Error bound on theta(y): one ulp per log plus the in-block cumsum drift."""
        return (THETA_BLOCK + 4) * EPS * self.theta(y)

    def is_prime(self, n: int) -> bool:
        self._check(n)
        if n < 2:
            return False
        if n == 2:
            return True
        if n % 2 == 0:
            return False
        index = n >> 1
        return bool((self.odd_bits[index >> 3] >> (7 - (index & 7))) & 1)

    def nth_prime(self, k: int) -> int:
        """The k-th prime, 1-based."""
        if k < 1:
            raise DomainError(f"prime index must be >= 1, got {k}")
        if k > self.primes.size:
            raise RangeError(
                f"p_{k} lies beyond the table limit {self.limit} "
                f"(only {self.primes.size} primes listed)"
            )
        return int(self.primes[k - 1])

    def primes_upto(self, y: int) -> np.ndarray:
        return self.primes[:self.pi(y)]

    def odd_primes_upto(self, y: int) -> np.ndarray:
        return self.primes[1:self.pi(y)] if y >= 3 else self.primes[:0]


def build_prime_table(
    limit: int,
    segment_odd_count: Optional[int] = None,
    workers: Optional[int] = None,
    memory_budget_bytes: Optional[int] = None,
    ) -> PrimeTable:
    """Run the segmented odd-only sieve up to ``limit``.

    Segments are sieved independently (in worker processes when
    ``workers > 1``) and reassembled in segment order, so the table does not
    depend on the worker count.
    """
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    segment_odd_count = segment_odd_count or sieve_settings["SEGMENT_ODD_COUNT"]
    workers = workers or sieve_settings["WORKERS"]
    budget = memory_budget_bytes or sieve_settings["MEMORY_BUDGET_BYTES"]
    if segment_odd_count % 8:
        raise DomainError(f"segment size must be a multiple of 8, got {segment_odd_count}")

    required = sieve_utils.estimate_table_bytes(limit)
    if required > budget:
        raise ResourceError(
            f"a prime table up to {limit} needs about {required} bytes, "
            f"over the budget of {budget} bytes",
            required_bytes=required,
            budget_bytes=budget,
        )

    base = sieve_utils.simple_sieve(math.isqrt(limit))
    bounds = sieve_utils.segment_bounds(limit, segment_odd_count)
    logger.info(
        "sieving up to %d in %d segments with %d worker(s)", limit, len(bounds), workers
    )

    firsts = [b[0] for b in bounds]
    counts = [b[1] for b in bounds]
    bases = [base] * len(bounds)
    if workers > 1 and len(bounds) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            masks = list(executor.map(sieve_utils.sieve_odd_segment, firsts, counts, bases))
    else:
        masks = list(map(sieve_utils.sieve_odd_segment, firsts, counts, bases))

    odd_mask = np.concatenate(masks)
    odd_bits = np.packbits(odd_mask, bitorder="big")
    primes = np.concatenate((
        np.array([2], dtype=np.int64),
        2 * np.flatnonzero(odd_mask).astype(np.int64) + 1,
    ))
    return table_from_primes(limit, primes, odd_bits)


def table_from_primes(
    limit: int,
    primes: np.ndarray,
    odd_bits: Optional[np.ndarray] = None,
    ) -> PrimeTable:
    """Assemble a PrimeTable from an already known prime list."""
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    if odd_bits is None:
        odd_mask = np.zeros((limit + 1) // 2, dtype=bool)
        odd_mask[primes[1:] // 2] = True
        odd_bits = np.packbits(odd_mask, bitorder="big")
    theta_prefix = compensated_cumsum(np.log(primes.astype(np.float64)), block=THETA_BLOCK)
    return PrimeTable(
        limit=int(limit),
        primes=_frozen(primes),
        theta_prefix=_frozen(theta_prefix),
        odd_bits=_frozen(odd_bits),
    )


def theta(y: int, table: PrimeTable) -> float:
    """Chebyshev theta: compensated sum of log p over primes p <= y."""
    return table.theta(y)

#------------------------------------------------------------------------------
# Factor sieve
#------------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class FactorSieve:
    """Smallest-prime-factor array for 2 <= n <= limit.

    spf[0] and spf[1] are 0.
    """
    limit: int
    spf: np.ndarray = field(repr=False)

    def _check(self, n: int) -> None:
        if n < 1:
            raise DomainError(f"expected a positive integer, got {n}")
        require_range(n, self.limit, "n")

    def factorize(self, n: int) -> list:
        """Return [(p, e), ...] with p increasing."""
        self._check(n)
        factors = []
        while n > 1:
            p = int(self.spf[n])
            exponent = 0
            while n % p == 0:
                n //= p
                exponent += 1
            factors.append((p, exponent))
        return factors

    def omega(self, n: int) -> int:
        self._check(n)
        count = 0
        while n > 1:
            n //= int(self.spf[n])
            count += 1
        return count

    @cached_property
    def omega_array(self) -> np.ndarray:
        """Big-Omega of every n in [0, limit] (entries 0 and 1 are 0)."""
        omega_values = np.zeros(self.limit + 1, dtype=np.int8)
        rest = np.arange(self.limit + 1, dtype=self.spf.dtype)
        active = rest > 1
        while active.any():
            divisor = np.where(active, self.spf[rest], 1)
            rest = rest // divisor
            omega_values += active
            active = rest > 1
        return _frozen(omega_values)


def build_factor_sieve(
    limit: int,
    table: Optional[PrimeTable] = None,
    memory_budget_bytes: Optional[int] = None,
    ) -> FactorSieve:
    if limit < 2:
        raise DomainError(f"factor sieve limit must be >= 2, got {limit}")
    budget = memory_budget_bytes or sieve_settings["MEMORY_BUDGET_BYTES"]
    required = sieve_utils.estimate_table_bytes(limit, with_factor_sieve=True)
    if required > budget:
        raise ResourceError(
            f"a factor sieve up to {limit} needs about {required} bytes, "
            f"over the budget of {budget} bytes",
            required_bytes=required,
            budget_bytes=budget,
        )
    dtype = np.int32 if limit < 2 ** 31 else np.int64
    spf = np.zeros(limit + 1, dtype=dtype)
    if table is not None and table.limit >= math.isqrt(limit):
        small = table.primes_upto(math.isqrt(limit))
    else:
        small = sieve_utils.simple_sieve(math.isqrt(limit))
    for p in small:
        p = int(p)
        multiples = spf[p * p::p]
        multiples[multiples == 0] = p
    unmarked = np.flatnonzero(spf == 0)
    unmarked = unmarked[unmarked >= 2]
    spf[unmarked] = unmarked
    logger.info("factor sieve built up to %d", limit)
    return FactorSieve(limit=int(limit), spf=_frozen(spf))


def omega(n: int, sieve: FactorSieve) -> int:
    """Number of prime factors of n counted with multiplicity (omega(1) = 0)."""
    return sieve.omega(n)

#------------------------------------------------------------------------------
# Odd semiprime products
#------------------------------------------------------------------------------
def _require_semiprime_domain(x: int, table: PrimeTable) -> None:
    require_domain(x >= 5, f"the odd semiprime count needs x >= 5, got x = {x}")
    require_range(x, table.limit, "x")


def enumerate_odd_semiprime_products(
    x: int,
    table: PrimeTable,
    memory_budget_bytes: Optional[int] = None,
    ) -> int:
    """Count the distinct products p*q, p <= q, of odd primes <= x.

    The products are generated block by block (p_j times p_j, ..., p_m) and
    deduplicated with ``np.unique``, so the count is of the set itself, not
    of the index pairs.
    """
    _require_semiprime_domain(x, table)
    odd = table.odd_primes_upto(x)
    m = int(odd.size)
    pairs = m * (m + 1) // 2
    budget = memory_budget_bytes or sieve_settings["MEMORY_BUDGET_BYTES"]
    if 16 * pairs > budget:
        raise ResourceError(
            f"materializing {pairs} products needs about {16 * pairs} bytes",
            required_bytes=16 * pairs,
            budget_bytes=budget,
        )
    if m == 0:
        return 0
    blocks = [odd[j] * odd[j:] for j in range(m)]
    return int(np.unique(np.concatenate(blocks)).size)


def odd_semiprime_product_set(x: int, table: PrimeTable) -> set:
    """Deduplicating-set materialization of the product set (small x)."""
    _require_semiprime_domain(x, table)
    odd = [int(p) for p in table.odd_primes_upto(x)]
    return {p * q for j, p in enumerate(odd) for q in odd[j:]}


class OddSemiprimeProducts:
    """Grows the odd semiprime product set as x increases.

    The set only changes when x passes an odd prime, so sweeping x over a
    range costs one insertion per product overall.
    """

    def __init__(self, table: PrimeTable):
        self.table = table
        self.x = 2
        self._odd = []
        self._products = set()

    def advance_to(self, x: int) -> int:
        """Move to ``x`` (non-decreasing) and return the set size there."""
        _require_semiprime_domain(x, self.table)
        if x < self.x:
            raise DomainError(f"cannot move back from x = {self.x} to x = {x}")
        lo = self.table.pi(self.x)
        hi = self.table.pi(x)
        for p in self.table.primes[max(lo, 1):hi]:
            p = int(p)
            self._odd.append(p)
            self._products.update(q * p for q in self._odd)
        self.x = x
        return len(self._products)

    @property
    def count(self) -> int:
        return len(self._products)

    @property
    def odd_prime_count(self) -> int:
        return len(self._odd)
