"""
Exact dyadic logarithms.

floor(log2(x/n)) is decided in integer arithmetic only: it is the largest b
with n * 2**b <= x, i.e. ``(x // n).bit_length() - 1``. Only the fractional
part log2(x / (n * 2**b)), a number in [0, 1), ever touches floating point,
so a ratio sitting exactly on a power of two can never be misclassified.
"""
from __future__ import annotations

#Core libraries
import math
from dataclasses import dataclass

#Third party libraries
import mpmath
import numpy as np

#Local libraries
from ..errors import DomainError

LN2 = math.log(2.0)
# Largest double below 1.0
BELOW_ONE = math.nextafter(1.0, 0.0)
# int64 products and exact float conversion stop here
ARRAY_LIMIT = 2 ** 53


@dataclass(frozen=True)
class DyadicLog:
    """log2(x/n) split into its exact integer part and its fractional part."""
    int_part: int
    frac_part: float

    @property
    def value(self) -> float:
        return self.int_part + self.frac_part


def _check_pair(x: int, n: int) -> None:
    if n == 0:
        raise DomainError("dyadic logarithm of x/0 is undefined")
    if n < 1 or x < 1:
        raise DomainError(f"dyadic logarithm needs positive integers, got x={x}, n={n}")
    if n > x:
        raise DomainError(f"dyadic logarithm needs n <= x, got n={n} > x={x}")


def dyadic_floor(x: int, n: int) -> int:
    """Largest b >= 0 with n * 2**b <= x."""
    _check_pair(x, n)
    # n * 2**b <= x  <=>  2**b <= x // n
    return (x // n).bit_length() - 1


def is_dyadic_ratio(x: int, n: int) -> bool:
    """True when x/n is an exact power of two (n | x and the quotient is 2**k)."""
    _check_pair(x, n)
    quotient, remainder = divmod(x, n)
    return remainder == 0 and (quotient & (quotient - 1)) == 0


def dyadic_frac(x: int, n: int) -> float:
    """Fractional part of log2(x/n), in [0, 1), exactly 0 on powers of two."""
    b = dyadic_floor(x, n)
    denominator = n << b
    excess = x - denominator
    if excess == 0:
        return 0.0
    # x / (n 2^b) = 1 + excess/denominator with 0 < excess/denominator < 1
    frac = math.log1p(excess / denominator) / LN2
    return min(frac, BELOW_ONE)


def dyadic_log(x: int, n: int) -> DyadicLog:
    return DyadicLog(int_part=dyadic_floor(x, n), frac_part=dyadic_frac(x, n))


def dyadic_frac_mp(x: int, n: int, prec: int = 128):
    """High precision fractional part (mpmath), for oracles and escalation."""
    b = dyadic_floor(x, n)
    with mpmath.workprec(max(prec, x.bit_length() + 8)):
        return mpmath.log(mpmath.mpf(x) / mpmath.mpf(n << b), 2)

#------------------------------------------------------------------------------
# Vectorized versions (x < 2**53)
#------------------------------------------------------------------------------
def _check_array(x: int, ns: np.ndarray) -> None:
    if x >= ARRAY_LIMIT:
        raise DomainError(f"array dyadic logarithms need x < 2**53, got {x}")
    if ns.size and (int(ns.min()) < 1 or int(ns.max()) > x):
        raise DomainError(f"every n must satisfy 1 <= n <= x = {x}")


def dyadic_floor_array(x: int, ns) -> np.ndarray:
    """dyadic_floor(x, n) for every n in ``ns``."""
    ns = np.asarray(ns, dtype=np.int64)
    _check_array(x, ns)
    quotients = x // ns
    # quotients < 2**53 convert exactly; frexp's exponent is the bit length
    return np.frexp(quotients.astype(np.float64))[1].astype(np.int64) - 1


def dyadic_frac_array(x: int, ns) -> np.ndarray:
    """dyadic_frac(x, n) for every n in ``ns``."""
    ns = np.asarray(ns, dtype=np.int64)
    floors = dyadic_floor_array(x, ns)
    denominators = ns << floors
    excess = x - denominators
    frac = np.log1p(excess / denominators) / LN2
    return np.minimum(frac, BELOW_ONE)

#------------------------------------------------------------------------------
# Odd dyadic sums
#------------------------------------------------------------------------------
def _odd_count_upto(y: int) -> int:
    return (y + 1) // 2


def odd_dyadic_sum(x: int, method: str = "blocks", chunk: int = 1 << 22) -> int:
    """Sum of dyadic_floor(x, n) over odd n <= x.

    ``"direct"`` evaluates every term. ``"blocks"`` groups the odd n sharing
    the same floor b, which are exactly those in (x >> (b+1), x >> b], and
    runs in O(log x).
    """
    if x < 1:
        raise DomainError(f"x must be a positive integer, got {x}")
    if method == "blocks":
        total = 0
        b = 0
        while x >> b:
            high = x >> b
            low = x >> (b + 1)
            total += b * (_odd_count_upto(high) - _odd_count_upto(low))
            b += 1
        return total
    if method == "direct":
        if x >= ARRAY_LIMIT:
            return sum(dyadic_floor(x, n) for n in range(1, x + 1, 2))
        total = 0
        for start in range(1, x + 1, 2 * chunk):
            ns = np.arange(start, min(start + 2 * chunk, x + 1), 2, dtype=np.int64)
            total += int(dyadic_floor_array(x, ns).sum())
        return total
    raise ValueError(f"unknown method {method!r}; use 'blocks' or 'direct'")
