"""
Slow, obviously correct reference implementations used by the tests.
"""
from __future__ import annotations

import math
from fractions import Fraction

import mpmath


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def primes_upto(limit: int) -> list:
    """Plain list-based sieve of Eratosthenes."""
    if limit < 2:
        return []
    flags = [True] * (limit + 1)
    flags[0] = flags[1] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            for multiple in range(p * p, limit + 1, p):
                flags[multiple] = False
    return [n for n, flag in enumerate(flags) if flag]


def factorize_trial(n: int) -> list:
    factors = []
    d = 2
    while d * d <= n:
        exponent = 0
        while n % d == 0:
            n //= d
            exponent += 1
        if exponent:
            factors.append((d, exponent))
        d += 1
    if n > 1:
        factors.append((n, 1))
    return factors


def big_omega_trial(n: int) -> int:
    return sum(e for _, e in factorize_trial(n))


def dyadic_floor_loop(x: int, n: int) -> int:
    """Largest b with n * 2**b <= x, by doubling."""
    b = 0
    while n << (b + 1) <= x:
        b += 1
    return b


def dyadic_floor_fraction(x: int, n: int) -> int:
    """floor(log2(x/n)) via exact rational comparison."""
    ratio = Fraction(x, n)
    b = 0
    while Fraction(2) ** (b + 1) <= ratio:
        b += 1
    return b


def log_sum_mp(values, dps: int = 40):
    with mpmath.workdps(dps):
        return mpmath.fsum(mpmath.log(v) for v in values)


def log_factorial_mp(n: int, dps: int = 50):
    with mpmath.workdps(dps):
        return mpmath.log(mpmath.factorial(n))


def pi_count(x: int) -> int:
    return sum(1 for n in range(2, x + 1) if is_prime_trial(n))
