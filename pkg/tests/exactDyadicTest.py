"""Tests for exact dyadic floors, fractional parts and odd dyadic sums."""
from __future__ import annotations

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies

import oracles
from primesums.errors import DomainError
from primesums.identities.exactDyadic import (
    BELOW_ONE,
    dyadic_floor,
    dyadic_floor_array,
    dyadic_frac,
    dyadic_frac_array,
    dyadic_frac_mp,
    dyadic_log,
    is_dyadic_ratio,
    odd_dyadic_sum,
)


def test_power_of_two_boundaries():
    """Every x = n * 2**k lands exactly on floor k with fraction 0."""
    misses = 0
    for n in range(1, 1001):
        for k in range(41):
            x = n << k
            misses += dyadic_floor(x, n) != k
            misses += dyadic_frac(x, n) != 0.0
            misses += not is_dyadic_ratio(x, n)
            # one below the boundary drops to the previous floor
            if k > 0:
                misses += dyadic_floor(x - 1, n) != k - 1
    assert misses == 0


def test_power_of_two_boundaries_vectorized():
    ns = np.arange(1, 1001, dtype=np.int64)
    for k in range(41):
        for n in (1, 3, 7, 999, 1000):
            x = n << k
            floors = dyadic_floor_array(x, ns[ns <= x])
            expected = [oracles.dyadic_floor_loop(x, int(m)) for m in ns[ns <= x]]
            assert floors.tolist() == expected
            assert dyadic_frac_array(x, [n])[0] == 0.0


@settings(max_examples=500, deadline=None)
@given(strategies.integers(min_value=1, max_value=2 ** 80), strategies.data())
def test_floor_matches_exact_rationals(x, data):
    n = data.draw(strategies.integers(min_value=1, max_value=x))
    b = dyadic_floor(x, n)
    assert n << b <= x < n << (b + 1)
    if x < 2 ** 40:
        assert b == oracles.dyadic_floor_fraction(x, n)


@settings(max_examples=300, deadline=None)
@given(strategies.integers(min_value=1, max_value=2 ** 60), strategies.data())
def test_fraction_matches_high_precision(x, data):
    n = data.draw(strategies.integers(min_value=1, max_value=x))
    frac = dyadic_frac(x, n)
    assert 0.0 <= frac <= BELOW_ONE
    assert abs(frac - float(dyadic_frac_mp(x, n))) < 1e-14


def test_worked_fraction_examples():
    # log2(20/3) = 2.737
    assert dyadic_floor(20, 3) == 2
    assert dyadic_frac(20, 3) == pytest.approx(0.7369655941662062, abs=1e-15)
    assert dyadic_frac(16, 3) == pytest.approx(math.log2(16 / 3) - 2, abs=1e-15)
    log = dyadic_log(20, 3)
    assert log.int_part == 2
    assert log.value == pytest.approx(math.log2(20 / 3), abs=1e-15)


def test_fraction_just_below_a_power_of_two():
    x = (1 << 60) - 1
    assert dyadic_floor(x, 1) == 59
    assert dyadic_frac(x, 1) <= BELOW_ONE


def test_array_and_scalar_agree():
    x = 987_654_321
    ns = np.arange(1, 20_000, 3, dtype=np.int64)
    floors = dyadic_floor_array(x, ns)
    fracs = dyadic_frac_array(x, ns)
    for i in range(0, ns.size, 97):
        n = int(ns[i])
        assert floors[i] == dyadic_floor(x, n)
        assert fracs[i] == pytest.approx(dyadic_frac(x, n), abs=1e-15)


def test_domain_errors():
    with pytest.raises(DomainError):
        dyadic_floor(5, 0)
    with pytest.raises(DomainError):
        dyadic_floor(5, 6)
    with pytest.raises(DomainError):
        dyadic_frac(0, 1)
    with pytest.raises(DomainError):
        dyadic_floor_array(2 ** 53, [1])
    with pytest.raises(DomainError):
        dyadic_floor_array(10, [0, 1])


@pytest.mark.parametrize("x", [1, 2, 3, 19, 20, 1023, 1024, 1025, 99_999])
def test_odd_sum_methods_agree(x):
    direct = odd_dyadic_sum(x, method="direct")
    assert direct == odd_dyadic_sum(x, method="blocks")
    assert direct == sum(oracles.dyadic_floor_loop(x, n) for n in range(1, x + 1, 2))


def test_odd_sum_small_chunks():
    assert odd_dyadic_sum(10_001, method="direct", chunk=16) == 5000


def test_odd_sum_unknown_method():
    with pytest.raises(ValueError):
        odd_dyadic_sum(10, method="guess")


def test_fraction_oracle_precision():
    value = dyadic_frac_mp(20, 3, prec=200)
    with mpmath.workprec(200):
        assert abs(value - (mpmath.log(mpmath.mpf(20) / 12, 2))) < mpmath.mpf(2) ** -190
