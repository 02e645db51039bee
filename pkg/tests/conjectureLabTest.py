"""Tests for the prime-window, collision and Goldbach scanners."""
from __future__ import annotations

import json
import math

import pytest

import oracles
from primesums.conjectures import conjectureLab, logFactorial
from primesums.conjectures.conjectureLab import (
    ScanRecord,
    UniformRegion,
    collision_threshold,
    find_collision,
    fit_epsilon_delta,
    goldbach_congruence,
    pigeonhole_applies,
    prime_window,
    scan,
    scan_prime_window,
    verify_witness,
)
from primesums.conjectures.logFactorial import LogFactorialCache
from primesums.errors import DomainError, InconclusiveError, RangeError
from primesums.utils import ScanKind, ScanStatus

#------------------------------------------------------------------------------
# log n!
#------------------------------------------------------------------------------
def test_log_factorial_against_mpmath():
    cache = LogFactorialCache()
    for n in (1, 2, 3, 10, 1000, 10 ** 4):
        total = cache.log_factorial(n)
        exact = float(oracles.log_factorial_mp(n))
        assert abs(total.value - exact) <= total.error_bound + 1e-300


def test_log_factorial_restarts_when_moving_back():
    cache = LogFactorialCache()
    later = cache.log_factorial(500).value
    earlier = cache.log_factorial(20).value
    assert earlier == pytest.approx(math.lgamma(21), rel=1e-14)
    assert cache.log_factorial(500).value == later


def test_log_factorial_bound_stays_inside_the_guard():
    cache = LogFactorialCache()
    assert 2.0 * cache.log_factorial(10 ** 5).error_bound < logFactorial.BOUNDARY_GUARD


def test_precision_floor():
    with pytest.raises(DomainError):
        LogFactorialCache(precision_bits=64)


def test_escalation_keeps_the_same_window(monkeypatch):
    plain = LogFactorialCache().window(50)
    monkeypatch.setattr(logFactorial, "BOUNDARY_GUARD", 1.0)
    escalated = LogFactorialCache().window(50)
    assert escalated.escalated and not plain.escalated
    assert (escalated.lam, escalated.mu) == (plain.lam, plain.mu)


def test_unresolvable_boundary_is_inconclusive(monkeypatch):
    monkeypatch.setattr(logFactorial, "BOUNDARY_GUARD", 1.0)
    monkeypatch.setattr(logFactorial, "ESCALATED_GUARD", 1.0)
    with pytest.raises(InconclusiveError):
        LogFactorialCache().window(50)

#------------------------------------------------------------------------------
# Prime window
#------------------------------------------------------------------------------
def test_window_at_three(table):
    record = prime_window(3, table)
    assert record.detail["lambda"] == 6
    assert record.detail["mu"] == 0
    assert (record.lower, record.upper) == (4, 8)
    assert record.target == 5
    assert record.status is ScanStatus.PASS


def test_window_at_four(table):
    record = prime_window(4, table)
    assert (record.detail["lambda"], record.detail["mu"]) == (9, 1)
    assert (record.lower, record.upper) == (6, 10)
    assert record.status is ScanStatus.PASS


def test_window_violations_are_recorded(table):
    # lambda_n grows like 2 n log n, twice as fast as p_n
    record = prime_window(10 ** 4, table)
    assert record.status is ScanStatus.VIOLATION
    assert record.target == 104_729
    assert record.lower > record.target
    assert record.witnesses == ((104_729,),)


def test_window_domain(table):
    with pytest.raises(DomainError):
        prime_window(2, table)
    with pytest.raises(RangeError):
        prime_window(len(table) + 1, table)


def test_window_status_matches_containment(table):
    result = scan_prime_window(range(3, 2001), table)
    for record in result.records:
        inside = record.lower < record.target < record.upper
        assert (record.status is ScanStatus.PASS) == inside
        assert verify_witness(record)


def test_window_scan_has_no_inconclusive_records(table):
    result = scan_prime_window(range(3, 10 ** 4 + 1), table)
    assert len(result.records) == 10 ** 4 - 2
    assert not any(r.status is ScanStatus.INCONCLUSIVE for r in result.records)
    assert [r.n for r in result.records] == list(range(3, 10 ** 4 + 1))


def test_window_scan_records_inconclusive(table, monkeypatch):
    monkeypatch.setattr(logFactorial, "BOUNDARY_GUARD", 1.0)
    monkeypatch.setattr(logFactorial, "ESCALATED_GUARD", 1.0)
    result = scan_prime_window([3, 4], table)
    assert [r.status for r in result.records] == [ScanStatus.INCONCLUSIVE] * 2
    assert result.region.count == 0

#------------------------------------------------------------------------------
# epsilon / delta
#------------------------------------------------------------------------------
def test_degenerate_fit_at_three(table):
    fit = fit_epsilon_delta(3, table)
    assert fit.degenerate
    assert fit.epsilon == 0.0
    assert fit.convention == "0**x = 0"
    assert math.ceil(6 - 0 + fit.delta) == 5


def test_fit_at_seven(table):
    # lambda = 20, mu = 2, p_7 = 17
    fit = fit_epsilon_delta(7, table)
    assert fit.found and not fit.degenerate
    epsilon, delta = fit.pair()
    assert 0.0 <= epsilon <= 1.0 and -2.0 <= delta <= 2.0
    assert math.ceil(20 - 2 ** (2 + epsilon) + delta) == 17


def test_fit_reaches_the_closed_delta_edge(table):
    # p_6 = 13 sits on the open window's lower end but ceil allows delta = -2
    assert prime_window(6, table).status is ScanStatus.VIOLATION
    fit = fit_epsilon_delta(6, table)
    assert fit.delta == -2.0


def test_fit_reports_none_when_impossible(table):
    fit = fit_epsilon_delta(10 ** 4, table)
    assert fit.pair() == (None, None)
    assert not fit.found


def test_every_found_fit_reproduces_p_n(table):
    cache = LogFactorialCache()
    for n in range(3, 400):
        params = cache.window(n)
        fit = fit_epsilon_delta(n, table, params=params)
        if not fit.found:
            continue
        s = conjectureLab._mu_power(params.mu, fit.epsilon)
        assert math.ceil(params.lam - s + fit.delta) == table.nth_prime(n), n


def test_uniform_region():
    cache = LogFactorialCache()
    primes = {3: 5, 4: 7, 5: 11}
    region = UniformRegion()
    for n in (3, 4):
        region.add(cache.window(n), primes[n])
    assert region.feasible().all()
    epsilon, delta = region.example()
    assert math.ceil(6 + delta) == 5 and math.ceil(8 + delta) == 7
    region.add(cache.window(5), primes[5])
    assert region.example() is None
    assert region.to_json()["feasible_epsilons"] == 0


def test_uniform_region_merge():
    cache = LogFactorialCache()
    left, right = UniformRegion(), UniformRegion()
    left.add(cache.window(3), 5)
    right.add(cache.window(5), 11)
    merged = left.merge(right)
    assert merged.count == 2
    assert not merged.feasible().any()

#------------------------------------------------------------------------------
# Collisions
#------------------------------------------------------------------------------
def test_collision_at_twenty(table):
    record = find_collision(20, table)
    assert record.status is ScanStatus.PASS
    assert record.witnesses == ((5, 11), (5, 7))
    assert record.detail["products"] == [55, 35]
    assert record.detail["rule"] == "wrapped"
    assert verify_witness(record)


def test_collision_threshold(table):
    assert collision_threshold(table, 100) == 13
    assert pigeonhole_applies(13, table)
    assert not pigeonhole_applies(15, table)


def test_collisions_wherever_pigeonhole_applies(table):
    for n in range(5, 10 ** 4 + 1):
        record = find_collision(n, table)
        if pigeonhole_applies(n, table):
            assert record.status is ScanStatus.PASS, n
        assert verify_witness(record), n


def test_collision_at_large_n(table):
    record = find_collision(10 ** 5, table)
    (pa, pb), (px, py) = record.witnesses
    assert (pa * pb - px * py) % 10 ** 5 == 0
    assert verify_witness(record)


def test_smallest_modulus_collides(table):
    # 3*5 = 15 and 5*5 = 25 are both 0 mod 5
    record = find_collision(5, table)
    assert record.status is ScanStatus.PASS
    assert record.witnesses == ((5, 5), (3, 5))
    assert verify_witness(record)
    with pytest.raises(DomainError):
        find_collision(4, table)


def test_modulus_without_collision(table):
    # 9, 15, 21, 25, 35, 49 leave residues 0, 6, 3, 7, 8, 4 mod 9
    record = find_collision(9, table)
    assert not pigeonhole_applies(9, table)
    assert record.status is ScanStatus.NOT_FOUND
    assert record.witnesses == ()
    assert verify_witness(record)

#------------------------------------------------------------------------------
# Goldbach congruence
#------------------------------------------------------------------------------
def test_goldbach_at_ten(table):
    record = goldbach_congruence(10, table)
    assert record.witnesses == ((3, 3, 7),)
    assert (3 * 3 + 3 * 7) % 10 == 0
    assert verify_witness(record)


def test_goldbach_at_six(table):
    assert goldbach_congruence(6, table).witnesses == ((5, 3, 3),)


@pytest.mark.parametrize("n", [4, 7, 2])
def test_goldbach_domain(table, n):
    with pytest.raises(DomainError):
        goldbach_congruence(n, table)


def test_goldbach_scan_to_one_hundred_thousand(table):
    records = list(scan(ScanKind.GOLDBACH_CONG, range(6, 10 ** 5 + 1, 2), table))
    assert all(record.status is ScanStatus.PASS for record in records)
    for record in records[::97]:
        (_, p_o, p_t), = record.witnesses
        assert p_o + p_t == record.n

#------------------------------------------------------------------------------
# Witness recomputation
#------------------------------------------------------------------------------
def test_tampered_witnesses_fail():
    bad_collision = ScanRecord(
        n=20, kind=ScanKind.COLLISION, lower=3, upper=20, target=20,
        witnesses=((5, 11), (3, 7)), status=ScanStatus.PASS,
    )
    same_pair = ScanRecord(
        n=20, kind=ScanKind.COLLISION, lower=3, upper=20, target=20,
        witnesses=((5, 7), (7, 5)), status=ScanStatus.PASS,
    )
    not_coprime = ScanRecord(
        n=12, kind=ScanKind.GOLDBACH_CONG, lower=3, upper=12, target=12,
        witnesses=((3, 5, 7),), status=ScanStatus.PASS,
    )
    assert not verify_witness(bad_collision)
    assert not verify_witness(same_pair)
    assert not verify_witness(not_coprime)


def test_scan_rejects_prime_window_kind(table):
    with pytest.raises(ValueError):
        list(scan(ScanKind.PRIME_WINDOW, [3], table))


def test_record_json_shape(table):
    record = find_collision(20, table).to_json()
    assert record["kind"] == "COLLISION"
    assert record["witnesses"] == [[5, 11], [5, 7]]
    assert record["status"] == "PASS"
    assert record["target"] == 20


def test_every_record_kind_serializes(table):
    records = [
        prime_window(3, table),
        prime_window(10 ** 4, table),
        find_collision(20, table),
        find_collision(9, table),
        goldbach_congruence(10, table),
    ]
    for record in records:
        text = json.dumps(record.to_json())
        assert json.loads(text)["n"] == record.n
    collision = json.loads(json.dumps(find_collision(20, table).to_json()))
    assert collision["products"] == [55, 35]
    assert collision["rule"] == "wrapped"
    region = scan_prime_window(range(3, 20), table).region.to_json()
    assert json.loads(json.dumps(region))["kind"] == "PRIME_WINDOW_UNIFORM"
