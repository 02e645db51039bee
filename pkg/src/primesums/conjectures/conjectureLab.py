"""
Conjecture scanners: the prime window around lambda_n, pigeonhole
collisions of odd semiprime products, and the Goldbach congruence.

Scanners record every outcome and keep going; a VIOLATION is data, not an
error.
"""
from __future__ import annotations

#Core libraries
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, List, Optional, Tuple

#Third party libraries
import numpy as np
from scipy.optimize import brentq

#Local libraries
from ..errors import InconclusiveError, require_domain, require_range
from ..sieve.primeEngine import PrimeTable
from ..utils import ScanKind, ScanStatus, to_jsonable
from .logFactorial import DEFAULT_PRECISION_BITS, LogFactorialCache, WindowParams

logger = logging.getLogger(__name__)

EPSILON_RANGE = (0.0, 1.0)
DELTA_RANGE = (-2.0, 2.0)
# epsilon grid for the range-uniform feasibility region
UNIFORM_GRID_POINTS = 101

#------------------------------------------------------------------------------
# Records
#------------------------------------------------------------------------------
@dataclass(frozen=True)
class ScanRecord:
    n: int
    kind: ScanKind
    lower: Optional[int]
    upper: Optional[int]
    target: int
    witnesses: tuple
    status: ScanStatus
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        record = {
            "kind": self.kind.value,
            "n": self.n,
            "lower": self.lower,
            "upper": self.upper,
            "target": self.target,
            "witnesses": [list(w) for w in self.witnesses],
            "status": self.status.value,
        }
        for key, value in self.detail.items():
            record[key] = to_jsonable(value)
        return record

#------------------------------------------------------------------------------
# Prime window
#------------------------------------------------------------------------------
def _window_params(n: int, cache: Optional[LogFactorialCache]) -> WindowParams:
    cache = cache if cache is not None else LogFactorialCache()
    return cache.window(n)


def prime_window(
    n: int,
    table: PrimeTable,
    cache: Optional[LogFactorialCache] = None,
    params: Optional[WindowParams] = None,
    ) -> ScanRecord:
    """Is p_n strictly inside ]lambda_n - mu_n**3 - 2, lambda_n - mu_n**2 + 2[ ?"""
    require_domain(n > 2, f"the prime window is stated for n > 2, got n = {n}")
    p = table.nth_prime(n)
    params = params if params is not None else _window_params(n, cache)
    inside = params.lower < p < params.upper
    status = ScanStatus.PASS if inside else ScanStatus.VIOLATION
    if not inside:
        logger.debug("prime window violated at n=%d: p_n=%d not in ]%d, %d[",
                     n, p, params.lower, params.upper)
    return ScanRecord(
        n=n,
        kind=ScanKind.PRIME_WINDOW,
        lower=params.lower,
        upper=params.upper,
        target=p,
        witnesses=((p,),),
        status=status,
        detail={
            "lambda": params.lam,
            "mu": params.mu,
            "log_factorial": params.log_factorial,
            "escalated": params.escalated,
        },
    )


def _mu_power(mu: int, epsilon: float) -> float:
    # 0**x = 0 and 1**x = 1 for every exponent used here
    if mu in (0, 1):
        return float(mu)
    return float(mu) ** (2.0 + epsilon)


def _delta_interval(s: float, a: int) -> Tuple[float, float]:
    """Open-closed interval of delta with ceil(lambda - s + delta) = p, a = lambda - p."""
    return s - a - 1.0, s - a


def _pick_delta(s: float, a: int) -> Optional[float]:
    """A delta in DELTA_RANGE with ceil(lambda - s + delta) = lambda - a, if any."""
    low, high = _delta_interval(s, a)
    high = min(high, DELTA_RANGE[1])
    if low >= DELTA_RANGE[0]:
        return 0.5 * (low + high) if low < high else None
    if high < DELTA_RANGE[0]:
        return None
    return 0.5 * (DELTA_RANGE[0] + high)


@dataclass(frozen=True)
class EpsilonDeltaFit:
    """One (epsilon, delta) with p_n = ceil(lambda_n - mu_n**(2 + epsilon) + delta)."""
    n: int
    epsilon: Optional[float]
    delta: Optional[float]
    degenerate: bool = False
    convention: Optional[str] = None

    @property
    def found(self) -> bool:
        return self.epsilon is not None and self.delta is not None

    def pair(self) -> Tuple[Optional[float], Optional[float]]:
        return self.epsilon, self.delta


def fit_epsilon_delta(
    n: int,
    table: PrimeTable,
    cache: Optional[LogFactorialCache] = None,
    params: Optional[WindowParams] = None,
    ) -> EpsilonDeltaFit:
    """Find epsilon in [0, 1] and delta in [-2, 2] reproducing p_n, if any exist.

    With s = mu**(2 + epsilon) and a = lambda - p_n the ceiling equation holds
    exactly for delta in (s - a - 1, s - a]. A target s inside
    [mu**2, mu**3] compatible with DELTA_RANGE is chosen first, then epsilon
    is recovered from mu**(2 + epsilon) = s by bisection.
    """
    require_domain(n > 2, f"the prime window is stated for n > 2, got n = {n}")
    p = table.nth_prime(n)
    params = params if params is not None else _window_params(n, cache)
    lam, mu = params.lam, params.mu
    a = lam - p

    if mu in (0, 1):
        delta = _pick_delta(float(mu), a)
        return EpsilonDeltaFit(
            n=n,
            epsilon=0.0 if delta is not None else None,
            delta=delta,
            degenerate=True,
            convention=f"{mu}**x = {mu}",
        )

    s_low = max(float(mu ** 2), a - 2.0)
    s_high = min(float(mu ** 3), a + 3.0)
    if s_low > s_high or (s_low == s_high and s_high == a + 3.0):
        return EpsilonDeltaFit(n=n, epsilon=None, delta=None)
    s_target = 0.5 * (s_low + s_high)

    def residual(epsilon: float) -> float:
        return _mu_power(mu, epsilon) - s_target

    if residual(EPSILON_RANGE[0]) >= 0.0:
        epsilon = EPSILON_RANGE[0]
    elif residual(EPSILON_RANGE[1]) <= 0.0:
        epsilon = EPSILON_RANGE[1]
    else:
        epsilon = brentq(residual, *EPSILON_RANGE, xtol=1e-15)
    delta = _pick_delta(_mu_power(mu, epsilon), a)
    if delta is None or math.ceil(lam - _mu_power(mu, epsilon) + delta) != p:
        return EpsilonDeltaFit(n=n, epsilon=None, delta=None)
    return EpsilonDeltaFit(n=n, epsilon=epsilon, delta=delta)


class UniformRegion:
    """(epsilon, delta) pairs that work for every n scanned so far.

    For each epsilon on a fixed grid the admissible deltas form an interval
    (low, high]; adding an n intersects it with that n's interval.
    """

    def __init__(self, grid_points: int = UNIFORM_GRID_POINTS):
        self.epsilons = np.linspace(*EPSILON_RANGE, grid_points)
        self.low = np.full(grid_points, -np.inf)
        self.high = np.full(grid_points, DELTA_RANGE[1])
        self.count = 0

    def add(self, params: WindowParams, p: int) -> None:
        a = params.lam - p
        s = np.array([_mu_power(params.mu, e) for e in self.epsilons])
        self.low = np.maximum(self.low, s - a - 1.0)
        self.high = np.minimum(self.high, s - a)
        self.count += 1

    def merge(self, other: "UniformRegion") -> "UniformRegion":
        """Intersect with a region built over another shard of n."""
        self.low = np.maximum(self.low, other.low)
        self.high = np.minimum(self.high, other.high)
        self.count += other.count
        return self

    def feasible(self) -> np.ndarray:
        # delta = -2 is allowed when it is the closed end of the interval
        low = np.maximum(self.low, DELTA_RANGE[0])
        closed_edge = (self.high == DELTA_RANGE[0]) & (self.low < DELTA_RANGE[0])
        return (low < self.high) | closed_edge

    def example(self) -> Optional[Tuple[float, float]]:
        mask = self.feasible()
        if not mask.any():
            return None
        i = int(np.flatnonzero(mask)[0])
        low = max(self.low[i], DELTA_RANGE[0])
        delta = self.high[i] if low >= self.high[i] else 0.5 * (low + self.high[i])
        return float(self.epsilons[i]), float(delta)

    def to_json(self) -> dict:
        mask = self.feasible()
        example = self.example()
        return {
            "kind": "PRIME_WINDOW_UNIFORM",
            "checked": self.count,
            "feasible_epsilons": int(mask.sum()),
            "grid_points": int(self.epsilons.size),
            "example": list(example) if example else None,
        }


@dataclass
class PrimeWindowScan:
    records: List[ScanRecord]
    region: UniformRegion


def scan_prime_window(
    ns: Iterable[int],
    table: PrimeTable,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    cache: Optional[LogFactorialCache] = None,
    ) -> PrimeWindowScan:
    """prime_window and fit_epsilon_delta over ns, plus the uniform region.

    A precision guard trip becomes an INCONCLUSIVE record and that n is left
    out of the uniform region.
    """
    cache = cache if cache is not None else LogFactorialCache(precision_bits)
    region = UniformRegion()
    records = []
    for n in sorted(ns):
        try:
            require_domain(n > 2, f"the prime window is stated for n > 2, got n = {n}")
            params = cache.window(n)
            record = prime_window(n, table, params=params)
        except InconclusiveError as error:
            logger.warning("%s", error)
            records.append(ScanRecord(
                n=n, kind=ScanKind.PRIME_WINDOW, lower=None, upper=None,
                target=table.nth_prime(n), witnesses=(), status=ScanStatus.INCONCLUSIVE,
            ))
            continue
        fit = fit_epsilon_delta(n, table, params=params)
        region.add(params, record.target)
        records.append(ScanRecord(
            n=record.n,
            kind=record.kind,
            lower=record.lower,
            upper=record.upper,
            target=record.target,
            witnesses=record.witnesses,
            status=record.status,
            detail={**record.detail, "epsilon": fit.epsilon, "delta": fit.delta,
                    "degenerate": fit.degenerate},
        ))
    return PrimeWindowScan(records=records, region=region)

#------------------------------------------------------------------------------
# Pigeonhole collisions
#------------------------------------------------------------------------------
def find_collision(n: int, table: PrimeTable) -> ScanRecord:
    """Two distinct odd prime pairs with congruent products mod n.

    Pairs are walked once in lexicographic (p_i, p_j) order, p_i <= p_j,
    indexed by residue. This is not plain first-collision order: the first
    collision in which both products exceed n wins, and only when there is
    none does the first collision of the pass (rule "first") stand.
    """
    require_domain(n >= 5, f"collisions are searched for n >= 5, got n = {n}")
    require_range(n, table.limit, "n")
    odd = [int(p) for p in table.odd_primes_upto(n)]
    seen = {}
    first = None
    chosen = None
    for i, p in enumerate(odd):
        for q in odd[i:]:
            product = p * q
            residue = product % n
            earlier = seen.setdefault(residue, [])
            if earlier:
                if first is None:
                    first = ((p, q), earlier[0])
                if product > n:
                    wrapped = next((pair for pair in earlier if pair[0] * pair[1] > n), None)
                    if wrapped is not None:
                        chosen = ((p, q), wrapped)
                        break
            earlier.append((p, q))
        if chosen is not None:
            break
    rule = "wrapped"
    if chosen is None:
        chosen, rule = first, "first"
    if chosen is None:
        return ScanRecord(
            n=n, kind=ScanKind.COLLISION, lower=3, upper=n, target=n,
            witnesses=(), status=ScanStatus.NOT_FOUND,
        )
    (pa, pb), (px, py) = chosen
    return ScanRecord(
        n=n,
        kind=ScanKind.COLLISION,
        lower=3,
        upper=n,
        target=n,
        witnesses=chosen,
        status=ScanStatus.PASS,
        detail={"products": [pa * pb, px * py], "residue": (pa * pb) % n, "rule": rule},
    )


def product_set_size(n: int, table: PrimeTable) -> int:
    """m(m + 1)/2 with m the number of odd primes <= n."""
    m = int(table.odd_primes_upto(n).size)
    return m * (m + 1) // 2


def pigeonhole_applies(n: int, table: PrimeTable) -> bool:
    return product_set_size(n, table) > n


def collision_threshold(table: PrimeTable, upto: Optional[int] = None) -> Optional[int]:
    """First n >= 5 whose odd semiprime product set outnumbers the residues mod n."""
    upto = table.limit if upto is None else upto
    require_range(upto, table.limit, "upto")
    for n in range(5, upto + 1):
        if pigeonhole_applies(n, table):
            return n
    return None

#------------------------------------------------------------------------------
# Goldbach congruence
#------------------------------------------------------------------------------
def goldbach_congruence(n: int, table: PrimeTable) -> ScanRecord:
    """Witness (p_m, p_o, p_t) with p_o + p_t = n and gcd(p_m, n) = 1.

    p_o is the smallest odd prime with n - p_o prime; p_m is the smallest odd
    prime not dividing n.
    """
    require_domain(n >= 6 and n % 2 == 0, f"n must be even and >= 6, got n = {n}")
    require_range(n, table.limit, "n")
    p_m = next(int(p) for p in table.primes[1:] if n % int(p) != 0)
    for p in table.odd_primes_upto(n // 2):
        p_o = int(p)
        if table.is_prime(n - p_o):
            return ScanRecord(
                n=n,
                kind=ScanKind.GOLDBACH_CONG,
                lower=3,
                upper=n,
                target=n,
                witnesses=((p_m, p_o, n - p_o),),
                status=ScanStatus.PASS,
            )
    logger.warning("no Goldbach decomposition found for n=%d", n)
    return ScanRecord(
        n=n, kind=ScanKind.GOLDBACH_CONG, lower=3, upper=n, target=n,
        witnesses=(), status=ScanStatus.NOT_FOUND,
    )

#------------------------------------------------------------------------------
# Independent witness check
#------------------------------------------------------------------------------
def _is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def verify_witness(record: ScanRecord) -> bool:
    """Recheck a record in exact integer arithmetic without the prime table."""
    if record.status is not ScanStatus.PASS:
        return True
    if record.kind is ScanKind.PRIME_WINDOW:
        (p,), = record.witnesses
        return p == record.target and _is_prime_trial(p) and record.lower < p < record.upper
    if record.kind is ScanKind.COLLISION:
        (pa, pb), (px, py) = record.witnesses
        primes = (pa, pb, px, py)
        return (
            all(q % 2 == 1 and q <= record.n and _is_prime_trial(q) for q in primes)
            and {pa, pb} != {px, py}
            and sorted((pa, pb)) != sorted((px, py))
            and (pa * pb - px * py) % record.target == 0
        )
    if record.kind is ScanKind.GOLDBACH_CONG:
        (p_m, p_o, p_t), = record.witnesses
        n = record.target
        return (
            all(q % 2 == 1 and _is_prime_trial(q) for q in (p_m, p_o, p_t))
            and math.gcd(p_m, n) == 1
            and p_o + p_t == n
            and (p_m * p_o + p_m * p_t) % n == 0
        )
    raise ValueError(f"unknown scan kind {record.kind}")


def scan(kind: ScanKind, ns: Iterable[int], table: PrimeTable) -> Iterator[ScanRecord]:
    """Collision or Goldbach records over ns, each checked by verify_witness."""
    search = {ScanKind.COLLISION: find_collision, ScanKind.GOLDBACH_CONG: goldbach_congruence}
    if kind not in search:
        raise ValueError(f"use scan_prime_window for {kind.value}")
    for n in ns:
        record = search[kind](n, table)
        if not verify_witness(record):
            raise AssertionError(f"witness for {kind.value} at n={n} failed recomputation")
        yield record
