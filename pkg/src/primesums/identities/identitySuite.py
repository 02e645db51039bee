"""
Exact and tolerance-qualified checks of the semiprime count identity, the
odd dyadic floor identity, and the explicit pi(x) reconstruction built on it.
"""
from __future__ import annotations

#Core libraries
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

#Third party libraries
import numpy as np

#Local libraries
from ..errors import DomainError, require_domain, require_range
from ..sieve.primeEngine import (
    FactorSieve,
    OddSemiprimeProducts,
    PrimeTable,
    enumerate_odd_semiprime_products,
)
from ..summation import EPS, CompensatedSum
from ..utils import IdentityId, ParityVariant, to_jsonable
from . import exactDyadic

logger = logging.getLogger(__name__)

Number = Union[int, float]

# Above this, odd dyadic floor sums are taken block-wise instead of term by term
DIRECT_SUM_LIMIT = 10 ** 6
# reconstruct_pi refuses to round past this tracked error
ROUNDING_GUARD = 0.25

#------------------------------------------------------------------------------
# Reports
#------------------------------------------------------------------------------
@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one identity at one x.

    ``exact`` is True only for integer identities whose sides agree exactly,
    so an exact report always has residual 0.
    """
    identity_id: IdentityId
    x: int
    lhs: Number
    rhs: Number
    residual: float
    exact: bool
    elapsed: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if self.identity_id is IdentityId.COR_PI:
            return (
                not self.detail.get("inconclusive", False)
                and self.detail.get("rounded") == self.lhs
                and abs(self.residual) < 0.5
            )
        if self.identity_id is IdentityId.PARTITION:
            return self.exact and self.detail.get("counts_match", True)
        return self.exact

    @property
    def inconclusive(self) -> bool:
        return bool(self.detail.get("inconclusive", False))

    def to_json(self, timings: bool = True) -> dict:
        record = {
            "identity": self.identity_id.value,
            "x": self.x,
            "lhs": to_jsonable(self.lhs),
            "rhs": to_jsonable(self.rhs),
            "residual": to_jsonable(self.residual),
            "exact": self.exact,
            "ms": to_jsonable(round(self.elapsed * 1000.0, 3)) if timings else 0,
        }
        for key, value in self.detail.items():
            record[key] = to_jsonable(value)
        return record


def _integer_report(identity_id, x, lhs, rhs, started, **detail) -> VerificationReport:
    residual = lhs - rhs
    return VerificationReport(
        identity_id=identity_id,
        x=x,
        lhs=lhs,
        rhs=rhs,
        residual=float(residual),
        exact=residual == 0,
        elapsed=time.perf_counter() - started,
        detail=detail,
    )

#------------------------------------------------------------------------------
# Semiprime count identity
#------------------------------------------------------------------------------
def verify_theorem1(x: int, table: PrimeTable) -> VerificationReport:
    """Odd semiprime product count against C(pi(x), 2)."""
    started = time.perf_counter()
    require_domain(x >= 5, f"the semiprime count identity holds for x >= 5, got x = {x}")
    lhs = enumerate_odd_semiprime_products(x, table)
    rhs = math.comb(table.pi(x), 2)
    return _integer_report(IdentityId.THM1, x, lhs, rhs, started)


def verify_theorem1_range(xs: Iterable[int], table: PrimeTable) -> Iterator[VerificationReport]:
    """verify_theorem1 over non-decreasing xs, growing the product set incrementally."""
    products = OddSemiprimeProducts(table)
    for x in xs:
        started = time.perf_counter()
        require_domain(x >= 5, f"the semiprime count identity holds for x >= 5, got x = {x}")
        lhs = products.advance_to(x)
        rhs = math.comb(table.pi(x), 2)
        yield _integer_report(IdentityId.THM1, x, lhs, rhs, started)

#------------------------------------------------------------------------------
# Odd dyadic floor identity
#------------------------------------------------------------------------------
def verify_theorem2(x: int, method: Optional[str] = None) -> VerificationReport:
    """Sum of floor(log2(x/n)) over odd n <= x against floor(x/2).

    The closed form (x-1)/2 + (1 + (-1)^x)/4 is (x-1)/2 for odd x and x/2 for
    even x, i.e. x // 2 in both cases.
    """
    started = time.perf_counter()
    require_domain(x >= 1, f"x must be a positive integer, got {x}")
    if method is None:
        method = "direct" if x <= DIRECT_SUM_LIMIT else "blocks"
    lhs = exactDyadic.odd_dyadic_sum(x, method=method)
    return _integer_report(IdentityId.THM2, x, lhs, x // 2, started, method=method)

#------------------------------------------------------------------------------
# Pieces of the pi(x) formula
#------------------------------------------------------------------------------
def _check_formula_range(x: int, table: PrimeTable, sieve: Optional[FactorSieve] = None) -> None:
    require_domain(x >= 2, f"the pi formula needs x >= 2, got x = {x}")
    require_range(x, table.limit, "x")
    if sieve is not None:
        require_range(x, sieve.limit, "x")


def h_sum(x: int, table: PrimeTable) -> CompensatedSum:
    """H(x) with its tracked error: sum over all p <= x of frac(log2(x/p))."""
    _check_formula_range(x, table)
    ps = table.primes_upto(x)
    if x < exactDyadic.ARRAY_LIMIT:
        fractions = exactDyadic.dyadic_frac_array(x, ps)
    else:
        fractions = np.array([exactDyadic.dyadic_frac(x, int(p)) for p in ps])
    # log1p, the division and the rescale by log 2 each cost about one rounding
    return CompensatedSum().extend(fractions, value_error=3.0 * EPS * fractions.size)


def compute_H(x: int, table: PrimeTable) -> float:
    return h_sum(x, table).value


def compute_T(x: int) -> int:
    """T(x) = floor(log2(x/2))."""
    require_domain(x >= 2, f"T(x) needs x >= 2, got x = {x}")
    return exactDyadic.dyadic_floor(x, 2)


def _odd_composites_upto(x: int, sieve: FactorSieve) -> np.ndarray:
    odd = np.arange(3, x + 1, 2, dtype=np.int64)
    return odd[sieve.omega_array[3:x + 1:2] >= 2]


def compute_G(x: int, table: PrimeTable, sieve: FactorSieve) -> int:
    """floor(log2 x) plus floor(log2(x/n)) over odd n <= x with omega(n) >= 2."""
    _check_formula_range(x, table, sieve)
    composites = _odd_composites_upto(x, sieve)
    return exactDyadic.dyadic_floor(x, 1) + int(
        exactDyadic.dyadic_floor_array(x, composites).sum()
    )

#------------------------------------------------------------------------------
# pi(x) reconstruction
#------------------------------------------------------------------------------
@dataclass(frozen=True)
class PiReconstruction:
    x: int
    value: float
    error_bound: float
    rounded: Optional[int]
    variant: ParityVariant

    @property
    def inconclusive(self) -> bool:
        return self.rounded is None


def parity_term(x: int, variant: ParityVariant) -> float:
    """(1 + (-1)^x) log 2 / 4 for the statement variant, (1 + (-1)^x) / 4 for the proof variant."""
    parity = 2 if x % 2 == 0 else 0
    if variant is ParityVariant.PROOF:
        return parity / 4.0
    return parity * exactDyadic.LN2 / 4.0


def reconstruct_pi(
    x: int,
    table: PrimeTable,
    sieve: FactorSieve,
    variant: ParityVariant = ParityVariant.STATEMENT,
    ) -> PiReconstruction:
    """Evaluate the explicit formula for pi(x) and round it when the error allows."""
    if x == 1:
        raise DomainError("the pi formula divides by log x, so x = 1 is excluded")
    _check_formula_range(x, table, sieve)
    ln2 = exactDyadic.LN2
    h = h_sum(x, table)
    g = compute_G(x, table, sieve)
    t = compute_T(x)
    theta_x = table.theta(x)

    numerator = CompensatedSum()
    terms = (
        (x - 1) * ln2 / 2.0,
        theta_x,
        ln2 * h.value,
        -ln2 * g,
        ln2 * t,
        parity_term(x, variant),
    )
    for term in terms:
        numerator.add(term, value_error=2.0 * EPS * abs(term))
    numerator_error = (
        numerator.error_bound
        + table.theta_error(x)
        + ln2 * h.error_bound
    )
    log_x = math.log(x)
    value = numerator.value / log_x
    error_bound = numerator_error / log_x + 4.0 * EPS * abs(value)
    if error_bound > ROUNDING_GUARD:
        logger.warning("pi formula at x=%d too uncertain to round (bound %.3g)", x, error_bound)
        rounded = None
    else:
        rounded = math.floor(value + 0.5)
    return PiReconstruction(
        x=x, value=value, error_bound=error_bound, rounded=rounded, variant=variant
    )


def verify_pi_formula(
    x: int,
    table: PrimeTable,
    sieve: FactorSieve,
    variant: ParityVariant = ParityVariant.STATEMENT,
    ) -> VerificationReport:
    started = time.perf_counter()
    reconstruction = reconstruct_pi(x, table, sieve, variant)
    truth = table.pi(x)
    return VerificationReport(
        identity_id=IdentityId.COR_PI,
        x=x,
        lhs=truth,
        rhs=reconstruction.value,
        residual=reconstruction.value - truth,
        exact=False,
        elapsed=time.perf_counter() - started,
        detail={
            "variant": variant.value,
            "rounded": reconstruction.rounded,
            "error_bound": reconstruction.error_bound,
            "inconclusive": reconstruction.inconclusive,
        },
    )

#------------------------------------------------------------------------------
# Partition check and parity audit
#------------------------------------------------------------------------------
def verify_partition(x: int, table: PrimeTable, sieve: FactorSieve) -> VerificationReport:
    """Split the odd n <= x into {1}, odd primes and odd omega >= 2 composites.

    The odd dyadic sum must equal [sum over all p <= x minus T(x)] + floor(log2 x)
    + the composite sum, and the three classes must account for every odd n.
    """
    started = time.perf_counter()
    _check_formula_range(x, table, sieve)
    lhs = exactDyadic.odd_dyadic_sum(x, method="direct")
    primes = table.primes_upto(x)
    composites = _odd_composites_upto(x, sieve)
    prime_part = int(exactDyadic.dyadic_floor_array(x, primes).sum()) - compute_T(x)
    rhs = prime_part + compute_G(x, table, sieve)
    odd_primes = primes.size - 1
    counts_match = 1 + odd_primes + composites.size == (x + 1) // 2
    return _integer_report(
        IdentityId.PARTITION, x, lhs, rhs, started, counts_match=counts_match
    )


@dataclass
class ParityAudit:
    """How one parity-term variant fared over a range of x."""
    variant: ParityVariant
    checked: int = 0
    max_abs_residual: float = 0.0
    worst_x: Optional[int] = None
    failures: list = field(default_factory=list)

    def record(self, report: VerificationReport) -> None:
        self.checked += 1
        if abs(report.residual) > self.max_abs_residual:
            self.max_abs_residual = abs(report.residual)
            self.worst_x = report.x
        if not report.passed:
            self.failures.append(report.x)

    @property
    def rounds_everywhere(self) -> bool:
        return self.checked > 0 and not self.failures

    def to_json(self) -> dict:
        return {
            "variant": self.variant.value,
            "checked": self.checked,
            "max_abs_residual": to_jsonable(self.max_abs_residual),
            "worst_x": self.worst_x,
            "rounds_everywhere": self.rounds_everywhere,
            "failures": self.failures[:20],
        }


def audit_parity_variants(
    xs: Iterable[int],
    table: PrimeTable,
    sieve: FactorSieve,
    ) -> dict:
    """Run the statement and proof variants over xs and compare them."""
    audits = {
        variant: ParityAudit(variant)
        for variant in (ParityVariant.STATEMENT, ParityVariant.PROOF)
    }
    for x in xs:
        for variant, audit in audits.items():
            audit.record(verify_pi_formula(x, table, sieve, variant))
    for audit in audits.values():
        logger.info(
            "parity variant %s: max |residual| %.3g at x=%s, rounds everywhere: %s",
            audit.variant.value, audit.max_abs_residual, audit.worst_x, audit.rounds_everywhere,
        )
    return audits
