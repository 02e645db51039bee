"""
Running log n! with a tracked error bound, and the window quantities
lambda_n = ceil(2 (log n! + 1)) and mu_n = floor(log log n!) built on it.

log n! is accumulated term by term (no Stirling approximation). Whenever a
ceiling or floor argument lands within BOUNDARY_GUARD of an integer, the
value is recomputed from the exact integer n! with mpmath.
"""
from __future__ import annotations

#Core libraries
import logging
import math
from dataclasses import dataclass

#Third party libraries
import mpmath

#Local libraries
from ..errors import DomainError, InconclusiveError
from ..summation import CompensatedSum, log_term_error

logger = logging.getLogger(__name__)

BOUNDARY_GUARD = 1e-9
ESCALATED_GUARD = 1e-18
DEFAULT_PRECISION_BITS = 128


def _distance_to_integer(value: float) -> float:
    return abs(value - round(value))


@dataclass(frozen=True)
class WindowParams:
    """lambda_n and mu_n for one n, with the log n! they came from."""
    n: int
    log_factorial: float
    error_bound: float
    lam: int
    mu: int
    escalated: bool = False

    @property
    def lower(self) -> int:
        return self.lam - self.mu ** 3 - 2

    @property
    def upper(self) -> int:
        return self.lam - self.mu ** 2 + 2


class LogFactorialCache:
    """Incremental log n! for non-decreasing n.

    Moving backwards restarts the sum from 1, so a scan should visit its n in
    increasing order. One cache belongs to one worker.
    """

    def __init__(self, precision_bits: int = DEFAULT_PRECISION_BITS):
        if precision_bits < DEFAULT_PRECISION_BITS:
            raise DomainError(
                f"escalated precision must be at least {DEFAULT_PRECISION_BITS} bits, "
                f"got {precision_bits}"
            )
        self.precision_bits = precision_bits
        self._reset()

    def _reset(self) -> None:
        self.n = 1
        self._sum = CompensatedSum()

    def log_factorial(self, n: int) -> CompensatedSum:
        """log n! as a CompensatedSum (value and error_bound)."""
        if n < 1:
            raise DomainError(f"log n! needs n >= 1, got {n}")
        if n < self.n:
            logger.debug("log factorial cache restarting at n=%d (was at %d)", n, self.n)
            self._reset()
        for k in range(self.n + 1, n + 1):
            term = math.log(k)
            self._sum.add(term, value_error=log_term_error(term))
        self.n = n
        return self._sum

    def log_factorial_mp(self, n: int):
        """log n! from the exact integer n!, at the escalated precision."""
        with mpmath.workprec(self.precision_bits):
            return mpmath.log(mpmath.mpf(math.factorial(n)))

    def window(self, n: int) -> WindowParams:
        """lambda_n and mu_n, escalating when a boundary is too close to call."""
        if n < 2:
            raise DomainError(f"log log n! needs n >= 2, got {n}")
        total = self.log_factorial(n)
        value, bound = total.value, total.error_bound
        lam_arg = 2.0 * (value + 1.0)
        mu_arg = math.log(value)
        # bound on log log n! follows from d/dL log L = 1/L
        lam_bound = 2.0 * bound
        mu_bound = bound / value + log_term_error(mu_arg)
        if (
            _distance_to_integer(lam_arg) > max(BOUNDARY_GUARD, lam_bound)
            and _distance_to_integer(mu_arg) > max(BOUNDARY_GUARD, mu_bound)
        ):
            return WindowParams(
                n=n,
                log_factorial=value,
                error_bound=bound,
                lam=math.ceil(lam_arg),
                mu=math.floor(mu_arg),
            )
        return self._escalated_window(n)

    def _escalated_window(self, n: int) -> WindowParams:
        logger.warning("log n! near a rounding boundary at n=%d; escalating to %d bits",
                       n, self.precision_bits)
        with mpmath.workprec(self.precision_bits):
            log_fact = self.log_factorial_mp(n)
            lam_arg = 2 * (log_fact + 1)
            mu_arg = mpmath.log(log_fact)
            for name, arg in (("lambda", lam_arg), ("mu", mu_arg)):
                if abs(arg - mpmath.nint(arg)) < ESCALATED_GUARD:
                    raise InconclusiveError(
                        f"{name} argument at n={n} is within {ESCALATED_GUARD} of an "
                        f"integer even at {self.precision_bits} bits"
                    )
            lam = int(mpmath.ceil(lam_arg))
            mu = int(mpmath.floor(mu_arg))
            value = float(log_fact)
        return WindowParams(
            n=n,
            log_factorial=value,
            error_bound=0.0,
            lam=lam,
            mu=mu,
            escalated=True,
        )
