"""
The semiprime weight Upsilon and its partial sums.

Upsilon(n) is log p when n = p**2, log n when n is a product of two distinct
primes, and 0 otherwise. Its partial sum up to x is computed three ways
(by definition, as a sum of pi(x/p) log p, and as a semiprime log-sum minus
theta(sqrt x)) and compared against the weighted Mertens-type sum whose
growth it tracks.
"""
from __future__ import annotations

#Core libraries
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional

#Third party libraries
import numpy as np
import pandas as pd

#Local libraries
from ..errors import DomainError, require_domain, require_range
from ..sieve.primeEngine import FactorSieve, PrimeTable
from ..summation import CompensatedSum
from ..utils import to_jsonable

logger = logging.getLogger(__name__)

# log log x > 0 needs x > e; the ratio is only reported from here on
RATIO_MIN_X = 16
TREND_COLUMNS = ["x", "mertens_sum", "logx_loglogx", "ratio"]

#------------------------------------------------------------------------------
# Upsilon
#------------------------------------------------------------------------------
def upsilon(n: int, sieve: FactorSieve) -> float:
    factors = sieve.factorize(n)
    if len(factors) == 1 and factors[0][1] == 2:
        return math.log(factors[0][0])
    if len(factors) == 2 and factors[0][1] == factors[1][1] == 1:
        return math.log(n)
    return 0.0


def upsilon_array(x: int, sieve: FactorSieve) -> np.ndarray:
    """Upsilon(n) for n = 0..x (entries 0 and 1 are 0)."""
    require_domain(x >= 1, f"x must be a positive integer, got {x}")
    require_range(x, sieve.limit, "x")
    values = np.zeros(x + 1, dtype=np.float64)
    ns = np.flatnonzero(sieve.omega_array[:x + 1] == 2)
    logs = np.log(ns.astype(np.float64))
    spf = sieve.spf[ns].astype(np.int64)
    squares = spf * spf == ns
    # log(p**2) / 2 is log p up to one rounding
    logs[squares] = np.log(spf[squares].astype(np.float64))
    values[ns] = logs
    return values

#------------------------------------------------------------------------------
# Partial sums
#------------------------------------------------------------------------------
@dataclass(frozen=True)
class UpsilonSummary:
    x: int
    sum_direct: float
    sum_lemma: float
    sum_logsemiprime: float
    mertens_sum: Optional[float] = None
    ratio: Optional[float] = None

    @property
    def max_relative_gap(self) -> float:
        sums = (self.sum_direct, self.sum_lemma, self.sum_logsemiprime)
        scale = max(abs(s) for s in sums)
        if scale == 0.0:
            return 0.0
        return (max(sums) - min(sums)) / scale

    def to_json(self) -> dict:
        return {
            "x": self.x,
            "sum_direct": to_jsonable(self.sum_direct),
            "sum_lemma": to_jsonable(self.sum_lemma),
            "sum_logsemiprime": to_jsonable(self.sum_logsemiprime),
            "mertens_sum": to_jsonable(self.mertens_sum),
            "ratio": to_jsonable(self.ratio),
            "max_relative_gap": to_jsonable(self.max_relative_gap),
        }


def _sum_direct(x: int, sieve: FactorSieve) -> float:
    values = upsilon_array(x, sieve)
    values = values[values > 0.0]
    return CompensatedSum().extend(values).value


def _sum_lemma(x: int, table: PrimeTable) -> float:
    ps = table.primes_upto(x // 2)
    # pi is a step function, so pi(x/p) is pi(floor(x/p))
    counts = table.pi_array(x // ps)
    terms = counts * np.log(ps.astype(np.float64))
    return CompensatedSum().extend(terms).value


def _sum_logsemiprime(x: int, table: PrimeTable, sieve: FactorSieve) -> float:
    ns = np.flatnonzero(sieve.omega_array[:x + 1] == 2)
    total = CompensatedSum().extend(np.log(ns.astype(np.float64)))
    total.add(-table.theta(math.isqrt(x)))
    return total.value


def mertens_sum(x: int, table: PrimeTable) -> float:
    """Sum over p <= x/2 of (log p / p) / (1 - log p / log x)."""
    require_domain(x >= 4, f"the weighted Mertens sum needs x >= 4, got x = {x}")
    require_range(x // 2, table.limit, "x/2")
    ps = table.primes_upto(x // 2).astype(np.float64)
    log_p = np.log(ps)
    terms = (log_p / ps) / (1.0 - log_p / math.log(x))
    return CompensatedSum().extend(terms).value


def sums_only(x: int, table: PrimeTable, sieve: FactorSieve) -> UpsilonSummary:
    """The three partial sums without the ratio, valid for any x >= 2."""
    require_domain(x >= 2, f"Upsilon sums need x >= 2, got x = {x}")
    require_range(x, table.limit, "x")
    require_range(x, sieve.limit, "x")
    return UpsilonSummary(
        x=x,
        sum_direct=_sum_direct(x, sieve),
        sum_lemma=_sum_lemma(x, table),
        sum_logsemiprime=_sum_logsemiprime(x, table, sieve),
    )


def summarize(x: int, table: PrimeTable, sieve: FactorSieve) -> UpsilonSummary:
    if x < RATIO_MIN_X:
        raise DomainError(
            f"the Upsilon ratio needs x >= {RATIO_MIN_X} (log log x > 0), got x = {x}"
        )
    sums = sums_only(x, table, sieve)
    weighted = mertens_sum(x, table)
    ratio = weighted / (math.log(x) * math.log(math.log(x)))
    logger.debug("upsilon summary x=%d gap=%.3g ratio=%.6f", x, sums.max_relative_gap, ratio)
    return UpsilonSummary(
        x=x,
        sum_direct=sums.sum_direct,
        sum_lemma=sums.sum_lemma,
        sum_logsemiprime=sums.sum_logsemiprime,
        mertens_sum=weighted,
        ratio=ratio,
    )

#------------------------------------------------------------------------------
# Trend table
#------------------------------------------------------------------------------
@dataclass(frozen=True)
class TrendRow:
    x: int
    mertens_sum: float
    logx_loglogx: float

    @property
    def ratio(self) -> float:
        return self.mertens_sum / self.logx_loglogx

    @property
    def distance(self) -> float:
        return abs(self.ratio - 1.0)


def _trend_row(x: int, table: PrimeTable) -> TrendRow:
    require_domain(x >= RATIO_MIN_X, f"trend points need x >= {RATIO_MIN_X}, got x = {x}")
    return TrendRow(
        x=x,
        mertens_sum=mertens_sum(x, table),
        logx_loglogx=math.log(x) * math.log(math.log(x)),
    )


def trend_table(
    xs: Iterable[int],
    table: PrimeTable,
    sieve: Optional[FactorSieve] = None,
    workers: int = 1,
    ) -> List[TrendRow]:
    """Ratio rows for increasing xs.

    Only the prime table is read; ``sieve`` is accepted so the signature
    matches summarize. Rows come back in the order of ``xs`` whatever the
    worker count.
    """
    xs = list(xs)
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise DomainError("trend points must be strictly increasing")
    if workers > 1 and len(xs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(lambda x: _trend_row(x, table), xs))
    return [_trend_row(x, table) for x in xs]


def trend_frame(rows: Iterable[TrendRow]) -> pd.DataFrame:
    rows = list(rows)
    return pd.DataFrame(
        {
            "x": [row.x for row in rows],
            "mertens_sum": [row.mertens_sum for row in rows],
            "logx_loglogx": [row.logx_loglogx for row in rows],
            "ratio": [row.ratio for row in rows],
            "distance": [row.distance for row in rows],
        },
        columns=TREND_COLUMNS + ["distance"],
    )


def write_trend_csv(rows: Iterable[TrendRow], path_or_buffer) -> None:
    trend_frame(rows).to_csv(
        path_or_buffer, columns=TREND_COLUMNS, index=False, float_format="%.15g",
        lineterminator="\n",
    )


def plot_trend(rows: Iterable[TrendRow], path) -> Path:
    """Save ratio against x (log scale) as an image."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    frame = trend_frame(rows)
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.semilogx(frame["x"], frame["ratio"], marker="o", label="weighted sum / (log x log log x)")
    ax.axhline(1.0, color="grey", linestyle="--", linewidth=1)
    ax.set_xlabel("x")
    ax.set_ylabel("ratio")
    ax.legend()
    plt.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    logger.info("trend plot written to %s", path)
    return path
