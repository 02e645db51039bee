"""High-level run orchestration: build the tables once, shard the range, stream records."""
from __future__ import annotations

# Core libraries
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TextIO

# primesums libraries
from .conjectures import conjectureLab
from .conjectures.logFactorial import LogFactorialCache
from .errors import PrimesumsError, require_domain
from .identities import identitySuite
from .identities.upsilon import (
    RATIO_MIN_X,
    plot_trend,
    summarize,
    sums_only,
    trend_frame,
    trend_table,
    write_trend_csv,
)
from .initVariables import RunConfig
from .output import RecordSink, RunSummary
from .sieve.primeCache import cached_prime_table
from .sieve.primeEngine import PrimeTable, build_factor_sieve
from .utils import Command, ParityVariant, ScanKind, ScanStatus, to_jsonable

logger = logging.getLogger(__name__)

# Relative agreement required of the three Upsilon sums
UPSILON_TOLERANCE = 1e-9


def shard(values: Sequence[int], workers: int) -> List[List[int]]:
    """Split sorted values into contiguous shards, one or more per worker."""
    if workers <= 1 or len(values) < 2:
        return [list(values)]
    size = -(-len(values) // (4 * workers))
    return [list(values[i:i + size]) for i in range(0, len(values), size)]


def map_shards(func: Callable, shards: List[List[int]], workers: int):
    """func over the shards, results in shard order whatever the worker count."""
    if workers <= 1 or len(shards) == 1:
        return map(func, shards)
    executor = ThreadPoolExecutor(max_workers=workers)
    try:
        return list(executor.map(func, shards))
    finally:
        executor.shutdown()


def build_tables(config: RunConfig, values: List[int]):
    """One prime table (and factor sieve if needed) sized to the whole run."""
    required = config.required_limit(values)
    if required == 0:
        return None, None
    limit = config.sieve_limit or required
    if limit < required:
        logger.warning("sieve limit %d is below the %d this run needs; raising it", limit, required)
        limit = required
    table = cached_prime_table(limit, cache_dir=config.cache_dir, workers=config.workers)
    sieve = build_factor_sieve(limit, table) if config.needs_factor_sieve else None
    return table, sieve

#------------------------------------------------------------------------------
# Per-command runners
#------------------------------------------------------------------------------
def _identity_records(reports, summary: RunSummary, timings: bool) -> List[dict]:
    records = []
    for report in reports:
        summary.count(
            exact=report.exact,
            violation=not report.passed and not report.inconclusive,
            inconclusive=report.inconclusive,
        )
        records.append(report.to_json(timings))
    return records


def _scan_records(records, summary: RunSummary, table: PrimeTable) -> List[dict]:
    out = []
    for record in records:
        if record.status is ScanStatus.VIOLATION:
            violation = True
        elif record.status is ScanStatus.NOT_FOUND:
            # a missing collision only counts where pigeonhole guarantees one
            violation = (
                record.kind is ScanKind.GOLDBACH_CONG
                or conjectureLab.pigeonhole_applies(record.n, table)
            )
        else:
            violation = False
        summary.count(
            violation=violation,
            inconclusive=record.status is ScanStatus.INCONCLUSIVE,
            status=record.status.value,
        )
        out.append(record.to_json())
    return out


def _run_identities(config, values, table, sieve, sink, summary) -> None:
    command = config.command
    if command is Command.THM1:
        require_domain(values[0] >= 5,
                       f"the semiprime count identity holds for x >= 5, got x = {values[0]}")
        work = lambda xs: list(identitySuite.verify_theorem1_range(xs, table))
    elif command is Command.THM2:
        require_domain(values[0] >= 1, f"x must be a positive integer, got {values[0]}")
        work = lambda xs: [identitySuite.verify_theorem2(x) for x in xs]
    elif config.variant is ParityVariant.AUDIT:
        work = lambda xs: [
            identitySuite.verify_pi_formula(x, table, sieve, variant)
            for x in xs
            for variant in (ParityVariant.STATEMENT, ParityVariant.PROOF)
        ]
    else:
        work = lambda xs: [identitySuite.verify_pi_formula(x, table, sieve, config.variant)
                           for x in xs]
    if command is Command.PI_FORMULA:
        require_domain(values[0] >= 2, f"the pi formula needs x >= 2, got x = {values[0]}")

    audits = {
        variant: identitySuite.ParityAudit(variant)
        for variant in (ParityVariant.STATEMENT, ParityVariant.PROOF)
    }
    for reports in map_shards(work, shard(values, config.workers), config.workers):
        if config.variant is ParityVariant.AUDIT:
            for report in reports:
                audits[ParityVariant(report.detail["variant"])].record(report)
            # the audit itself is the verdict; per-variant failures are findings
            for report in reports:
                summary.count(exact=False, inconclusive=report.inconclusive)
            sink.write(report.to_json(config.timings) for report in reports)
        else:
            sink.write(_identity_records(reports, summary, config.timings))
    if config.variant is ParityVariant.AUDIT:
        if config.format == "json":
            sink.write({"kind": "PARITY_AUDIT", **audit.to_json()} for audit in audits.values())
        if not any(audit.rounds_everywhere for audit in audits.values()):
            summary.violations += 1


def _run_upsilon(config, values, table, sieve, sink, summary) -> None:
    def work(xs):
        rows = []
        for x in xs:
            if x < RATIO_MIN_X:
                rows.append(sums_only(x, table, sieve))
            else:
                rows.append(summarize(x, table, sieve))
        return rows

    for rows in map_shards(work, shard(values, config.workers), config.workers):
        records = []
        for row in rows:
            gap = row.max_relative_gap
            summary.count(exact=False, violation=gap > UPSILON_TOLERANCE)
            records.append({"kind": "UPSILON", **row.to_json()})
        sink.write(records)


def _run_trend(config, values, table, sink, summary) -> None:
    rows = trend_table(values, table, workers=config.workers)
    for _ in rows:
        summary.count()
    if config.format == "csv":
        write_trend_csv(rows, sink.stream)
        sink.stream.flush()
    else:
        frame = trend_frame(rows)
        sink.write({"kind": "TREND", **record} for record in _frame_records(frame))
    if config.plot is not None:
        plot_trend(rows, config.plot)


def _frame_records(frame) -> List[dict]:
    return [
        {column: to_jsonable(value) for column, value in row.items()}
        for row in frame.to_dict(orient="records")
    ]


def _run_scans(config, values, table, sink, summary) -> None:
    if config.command is Command.PRIME_WINDOW:
        def work(ns):
            return conjectureLab.scan_prime_window(
                ns, table, cache=LogFactorialCache(config.precision_bits)
            )
        region = None
        for result in map_shards(work, shard(values, config.workers), config.workers):
            region = result.region if region is None else region.merge(result.region)
            sink.write(_scan_records(result.records, summary, table))
        if region is not None and config.format == "json":
            sink.write([region.to_json()])
        return

    kind = ScanKind.COLLISION if config.command is Command.COLLISION else ScanKind.GOLDBACH_CONG
    if kind is ScanKind.GOLDBACH_CONG:
        values = [n for n in values if n % 2 == 0]
        require_domain(bool(values) and values[0] >= 6,
                       "the Goldbach congruence needs even n >= 6")
    else:
        require_domain(values[0] >= 5, f"collisions are searched for n >= 5, got n = {values[0]}")
    work = lambda ns: list(conjectureLab.scan(kind, ns, table))
    for records in map_shards(work, shard(values, config.workers), config.workers):
        sink.write(_scan_records(records, summary, table))

#------------------------------------------------------------------------------
# Entry
#------------------------------------------------------------------------------
def run(config: RunConfig, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Execute one configured run and return its exit status (0, 1 or 2)."""
    stderr = stderr or sys.stderr
    started = time.perf_counter()
    summary = RunSummary()
    try:
        config.validate()
        values = config.values()
        if not values:
            raise ValueError("the requested range is empty")
        table, sieve = build_tables(config, values)
        with RecordSink.open(config.output, config.format, stdout) as sink:
            if config.command in (Command.THM1, Command.THM2, Command.PI_FORMULA):
                _run_identities(config, values, table, sieve, sink, summary)
            elif config.command is Command.UPSILON:
                _run_upsilon(config, values, table, sieve, sink, summary)
            elif config.command is Command.TREND:
                _run_trend(config, values, table, sink, summary)
            else:
                _run_scans(config, values, table, sink, summary)
            summary.elapsed = time.perf_counter() - started if config.timings else 0.0
            if config.format == "json":
                sink.write([summary.footer()])
    except (PrimesumsError, ValueError, MemoryError) as error:
        logger.error("%s", error)
        print(f"error: {error}", file=stderr)
        return 2
    print(summary.line(), file=stderr)
    return summary.exit_code
