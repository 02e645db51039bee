"""
Binary cache for prime tables.

Layout (little-endian)::

    b"PSUM1" | u64 limit | u64 count | LEB128 prime gaps | sha256 of all before

The first gap is measured from 0, so the payload starts with 2. Gaps
between consecutive primes below 2**64 stay far under 2**14, so every gap
takes one or two bytes and both directions run vectorized.
"""
from __future__ import annotations

#Core libraries
import hashlib
import logging
import os
import struct
from pathlib import Path
from typing import Optional

#Third party libraries
import numpy as np

#Local libraries
from ..errors import CacheFormatError
from .primeEngine import PrimeTable, build_prime_table, table_from_primes
from .sieveConfig import cache_format

logger = logging.getLogger(__name__)

_MAGIC = cache_format["MAGIC"]
_HEADER = struct.Struct(cache_format["HEADER"])
_DIGEST_SIZE = hashlib.new(cache_format["CHECKSUM"]).digest_size


def encode_gaps(primes: np.ndarray) -> bytes:
    gaps = np.diff(np.asarray(primes, dtype=np.int64), prepend=0)
    if gaps.size and int(gaps.max()) >= 1 << 14:
        raise CacheFormatError(f"prime gap {int(gaps.max())} does not fit two LEB128 bytes")
    short = gaps < 0x80
    widths = np.where(short, 1, 2)
    starts = np.cumsum(widths) - widths
    out = np.empty(int(widths.sum()), dtype=np.uint8)
    out[starts] = np.where(short, gaps, (gaps & 0x7F) | 0x80)
    out[starts[~short] + 1] = gaps[~short] >> 7
    return out.tobytes()


def decode_gaps(payload: bytes, count: int) -> np.ndarray:
    raw = np.frombuffer(payload, dtype=np.uint8).astype(np.int64)
    continued = (raw & 0x80) != 0
    # a byte starts a gap unless the byte before it carried the continuation bit
    starts = np.flatnonzero(~np.concatenate(([False], continued[:-1])))
    if starts.size != count or (raw.size and continued[-1]):
        raise CacheFormatError(f"expected {count} gaps, found {starts.size}")
    low = raw[starts] & 0x7F
    high = np.zeros(count, dtype=np.int64)
    long_gap = continued[starts]
    high[long_gap] = raw[starts[long_gap] + 1]
    return np.cumsum(low | (high << 7))


def save_prime_table(table: PrimeTable, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    body = _MAGIC + _HEADER.pack(table.limit, len(table)) + encode_gaps(table.primes)
    digest = hashlib.new(cache_format["CHECKSUM"], body).digest()
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(body + digest)
    os.replace(tmp, path)
    logger.info("wrote prime cache %s (%d primes)", path, len(table))
    return path


def load_prime_table(path) -> PrimeTable:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Prime cache file not found: {path}")
    data = path.read_bytes()
    header_end = len(_MAGIC) + _HEADER.size
    if len(data) < header_end + _DIGEST_SIZE or not data.startswith(_MAGIC):
        raise CacheFormatError(f"{path} is not a PSUM1 prime cache")
    body, digest = data[:-_DIGEST_SIZE], data[-_DIGEST_SIZE:]
    if hashlib.new(cache_format["CHECKSUM"], body).digest() != digest:
        raise CacheFormatError(f"checksum mismatch in {path}")
    limit, count = _HEADER.unpack(body[len(_MAGIC):header_end])
    primes = decode_gaps(body[header_end:], count)
    return table_from_primes(limit, primes)


def cache_path(cache_dir, limit: int) -> Path:
    return Path(cache_dir) / f"primes_{limit}{cache_format['SUFFIX']}"


def default_cache_dir() -> Optional[Path]:
    value = os.environ.get(cache_format["CACHE_DIR_ENV"])
    return Path(value) if value else None


def cached_prime_table(limit: int, cache_dir=None, **build_options) -> PrimeTable:
    """Load the table for ``limit`` from ``cache_dir``, building and saving on a miss.

    A cached table with a larger limit is not reused: the limit is part of
    the table's contract (it fixes which queries raise).
    """
    cache_dir = cache_dir if cache_dir is not None else default_cache_dir()
    if cache_dir is None:
        return build_prime_table(limit, **build_options)
    path = cache_path(cache_dir, limit)
    if path.exists():
        try:
            table = load_prime_table(path)
            logger.info("prime cache hit %s", path)
            return table
        except CacheFormatError as error:
            logger.warning("ignoring unreadable prime cache %s: %s", path, error)
    logger.info("prime cache miss %s", path)
    table = build_prime_table(limit, **build_options)
    save_prime_table(table, path)
    return table
