"""
Exceptions raised by primesums.

Each one also derives from the builtin a caller would naturally catch, so
``except ValueError`` around a domain violation keeps working.
"""


class PrimesumsError(Exception):
    """Base class for every primesums error."""


class DomainError(PrimesumsError, ValueError):
    """An argument violates the hypothesis of the quantity being computed."""


class RangeError(PrimesumsError, IndexError):
    """A query runs past the limit of a prime table or factor sieve."""


class ResourceError(PrimesumsError, MemoryError):
    """Building a table would exceed the configured memory budget."""

    def __init__(self, message: str, required_bytes: int, budget_bytes: int):
        super().__init__(message)
        self.required_bytes = required_bytes
        self.budget_bytes = budget_bytes


class InconclusiveError(PrimesumsError, ArithmeticError):
    """A floor/ceiling sits too close to a discontinuity to be decided."""


class CacheFormatError(PrimesumsError, ValueError):
    """A prime cache file is truncated, corrupted or of the wrong format."""


def require_domain(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


def require_range(value: int, limit: int, what: str = "value") -> None:
    if value > limit:
        raise RangeError(f"{what} {value} exceeds the table limit {limit}")
