"""
Compensated floating point accumulation with an audited error bound.

Every real-valued sum in primesums (theta, H(x), the Upsilon sums, log n!)
goes through :class:`CompensatedSum` so that callers can ask not only for
the value but also for a rigorous-enough bound on how far it can be from the
exact sum of the exact terms.
"""
from __future__ import annotations

import math

import numpy as np

# Unit roundoff for IEEE double
EPS = 2.0 ** -53


class CompensatedSum:
    """Running Neumaier sum that tracks an absolute error bound.

    The bound has two parts: the summation error, at most
    ``(2u + n u^2) * sum|x_i|`` for Neumaier's algorithm, and the input
    error that callers declare for terms that were themselves rounded
    (a float ``log`` is good to about one ulp).

    Attributes
    ----------
    count
        Number of terms added so far
    abs_total
        Sum of the absolute values of the terms
    """

    def __init__(self, value: float = 0.0):
        self._sum = float(value)
        self._carry = 0.0
        self.count = 0 if value == 0.0 else 1
        self.abs_total = abs(float(value))
        self._input_error = 0.0

    def add(self, value: float, value_error: float = 0.0) -> "CompensatedSum":
        value = float(value)
        total = self._sum + value
        if abs(self._sum) >= abs(value):
            self._carry += (self._sum - total) + value
        else:
            self._carry += (value - total) + self._sum
        self._sum = total
        self.count += 1
        self.abs_total += abs(value)
        self._input_error += value_error
        return self

    def extend(self, values, value_error: float = 0.0) -> "CompensatedSum":
        """Add a whole array of terms.

        The batch is reduced with ``math.fsum`` (correctly rounded), so a
        batch costs a single rounding on top of the running sum.
        ``value_error`` is the declared error of the whole batch.
        """
        values = np.asarray(values, dtype=np.float64)
        if values.size == 0:
            return self
        batch = math.fsum(values.tolist())
        self.add(batch)
        # add() counted the batch as one term of size |batch|
        self.count += values.size - 1
        self.abs_total += float(np.abs(values).sum()) - abs(batch)
        self._input_error += value_error
        return self

    @property
    def value(self) -> float:
        return self._sum + self._carry

    @property
    def error_bound(self) -> float:
        summation = (2.0 * EPS + self.count * EPS * EPS) * self.abs_total
        return summation + self._input_error

    def __float__(self) -> float:
        return self.value

    def __repr__(self) -> str:
        return f"CompensatedSum(value={self.value!r}, error_bound={self.error_bound:.3g})"


def log_term_error(value: float) -> float:
    """Declared error of one float logarithm: one ulp of the result."""
    return 2.0 * EPS * abs(value)


def compensated_sum(values, value_error: float = 0.0) -> CompensatedSum:
    return CompensatedSum().extend(values, value_error)


def compensated_cumsum(values, block: int = 1024) -> np.ndarray:
    """Prefix sums of ``values`` with compensated carries between blocks.

    Inside a block the prefix is a plain ``np.cumsum`` (relative error at
    most ``block * u`` of the block); the running base across blocks is a
    :class:`CompensatedSum`, so drift does not grow with the array length.
    """
    values = np.asarray(values, dtype=np.float64)
    out = np.empty_like(values)
    base = CompensatedSum()
    for start in range(0, values.size, block):
        chunk = values[start:start + block]
        out[start:start + chunk.size] = base.value + np.cumsum(chunk)
        base.extend(chunk)
    return out
