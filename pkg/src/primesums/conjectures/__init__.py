"""
Conjecture module for the prime-window, collision and Goldbach scanners.
"""

from .conjectureLab import (
    EpsilonDeltaFit,
    PrimeWindowScan,
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
from .logFactorial import LogFactorialCache, WindowParams

__all__ = [
    "EpsilonDeltaFit",
    "PrimeWindowScan",
    "ScanRecord",
    "UniformRegion",
    "collision_threshold",
    "find_collision",
    "fit_epsilon_delta",
    "goldbach_congruence",
    "pigeonhole_applies",
    "prime_window",
    "scan",
    "scan_prime_window",
    "verify_witness",
    "LogFactorialCache",
    "WindowParams",
]
