"""
Identity module for the exact prime-sum identities.

This module provides exact dyadic logarithms, the identity verifiers built
on them, and the Upsilon partial sums.
"""

from .exactDyadic import (
    DyadicLog,
    dyadic_floor,
    dyadic_floor_array,
    dyadic_frac,
    dyadic_frac_array,
    dyadic_frac_mp,
    dyadic_log,
    is_dyadic_ratio,
    odd_dyadic_sum,
)
from .identitySuite import (
    ParityAudit,
    PiReconstruction,
    VerificationReport,
    audit_parity_variants,
    compute_G,
    compute_H,
    compute_T,
    reconstruct_pi,
    verify_partition,
    verify_pi_formula,
    verify_theorem1,
    verify_theorem1_range,
    verify_theorem2,
)
from .upsilon import (
    TrendRow,
    UpsilonSummary,
    plot_trend,
    summarize,
    sums_only,
    trend_frame,
    trend_table,
    upsilon,
    upsilon_array,
    write_trend_csv,
)

__all__ = [
    "DyadicLog",
    "dyadic_floor",
    "dyadic_floor_array",
    "dyadic_frac",
    "dyadic_frac_array",
    "dyadic_frac_mp",
    "dyadic_log",
    "is_dyadic_ratio",
    "odd_dyadic_sum",
    "ParityAudit",
    "PiReconstruction",
    "VerificationReport",
    "audit_parity_variants",
    "compute_G",
    "compute_H",
    "compute_T",
    "reconstruct_pi",
    "verify_partition",
    "verify_pi_formula",
    "verify_theorem1",
    "verify_theorem1_range",
    "verify_theorem2",
    "TrendRow",
    "UpsilonSummary",
    "plot_trend",
    "summarize",
    "sums_only",
    "trend_frame",
    "trend_table",
    "upsilon",
    "upsilon_array",
    "write_trend_csv",
]
