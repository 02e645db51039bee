"""
Initialize variables for a verification or scan run.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from .sieve.utils import nth_prime_upper_bound
from .utils import Command, ParityVariant, parse_parameters_file, parse_range

# Parameter file keys -> RunConfig fields
PARAMETER_KEYS = {
    "Command": "command",
    "Range": "range",
    "Sample": "sample",
    "SampleMax": "sample_max",
    "Seed": "seed",
    "SieveLimit": "sieve_limit",
    "Format": "format",
    "Out": "output",
    "PrecisionBits": "precision_bits",
    "Variant": "variant",
    "Workers": "workers",
    "CacheDir": "cache_dir",
    "Timings": "timings",
    "N": "n",
    "TrendPoints": "xs",
    "Plot": "plot",
}


@dataclass
class RunConfig:
    """Container for run parameters and runtime options."""

    command: Command = Command.THM2
    range: Optional[str] = None
    sample: Optional[int] = None
    sample_max: Optional[int] = None
    seed: Optional[int] = None
    sieve_limit: Optional[int] = None
    output: Optional[Path] = None
    format: str = "json"
    precision_bits: int = 128
    variant: ParityVariant = ParityVariant.STATEMENT
    workers: int = 1
    cache_dir: Optional[Path] = None
    timings: bool = True
    n: Optional[int] = None
    xs: List[int] = field(default_factory=list)
    plot: Optional[Path] = None

    def __post_init__(self) -> None:
        if isinstance(self.command, str):
            self.command = Command(self.command)
        if isinstance(self.variant, str):
            self.variant = ParityVariant(self.variant)
        if isinstance(self.xs, int):
            self.xs = [self.xs]
        if isinstance(self.timings, int):
            self.timings = bool(self.timings)
        for name in ("output", "cache_dir", "plot"):
            value = getattr(self, name)
            if value is not None and not isinstance(value, Path):
                setattr(self, name, Path(value))

    @classmethod
    def from_parameters(cls, filepath, **overrides) -> "RunConfig":
        """Load a parameters file; keyword overrides that are not None win."""
        params = parse_parameters_file(filepath)
        unknown = set(params) - set(PARAMETER_KEYS)
        if unknown:
            raise ValueError(f"{filepath}: unknown parameter(s) {sorted(unknown)}")
        values: Dict[str, Any] = {PARAMETER_KEYS[key]: value for key, value in params.items()}
        if "range" in values:
            values["range"] = str(values["range"])
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_overrides(self, **overrides) -> "RunConfig":
        names = {f.name for f in fields(self)}
        return replace(self, **{k: v for k, v in overrides.items() if k in names and v is not None})

    def validate(self) -> None:
        if self.format not in ("json", "csv"):
            raise ValueError(f"--format must be json or csv, got {self.format!r}")
        if self.workers < 1:
            raise ValueError(f"--workers must be >= 1, got {self.workers}")
        if self.precision_bits < 128:
            raise ValueError(f"--precision-bits must be >= 128, got {self.precision_bits}")
        if self.variant is ParityVariant.AUDIT and self.command is not Command.PI_FORMULA:
            raise ValueError("--variant only applies to pi-formula")
        if self.sample is not None:
            if self.sample < 1:
                raise ValueError(f"--sample must be >= 1, got {self.sample}")
            if self.seed is None:
                raise ValueError("--sample needs --seed so the sampled values are reproducible")
        sources = [self.range is not None, self.n is not None, bool(self.xs)]
        if sum(sources) == 0:
            raise ValueError("give one of --range, --n or --xs")
        if sum(sources) > 1:
            raise ValueError("--range, --n and --xs are mutually exclusive")
        if self.range is not None:
            start, end, _ = parse_range(self.range)
            if start > end:
                raise ValueError(f"--range start {start} is past its end {end}")

    def values(self) -> List[int]:
        """The x (or n) values to run over, in increasing order."""
        if self.n is not None:
            return [int(self.n)]
        if self.xs:
            return sorted(int(x) for x in self.xs)
        start, end, step = parse_range(self.range)
        if self.sample is None:
            return list(range(start, end + 1, step))
        top = self.sample_max if self.sample_max is not None else end
        if top < start:
            raise ValueError(f"--max {top} is below the range start {start}")
        population = top - start + 1
        rng = np.random.default_rng(self.seed)
        picks = rng.choice(population, size=min(self.sample, population), replace=False)
        return sorted(int(start + p) for p in picks)

    def required_limit(self, values: List[int]) -> int:
        """Smallest sieve limit that covers every query of this run."""
        top = max(values) if values else 2
        if self.command is Command.THM2:
            return 0
        if self.command is Command.PRIME_WINDOW:
            return max(nth_prime_upper_bound(top), 2)
        if self.command is Command.TREND:
            return max(top // 2, 2)
        return max(top, 2)

    @property
    def needs_factor_sieve(self) -> bool:
        return self.command in (Command.PI_FORMULA, Command.UPSILON)
