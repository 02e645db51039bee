"""
Record sinks and run summaries.

Records are written one whole line at a time and flushed after every batch,
so a run that dies mid-way leaves no half-written record behind.
"""
from __future__ import annotations

#Core libraries
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, TextIO

#Third party libraries
import pandas as pd

#Local libraries
from .utils import to_jsonable

logger = logging.getLogger(__name__)


class RecordSink:
    """Ordered writer for JSON-lines or CSV records.

    CSV batches go through ``DataFrame.to_csv``; the header is written with
    the first batch only and later batches are aligned to its columns.
    """

    def __init__(self, stream: TextIO, fmt: str = "json", owned: bool = False):
        if fmt not in ("json", "csv"):
            raise ValueError(f"unknown output format {fmt!r}")
        self.stream = stream
        self.owned = owned
        self.format = fmt
        self.count = 0
        self._columns = None

    @classmethod
    def open(cls, path: Optional[Path], fmt: str = "json", stdout: Optional[TextIO] = None):
        if path is None:
            return cls(stdout or sys.stdout, fmt)
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        return cls(open(path, "w", encoding="utf-8", newline=""), fmt, owned=True)

    def write(self, records: Iterable[dict]) -> None:
        records = list(records)
        if not records:
            return
        if self.format == "json":
            text = "".join(json.dumps(record) + "\n" for record in records)
        else:
            text = self._csv_chunk(records)
        self.stream.write(text)
        self.stream.flush()
        self.count += len(records)

    def _csv_chunk(self, records: list) -> str:
        rows = [
            {key: json.dumps(value) if isinstance(value, (list, dict)) else value
             for key, value in record.items()}
            for record in records
        ]
        frame = pd.DataFrame(rows)
        header = self._columns is None
        if header:
            self._columns = list(frame.columns)
        else:
            frame = frame.reindex(columns=self._columns)
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, header=header, float_format="%.15g",
                     lineterminator="\n")
        return buffer.getvalue()

    def close(self) -> None:
        if self.owned:
            self.stream.close()

    def __enter__(self) -> "RecordSink":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


@dataclass
class RunSummary:
    """Counts behind the closing summary line."""
    checked: int = 0
    exact: int = 0
    violations: int = 0
    inconclusive: int = 0
    statuses: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def count(self, *, exact: bool = False, violation: bool = False,
              inconclusive: bool = False, status: Optional[str] = None) -> None:
        self.checked += 1
        self.exact += int(exact)
        self.violations += int(violation)
        self.inconclusive += int(inconclusive)
        if status is not None:
            self.statuses[status] = self.statuses.get(status, 0) + 1

    def line(self) -> str:
        return (
            f"checked={self.checked} exact={self.exact} violations={self.violations} "
            f"inconclusive={self.inconclusive} elapsed={self.elapsed:.3f}"
        )

    def footer(self) -> dict:
        return {
            "kind": "SUMMARY",
            "checked": self.checked,
            "exact": self.exact,
            "violations": self.violations,
            "inconclusive": self.inconclusive,
            "statuses": dict(sorted(self.statuses.items())),
            "elapsed": to_jsonable(round(self.elapsed, 3)),
        }

    @property
    def exit_code(self) -> int:
        return 1 if self.violations else 0
