"""Telemetry CSV reading and writing.

Format: UTF-8, comma separated, decimal point, mandatory header whose
first column is the time axis `t` in seconds. Samples must be uniformly
spaced within 1e-9 relative. Values are written with shortest round-trip
precision, so a write/read cycle reproduces samples exactly.

Line numbers in errors are 1-based file lines; the header is line 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CsvFormatError
from .signals import Signal

__all__ = ["TelemetryRecord", "parse_csv", "format_csv"]

_DT_RTOL = 1e-9


@dataclass(frozen=True)
class TelemetryRecord:
    """Parsed multi-column record; every column shares dt and t0."""

    names: tuple[str, ...]
    signals: dict[str, Signal]
    dt: float
    t0: float
    roles: tuple[tuple[str, str], ...] | None = None

    def __post_init__(self) -> None:
        if tuple(self.signals) != self.names:
            object.__setattr__(self, "signals", {n: self.signals[n] for n in self.names})

    @property
    def count(self) -> int:
        return next(iter(self.signals.values())).count

    @property
    def duration(self) -> float:
        return (self.count - 1) * self.dt

    def with_roles(self, channels) -> "TelemetryRecord":
        """Attach (input column, output column) pairs from a run config."""
        return TelemetryRecord(
            names=self.names,
            signals=dict(self.signals),
            dt=self.dt,
            t0=self.t0,
            roles=tuple((str(i), str(o)) for i, o in channels),
        )


def parse_csv(text: str) -> TelemetryRecord:
    """Parse telemetry CSV text into per-column signals."""
    lines = text.splitlines()
    if not lines:
        raise CsvFormatError("empty input", line=1)
    header = [cell.strip() for cell in lines[0].split(",")]
    if header[0] != "t":
        raise CsvFormatError("first column must be the time axis 't'", line=1)
    names = tuple(header[1:])
    if not names:
        raise CsvFormatError("no data columns after the time axis", line=1)
    if any(not n for n in names) or len(set(names)) != len(names):
        raise CsvFormatError("column names must be nonempty and unique", line=1)

    width = len(header)
    rows: list[list[float]] = []
    for lineno, raw in enumerate(lines[1:], start=2):
        cells = raw.split(",")
        if len(cells) != width:
            raise CsvFormatError(
                f"expected {width} cells, found {len(cells)}", line=lineno
            )
        try:
            rows.append([float(c) for c in cells])
        except ValueError:
            bad = next(c for c in cells if not _is_number(c))
            raise CsvFormatError(f"non-numeric cell {bad!r}", line=lineno) from None
    if len(rows) < 2:
        raise CsvFormatError("need at least two data rows", line=len(lines))

    data = np.asarray(rows, dtype=float)
    t = data[:, 0]
    dt = float(t[1] - t[0])
    if dt <= 0.0:
        raise CsvFormatError("time axis must be strictly increasing", line=3)
    steps = np.diff(t)
    off = np.nonzero(np.abs(steps - dt) > _DT_RTOL * abs(dt))[0]
    if off.size:
        # the interval beginning at this row deviates from the first interval
        bad_line = int(off[0]) + 2
        raise CsvFormatError(
            f"non-uniform sample spacing: interval {steps[off[0]]:.12g} differs "
            f"from {dt:.12g}",
            line=bad_line,
        )

    t0 = float(t[0])
    signals = {
        name: Signal(data[:, i + 1], dt=dt, t0=t0) for i, name in enumerate(names)
    }
    return TelemetryRecord(names=names, signals=signals, dt=dt, t0=t0)


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def format_csv(record: TelemetryRecord) -> str:
    """Render a record back to CSV with exact round-trip floats."""
    cols = [record.signals[n].samples for n in record.names]
    t = record.t0 + record.dt * np.arange(record.count)
    out = ["t," + ",".join(record.names)]
    for i in range(record.count):
        row = [repr(float(t[i]))] + [repr(float(c[i])) for c in cols]
        out.append(",".join(row))
    return "\n".join(out) + "\n"
