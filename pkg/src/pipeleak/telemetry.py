"""Telemetry CSV files and NDJSON record streams.

CSV layout, one file per station and channel::

    timestamp_s,station_id,channel,value
    0.0,inlet,pressure_pa,5000000.0

UTF-8, LF line endings.  Numbers are written with ``repr`` (shortest
round-trip form) so a file re-read and re-written is byte-identical.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
from collections import defaultdict
from pathlib import Path
from typing import Iterable

import numpy as np

from .domain import CHANNELS, TimeSeries
from .errors import PipeleakError

HEADER = ["timestamp_s", "station_id", "channel", "value"]

# relative jitter tolerated in sample spacing before a series is called non-uniform
_SPACING_RTOL = 1e-6


class TelemetryError(PipeleakError):
    def __init__(self, path, line, message):
        self.path, self.line = str(path), line
        super().__init__(f"{path}:{line}: {message}")


def _num(x: float) -> str:
    return repr(float(x))


def series_filename(series: TimeSeries) -> str:
    return f"{series.station_id}_{series.channel}.csv"


def write_series(series: TimeSeries, path) -> Path:
    path = Path(path)
    times = series.times
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(HEADER) + "\n")
        for t, v in zip(times, series.values):
            fh.write(f"{_num(t)},{series.station_id},{series.channel},{_num(v)}\n")
    return path


def write_telemetry(series: Iterable[TimeSeries], out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return [write_series(s, out_dir / series_filename(s)) for s in series]


def _parse_rows(path: Path):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise TelemetryError(path, 1, "empty file") from None
        if header != HEADER:
            raise TelemetryError(path, 1, f"header must be {','.join(HEADER)}")
        for row in reader:
            line = reader.line_num
            if len(row) != 4:
                raise TelemetryError(path, line, f"expected 4 fields, got {len(row)}")
            ts, station, channel, value = row
            try:
                t, v = float(ts), float(value)
            except ValueError:
                raise TelemetryError(path, line, "timestamp and value must be numbers") from None
            if not (math.isfinite(t) and math.isfinite(v)):
                raise TelemetryError(path, line, "non-finite number")
            if not station:
                raise TelemetryError(path, line, "empty station_id")
            if channel not in CHANNELS:
                raise TelemetryError(path, line, f"unknown channel {channel!r}")
            if channel == "pressure_pa" and v < 0:
                raise TelemetryError(path, line, "negative pressure")
            yield line, t, station, channel, v


def read_telemetry(directory) -> dict[tuple[str, str], TimeSeries]:
    """All ``*.csv`` files in ``directory`` keyed by ``(station_id, channel)``."""
    directory = Path(directory)
    if not directory.is_dir():
        raise TelemetryError(directory, 0, "not a directory")
    rows = defaultdict(list)
    origin = {}
    for path in sorted(directory.glob("*.csv")):
        for line, t, station, channel, v in _parse_rows(path):
            key = (station, channel)
            rows[key].append((t, v))
            origin.setdefault(key, (path, line))

    out = {}
    for key, samples in rows.items():
        path, line = origin[key]
        samples.sort()
        t = np.array([s[0] for s in samples])
        v = np.array([s[1] for s in samples])
        if t.size < 2:
            raise TelemetryError(path, line, f"{key[0]}/{key[1]} needs at least 2 samples")
        steps = np.diff(t)
        dt = (t[-1] - t[0]) / (t.size - 1)
        if dt <= 0 or np.max(np.abs(steps - dt)) > _SPACING_RTOL * dt + 1e-9:
            raise TelemetryError(path, line, f"{key[0]}/{key[1]} is not uniformly sampled")
        out[key] = TimeSeries(float(t[0]), float(dt), v, key[1], key[0])
    return out


def _jsonable(value):
    if dataclasses.is_dataclass(value):
        return {k: _jsonable(v) for k, v in dataclasses.asdict(value).items()}
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def to_json_line(record) -> str:
    """One NDJSON line; floats keep full round-trip precision."""
    return json.dumps(_jsonable(record), allow_nan=False)
