"""Core pipeline types and pressure-wave speed.

All quantities are strict SI: pascals, metres, seconds, kelvin and m^3/s.
Conversions from km, bar or degC happen only in :mod:`pipeleak.units`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import RangeError, RejectedInput

CHANNELS = ("pressure_pa", "flow_m3_s", "temperature_k")


@dataclass(frozen=True)
class PipelineProfile:
    """Geometry, wall material and wave-speed layout of a single line.

    ``velocity_segments`` holds ``(start_chainage_m, wave_speed_m_s)`` pairs;
    each segment runs to the start of the next one and the last runs to
    ``length_m``.  Temperature effects on wave speed are expressed by
    splitting the line into segments rather than through a fluid model.
    """

    length_m: float
    inner_diameter_m: float
    wall_thickness_m: float
    wall_elastic_modulus_pa: float
    elevation_profile: tuple[tuple[float, float], ...]
    velocity_segments: tuple[tuple[float, float], ...]

    def __post_init__(self):
        # store as tuples so the profile stays hashable and immutable
        object.__setattr__(self, "elevation_profile",
                           tuple((float(c), float(z)) for c, z in self.elevation_profile))
        object.__setattr__(self, "velocity_segments",
                           tuple((float(c), float(v)) for c, v in self.velocity_segments))

    @classmethod
    def uniform(cls, length_m: float, wave_speed_m_s: float, *,
                inner_diameter_m: float = 0.5, wall_thickness_m: float = 0.008,
                wall_elastic_modulus_pa: float = 2.1e11) -> "PipelineProfile":
        """Flat line with one wave-speed segment."""
        return cls(
            length_m=length_m,
            inner_diameter_m=inner_diameter_m,
            wall_thickness_m=wall_thickness_m,
            wall_elastic_modulus_pa=wall_elastic_modulus_pa,
            elevation_profile=((0.0, 0.0), (length_m, 0.0)),
            velocity_segments=((0.0, wave_speed_m_s),),
        )

    @property
    def cross_section_m2(self) -> float:
        return math.pi * self.inner_diameter_m ** 2 / 4.0

    def segment_bounds(self) -> list[tuple[float, float, float]]:
        """``(start, end, speed)`` triples for each velocity segment."""
        segs = self.velocity_segments
        out = []
        for i, (start, speed) in enumerate(segs):
            end = segs[i + 1][0] if i + 1 < len(segs) else self.length_m
            out.append((start, end, speed))
        return out

    def elevation_at(self, chainage_m):
        chain, elev = zip(*self.elevation_profile)
        return np.interp(chainage_m, chain, elev)

    def wave_speed_at(self, chainage_m: float) -> float:
        speed = self.velocity_segments[0][1]
        for start, v in self.velocity_segments:
            if chainage_m >= start:
                speed = v
        return speed

    @property
    def min_wave_speed(self) -> float:
        return min(v for _, v in self.velocity_segments)

    def is_uniform(self) -> bool:
        return len({v for _, v in self.velocity_segments}) == 1


@dataclass(frozen=True)
class FluidState:
    """Liquid properties at reference conditions plus compensation coefficients."""

    density_kg_m3: float
    bulk_modulus_pa: float
    thermal_expansion_per_k: float = 0.0
    compressibility_per_pa: float = 0.0
    reference_temperature_k: float = 288.15
    reference_pressure_pa: float = 101325.0

    def __post_init__(self):
        positive = ("density_kg_m3", "bulk_modulus_pa",
                    "reference_temperature_k", "reference_pressure_pa")
        for name in positive:
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise RejectedInput(f"{name} must be finite and > 0, got {value!r}")
        for name in ("thermal_expansion_per_k", "compressibility_per_pa"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise RejectedInput(f"{name} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class SensorSample:
    timestamp_s: float
    station_id: str
    channel: str
    value: float

    def __post_init__(self):
        if self.channel not in CHANNELS:
            raise RejectedInput(f"unknown channel {self.channel!r}")
        if not math.isfinite(self.value):
            raise RejectedInput(f"non-finite value at t={self.timestamp_s}")
        if self.channel == "pressure_pa" and self.value < 0:
            raise RejectedInput(f"negative pressure at t={self.timestamp_s}")


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Uniformly sampled telemetry for one station and channel."""

    start_time_s: float
    sample_interval_s: float
    values: np.ndarray
    channel: str = "pressure_pa"
    station_id: str = "inlet"

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if not self.sample_interval_s > 0:
            raise RejectedInput("sample_interval_s must be > 0")
        if values.ndim != 1 or values.size == 0:
            raise RejectedInput("values must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(values)):
            raise RejectedInput("values must be finite")
        if self.channel not in CHANNELS:
            raise RejectedInput(f"unknown channel {self.channel!r}")

    def __len__(self):
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return self.start_time_s + self.sample_interval_s * np.arange(self.values.size)

    @property
    def end_time_s(self) -> float:
        return self.start_time_s + self.sample_interval_s * (self.values.size - 1)

    @property
    def sample_rate_hz(self) -> float:
        return 1.0 / self.sample_interval_s

    def value_at(self, t_s):
        """Linear interpolation inside the sampled span."""
        if np.any(np.asarray(t_s) < self.start_time_s - 1e-9) or \
                np.any(np.asarray(t_s) > self.end_time_s + 1e-9):
            raise RangeError(f"t={t_s} outside [{self.start_time_s}, {self.end_time_s}]")
        return np.interp(t_s, self.times, self.values)

    def __eq__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (self.start_time_s == other.start_time_s
                and self.sample_interval_s == other.sample_interval_s
                and self.channel == other.channel
                and self.station_id == other.station_id
                and np.array_equal(self.values, other.values))


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.problems

    def __bool__(self):
        return self.ok


def validate_profile(profile: PipelineProfile) -> ValidationReport:
    """Check every PipelineProfile invariant and list the violations."""
    problems = []
    L = profile.length_m
    for name in ("length_m", "inner_diameter_m", "wall_thickness_m",
                 "wall_elastic_modulus_pa"):
        value = getattr(profile, name)
        if not (math.isfinite(value) and value > 0):
            problems.append(f"{name} must be > 0 (got {value!r})")

    segs = profile.velocity_segments
    if not segs:
        problems.append("velocity_segments is empty")
    else:
        first = segs[0][0]
        if first > 0:
            problems.append(f"velocity_segments gap: [0, {first:g}] not covered")
        elif first < 0:
            problems.append(f"velocity_segments start before 0 (at {first:g})")
        for (a, _), (b, _) in zip(segs, segs[1:]):
            if b <= a:
                problems.append(f"velocity_segments overlap: start {b:g} follows {a:g}")
        for start, speed in segs:
            if math.isfinite(L) and start >= L:
                problems.append(f"velocity segment starting at {start:g} lies beyond "
                                f"length {L:g}")
            if not (math.isfinite(speed) and speed > 0):
                problems.append(f"wave speed {speed!r} at chainage {start:g} must be > 0")

    elev = profile.elevation_profile
    if len(elev) < 2:
        problems.append("elevation_profile needs at least two points")
    else:
        if elev[0][0] != 0:
            problems.append(f"elevation_profile first chainage is {elev[0][0]:g}, not 0")
        if elev[-1][0] != L:
            problems.append(f"elevation_profile last chainage is {elev[-1][0]:g}, "
                            f"not length {L:g}")
        for (a, _), (b, _) in zip(elev, elev[1:]):
            if b <= a:
                problems.append(f"elevation_profile chainages not increasing at {b:g}")
        if not all(math.isfinite(z) for _, z in elev):
            problems.append("elevation_profile has non-finite elevations")
    return ValidationReport(tuple(problems))


def require_valid(profile: PipelineProfile) -> None:
    report = validate_profile(profile)
    if not report.ok:
        raise RejectedInput("invalid profile: " + "; ".join(report.problems))


def wave_speed(fluid: FluidState, profile: PipelineProfile) -> float:
    """Korteweg thin-wall pressure-wave speed in m/s.

    ``sqrt((K/rho) / (1 + K*D/(E*e)))``; wall compliance lowers the speed
    below the bulk acoustic value ``sqrt(K/rho)``.
    """
    K = fluid.bulk_modulus_pa
    rho = fluid.density_kg_m3
    D = profile.inner_diameter_m
    E = profile.wall_elastic_modulus_pa
    e = profile.wall_thickness_m
    with np.errstate(all="ignore"):
        v = math.sqrt((K / rho) / (1.0 + K * D / (E * e))) if E * e > 0 else float("nan")
    if not (math.isfinite(v) and v > 0):
        raise RejectedInput(f"degenerate wave-speed inputs (K={K}, rho={rho}, D={D}, "
                            f"E={E}, e={e})")
    return v


def travel_time(profile: PipelineProfile, a_m: float, b_m: float) -> float:
    """Time for a pressure wave to cross ``[min(a,b), max(a,b)]``."""
    lo, hi = sorted((a_m, b_m))
    total = 0.0
    for start, end, speed in profile.segment_bounds():
        overlap = min(hi, end) - max(lo, start)
        if overlap > 0:
            total += overlap / speed
    return total

