"""Leak signal amplitude, frequency-squared attenuation and severity classes."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RejectedInput

URGENT_24_48H = "URGENT_24_48H"
REPAIR_30D = "REPAIR_30D"
MONITOR = "MONITOR"
SEVERITY_ORDER = (MONITOR, REPAIR_30D, URGENT_24_48H)

# hole/pipe diameter ratios at which a leak moves to a more urgent class;
# toolkit policy, there is no published criterion
URGENT_RATIO = 0.1
REPAIR_RATIO = 0.01

# pressure-drop coefficient for a leak in a pipe without flow
DROP_COEFFICIENT = 0.3

# continuous emission band of an established leak jet, Hz
EMISSION_BAND_HZ = (175e3, 750e3)

ROCHA_FREQUENCY_HZ = 10.0
ROCHA_DISTANCE_M = 160934.4  # 100 miles

NO_FLOW_CAVEAT = ("leak pressure drop uses the no-flow relation; "
                  "applied to an operating line")


@dataclass(frozen=True)
class LeakGeometry:
    hole_diameter_m: float
    pipe_diameter_m: float
    static_pressure_pa: float

    def __post_init__(self):
        if not (0 <= self.hole_diameter_m <= self.pipe_diameter_m):
            raise RejectedInput("need 0 <= hole_diameter_m <= pipe_diameter_m, got "
                                f"{self.hole_diameter_m} / {self.pipe_diameter_m}")
        if not self.static_pressure_pa >= 0:
            raise RejectedInput("static_pressure_pa must be >= 0")

    @property
    def hole_ratio(self) -> float:
        if self.pipe_diameter_m == 0:
            raise RejectedInput("pipe_diameter_m must be > 0")
        return self.hole_diameter_m / self.pipe_diameter_m


@dataclass(frozen=True)
class AttenuationModel:
    """Spatial damping ``exp(-k f^2 d)`` with ``k`` in s^2/m."""

    damping_coefficient_s2_per_m: float = 0.0
    reference_band_hz: tuple[float, float] = EMISSION_BAND_HZ

    def __post_init__(self):
        if not self.damping_coefficient_s2_per_m >= 0:
            raise RejectedInput("damping coefficient must be >= 0")
        low, high = self.reference_band_hz
        if not low < high:
            raise RejectedInput("reference band needs low < high")

    @classmethod
    def calibrated(cls, frequency_hz: float = ROCHA_FREQUENCY_HZ,
                   distance_m: float = ROCHA_DISTANCE_M, factor: float = 0.5,
                   **kwargs) -> "AttenuationModel":
        """Pick ``k`` so that ``frequency_hz`` keeps ``factor`` of its amplitude
        after ``distance_m``.  Defaults: half amplitude left at 10 Hz after
        100 miles."""
        k = -math.log(factor) / (frequency_hz ** 2 * distance_m)
        return cls(k, **kwargs)


def leak_pressure_drop(geometry: LeakGeometry) -> float:
    """Local pressure drop at the leak, ``0.3 * P_s * (D_hole / D_pipe)**2`` in Pa."""
    return DROP_COEFFICIENT * geometry.static_pressure_pa * geometry.hole_ratio ** 2


def min_detectable_hole_ratio(static_pressure_pa: float, sensor_floor_pa: float) -> float:
    """Smallest hole/pipe diameter ratio whose drop reaches the sensor floor."""
    if not static_pressure_pa > 0:
        raise RejectedInput("static_pressure_pa must be > 0")
    return math.sqrt(sensor_floor_pa / (DROP_COEFFICIENT * static_pressure_pa))


def hole_ratio_from_drop(pressure_drop_pa: float, static_pressure_pa: float) -> float:
    """Invert the drop relation; clipped to a physical ratio in [0, 1]."""
    if not static_pressure_pa > 0:
        raise RejectedInput("static_pressure_pa must be > 0")
    ratio = math.sqrt(max(pressure_drop_pa, 0.0) / (DROP_COEFFICIENT * static_pressure_pa))
    return min(ratio, 1.0)


def attenuation_factor(model: AttenuationModel, frequency_hz, distance_m):
    if np.any(np.asarray(frequency_hz) < 0) or np.any(np.asarray(distance_m) < 0):
        raise RejectedInput("frequency and distance must be >= 0")
    out = np.exp(-model.damping_coefficient_s2_per_m * np.square(frequency_hz) * distance_m)
    return float(out) if np.ndim(out) == 0 else out


def classify_severity(estimated_hole_ratio: float, detectable: bool = True) -> str:
    if not 0 <= estimated_hole_ratio <= 1:
        raise RejectedInput(f"hole ratio must lie in [0, 1], got {estimated_hole_ratio}")
    if not detectable:
        return MONITOR
    if estimated_hole_ratio >= URGENT_RATIO:
        return URGENT_24_48H
    if estimated_hole_ratio >= REPAIR_RATIO:
        return REPAIR_30D
    return MONITOR


def severity_rank(severity: str) -> int:
    return SEVERITY_ORDER.index(severity)
