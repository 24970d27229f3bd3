"""Compensated line inventory and volume balance.

Leakage over a window is metered inflow minus metered outflow minus the
change in line inventory, so that a steady line with no leak balances to
zero and thermal swell of the contents is not mistaken for lost product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .alarms import Alarm
from .domain import FluidState, PipelineProfile, TimeSeries
from .errors import RangeError, RejectedInput

# tolerance for window endpoints that fall a rounding error outside the data
_EDGE_EPS = 1e-9


@dataclass(frozen=True)
class InventorySnapshot:
    time_s: float
    line_volume_m3: float
    mean_pressure_pa: float
    mean_temperature_k: float

    def __post_init__(self):
        if not self.line_volume_m3 > 0:
            raise RejectedInput("line_volume_m3 must be > 0")


@dataclass(frozen=True)
class BalanceResult:
    window: tuple[float, float]
    v_in_m3: float
    v_out_m3: float
    delta_inventory_m3: float
    leakage_volume_m3: float

    @classmethod
    def from_terms(cls, window, v_in, v_out, delta_inventory):
        return cls(tuple(window), v_in, v_out, delta_inventory,
                   v_in - v_out - delta_inventory)


def line_inventory(profile: PipelineProfile, fluid: FluidState,
                   mean_pressure_pa: float, mean_temperature_k: float,
                   time_s: float = 0.0) -> InventorySnapshot:
    """Volume of fluid held in the line, corrected for temperature and pressure.

    Pipe-wall dilation is folded into ``fluid.compressibility_per_pa``.
    """
    base = profile.cross_section_m2 * profile.length_m
    factor = (1.0
              + fluid.thermal_expansion_per_k * (mean_temperature_k - fluid.reference_temperature_k)
              + fluid.compressibility_per_pa * (mean_pressure_pa - fluid.reference_pressure_pa))
    volume = base * factor
    if not (math.isfinite(volume) and volume > 0):
        raise RejectedInput(f"compensated inventory is not positive ({volume!r})")
    return InventorySnapshot(time_s, volume, mean_pressure_pa, mean_temperature_k)


def integrate_flow(series: TimeSeries, t0_s: float, t1_s: float) -> float:
    """Trapezoidal volume through a flowmeter over ``[t0_s, t1_s]`` in m^3."""
    if series.channel != "flow_m3_s":
        raise RejectedInput(f"expected a flow series, got {series.channel!r}")
    if t1_s < t0_s:
        raise RangeError(f"window end {t1_s} precedes start {t0_s}")
    if t0_s < series.start_time_s - _EDGE_EPS or t1_s > series.end_time_s + _EDGE_EPS:
        raise RangeError(f"window [{t0_s}, {t1_s}] outside series span "
                         f"[{series.start_time_s}, {series.end_time_s}]")
    times = series.times
    inside = (times > t0_s) & (times < t1_s)
    t = np.concatenate(([t0_s], times[inside], [t1_s]))
    q = np.interp(t, times, series.values)
    return float(np.trapezoid(q, t))


def volume_balance(inlet_flow: TimeSeries, outlet_flow: TimeSeries,
                   inventory_start: InventorySnapshot, inventory_end: InventorySnapshot,
                   window: tuple[float, float]) -> BalanceResult:
    """Leakage volume over ``window``; positive means product went missing."""
    t0, t1 = window
    for snap, t in ((inventory_start, t0), (inventory_end, t1)):
        if abs(snap.time_s - t) > 1e-6:
            raise RangeError(f"inventory snapshot at {snap.time_s} does not match "
                             f"window edge {t}")
    v_in = integrate_flow(inlet_flow, t0, t1)
    v_out = integrate_flow(outlet_flow, t0, t1)
    d_inv = inventory_end.line_volume_m3 - inventory_start.line_volume_m3
    return BalanceResult.from_terms((t0, t1), v_in, v_out, d_inv)


def detect_imbalance(results: Sequence[BalanceResult], threshold_m3: float,
                     persistence_windows: int = 3) -> Optional[Alarm]:
    """Raise a volume alarm after ``persistence_windows`` consecutive exceedances.

    The alarm's ``time_s`` is the start of the first exceeding window in the
    run, ``raised_at_s`` the end of the window that completed it, and
    ``delta_v_m3`` the leakage summed over the run.
    """
    if persistence_windows < 1:
        raise RejectedInput("persistence_windows must be >= 1")
    run: list[BalanceResult] = []
    for result in results:
        if result.leakage_volume_m3 > threshold_m3:
            run.append(result)
            if len(run) == persistence_windows:
                total = sum(r.leakage_volume_m3 for r in run)
                weakest = min(r.leakage_volume_m3 for r in run)
                confidence = 1.0 - threshold_m3 / weakest if threshold_m3 > 0 else 1.0
                return Alarm(
                    time_s=run[0].window[0],
                    kind="VOLUME_IMBALANCE",
                    severity="MONITOR",
                    confidence=confidence,
                    delta_v_m3=total,
                    raised_at_s=result.window[1],
                    notes=f"{persistence_windows} consecutive windows above "
                          f"{threshold_m3:g} m3",
                )
        else:
            run = []
    return None
