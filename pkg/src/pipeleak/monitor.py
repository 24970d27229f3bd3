"""Turn station telemetry into alarms: pressure-wave leaks and volume imbalance."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np
from scipy.constants import g as GRAVITY

from .acoustic import (NO_FLOW_CAVEAT, ROCHA_FREQUENCY_HZ, AttenuationModel, LeakGeometry,
                       attenuation_factor, classify_severity, hole_ratio_from_drop)
from .alarms import Alarm
from .detect import DROP, DetectionConfig, detect_onsets, pair_events
from .domain import FluidState, PipelineProfile, TimeSeries, travel_time
from .errors import InfeasibleTimeDifference
from .inventory import BalanceResult, detect_imbalance, line_inventory, volume_balance
from .locate import localize_profile
from .sim import orifice_flow

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BalanceConfig:
    threshold_m3: float = 1.0
    persistence_windows: int = 3
    compensate: bool = True


@dataclass(frozen=True)
class RunConfig:
    """Everything a detection or balance run needs besides the telemetry."""

    profile: PipelineProfile
    fluid: FluidState
    detection: DetectionConfig = field(default_factory=DetectionConfig)
    balance: BalanceConfig = field(default_factory=BalanceConfig)
    attenuation: AttenuationModel = field(default_factory=AttenuationModel)
    transient_frequency_hz: float = ROCHA_FREQUENCY_HZ
    sensor_floor_pa: float = 500.0
    pairing_margin_s: float = 5.0
    inlet_station: str = "inlet"
    outlet_station: str = "outlet"

    @property
    def max_lag_s(self) -> float:
        return travel_time(self.profile, 0.0, self.profile.length_m) + self.pairing_margin_s


@dataclass(frozen=True)
class WaveReport:
    alarms: list
    fixes: list
    infeasible: list  # (inlet event, outlet event, message)


def _static_pressure(config: RunConfig, inlet_pressure_pa: float, chainage_m: float) -> float:
    z0 = config.profile.elevation_at(0.0)
    z = config.profile.elevation_at(chainage_m)
    return float(inlet_pressure_pa + config.fluid.density_kg_m3 * GRAVITY * (z0 - z))


def pressure_wave_alarms(inlet_pressure: TimeSeries, outlet_pressure: TimeSeries,
                         config: RunConfig) -> WaveReport:
    """Detect, pair and localize pressure drops seen at both ends of the line."""
    inlet_events = detect_onsets(inlet_pressure, config.detection)
    outlet_events = detect_onsets(outlet_pressure, config.detection)
    pairing = pair_events(inlet_events, outlet_events, config.max_lag_s)
    log.debug("onsets: %d inlet, %d outlet, %d pairs", len(inlet_events),
              len(outlet_events), len(pairing.pairs))

    multiplier = config.detection.threshold_scale * np.sqrt(2 * np.log(len(inlet_pressure)))
    L = config.profile.length_m
    alarms, fixes, infeasible = [], [], []
    for ev_in, ev_out in pairing.pairs:
        if ev_in.polarity != DROP:
            continue
        confidence = float(1.0 - multiplier / min(ev_in.strength, ev_out.strength))
        try:
            fix = localize_profile(ev_in.onset_time_s, ev_out.onset_time_s,
                                   config.profile, confidence=confidence)
        except InfeasibleTimeDifference as exc:
            infeasible.append((ev_in, ev_out, str(exc)))
            continue
        fixes.append(fix)

        # undo the attenuation each station saw to estimate the drop at the leak
        f = config.transient_frequency_hz
        att_in = attenuation_factor(config.attenuation, f, fix.chainage_m)
        att_out = attenuation_factor(config.attenuation, f, L - fix.chainage_m)
        drop = 0.5 * (-ev_in.step_pa / att_in - ev_out.step_pa / att_out)
        pre = inlet_pressure.values[: max(1, ev_in.index)]
        p_static = _static_pressure(config, float(np.median(pre)), fix.chainage_m)
        ratio = hole_ratio_from_drop(drop, p_static) if p_static > 0 else 0.0
        detectable = drop >= config.sensor_floor_pa
        alarms.append(Alarm(
            time_s=min(ev_in.onset_time_s, ev_out.onset_time_s),
            kind="PRESSURE_WAVE_LEAK",
            severity=classify_severity(ratio, detectable),
            confidence=confidence,
            chainage_m=fix.chainage_m,
            time_difference_s=fix.time_difference_s,
            raised_at_s=max(ev_in.onset_time_s, ev_out.onset_time_s),
            notes=(f"drop {drop:.1f} Pa, hole ratio {ratio:.4f}, "
                   f"wave speed {fix.wave_speed_used}; {NO_FLOW_CAVEAT}"),
        ))
    alarms.sort(key=lambda a: a.time_s)
    return WaveReport(alarms, fixes, infeasible)


def _mean_at(series: Sequence[Optional[TimeSeries]], t: float, default: float) -> float:
    present = [s for s in series if s is not None]
    if not present:
        return default
    return float(np.mean([s.value_at(t) for s in present]))


def balance_windows(inlet_flow: TimeSeries, outlet_flow: TimeSeries, config: RunConfig,
                    window_s: float, pressures: Sequence[Optional[TimeSeries]] = (),
                    temperatures: Sequence[Optional[TimeSeries]] = ()) -> list[BalanceResult]:
    """Volume balance over consecutive windows of ``window_s`` seconds.

    Line pressure and temperature at each window edge are the mean of the
    station readings; without temperature telemetry the fluid's reference
    temperature is used.  A trailing partial window is dropped.
    """
    fluid = config.fluid
    if not config.balance.compensate:
        fluid = FluidState(fluid.density_kg_m3, fluid.bulk_modulus_pa, 0.0, 0.0,
                           fluid.reference_temperature_k, fluid.reference_pressure_pa)
    t_start = max(inlet_flow.start_time_s, outlet_flow.start_time_s)
    t_end = min(inlet_flow.end_time_s, outlet_flow.end_time_s)
    count = int(np.floor((t_end - t_start) / window_s + 1e-9))

    def snapshot(t):
        p = _mean_at(pressures, t, fluid.reference_pressure_pa)
        temp = _mean_at(temperatures, t, fluid.reference_temperature_k)
        return line_inventory(config.profile, fluid, p, temp, time_s=t)

    results = []
    edge = snapshot(t_start)
    for k in range(count):
        t0 = t_start + k * window_s
        t1 = t_start + (k + 1) * window_s
        nxt = snapshot(t1)
        results.append(volume_balance(inlet_flow, outlet_flow, edge, nxt, (t0, t1)))
        edge = nxt
    return results


def volume_alarm(results: Sequence[BalanceResult], config: RunConfig,
                 line_pressure_pa: float) -> Optional[Alarm]:
    """Imbalance alarm with a severity estimated from the implied leak rate."""
    alarm = detect_imbalance(results, config.balance.threshold_m3,
                             config.balance.persistence_windows)
    if alarm is None:
        return None
    duration = alarm.raised_at_s - alarm.time_s
    rate = alarm.delta_v_m3 / duration
    D = config.profile.inner_diameter_m
    # orifice flow scales with the hole ratio squared; invert against a full-bore hole
    unit = orifice_flow(LeakGeometry(D, D, max(line_pressure_pa, 0.0)),
                        config.fluid.density_kg_m3)
    ratio = min(1.0, float(np.sqrt(rate / unit))) if unit > 0 else 0.0
    return replace(alarm, severity=classify_severity(ratio),
                   notes=alarm.notes + f"; implied leak rate {rate:.6g} m3/s, "
                                       f"hole ratio {ratio:.4f}")
