"""Deterministic synthetic SCADA telemetry for a line with leak incidents.

The negative pressure wave from a leak is modelled as an attenuated step
reaching each end station after the wave's travel time, not with a full
method-of-characteristics solver.  That keeps arrival times, the quantity
localization depends on, exact by construction.

Every run is a pure function of its :class:`LeakScenario`, seed included.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy.constants import g as GRAVITY

from .acoustic import (ROCHA_FREQUENCY_HZ, AttenuationModel, LeakGeometry,
                       attenuation_factor, leak_pressure_drop)
from .domain import (FluidState, PipelineProfile, TimeSeries, travel_time,
                     validate_profile)
from .errors import RejectedInput
from .rng import SplitMix64

DISCHARGE_COEFFICIENT = 0.61

# child-stream keys, fixed so streams do not shift when a channel is unused
_STREAM_INLET_P, _STREAM_OUTLET_P, _STREAM_INLET_Q, _STREAM_OUTLET_Q, _STREAM_PUMP = range(1, 6)


@dataclass(frozen=True)
class NoiseSpec:
    gaussian_sigma_pa: float = 0.0
    pump_harmonic: tuple[float, float] = (0.0, 0.0)  # (frequency_hz, amplitude_pa)
    flow_sigma_m3_s: float = 0.0
    clock_skew_s: float = 0.0  # outlet clock ahead of inlet clock

    def __post_init__(self):
        for value in (self.gaussian_sigma_pa, *self.pump_harmonic, self.flow_sigma_m3_s):
            if not (math.isfinite(value) and value >= 0):
                raise RejectedInput("noise parameters must be finite and >= 0")


@dataclass(frozen=True)
class TemperatureSpec:
    """Line temperature seen by both stations: constant, then an optional ramp."""

    initial_k: float
    ramp_k_per_s: float = 0.0
    ramp_start_s: float = 0.0
    ramp_end_s: Optional[float] = None

    def at(self, t):
        end = np.inf if self.ramp_end_s is None else self.ramp_end_s
        elapsed = np.clip(t, self.ramp_start_s, end) - self.ramp_start_s
        return self.initial_k + self.ramp_k_per_s * elapsed


@dataclass(frozen=True)
class LeakIncident:
    chainage_m: float
    start_s: float
    geometry: LeakGeometry
    end_s: Optional[float] = None


@dataclass(frozen=True)
class LeakScenario:
    """Inputs for one simulated run.

    The leak fields describe the primary incident; ``extra_leaks`` adds
    further incidents (a theft that is opened, closed and opened again).
    The static pressure stored in each leak geometry is ignored: the
    simulator uses the hydrostatic pressure at the leak site instead.
    """

    profile: PipelineProfile
    fluid: FluidState
    baseline_flow_m3_s: float
    inlet_pressure_pa: float
    leak_chainage_m: float
    leak_start_s: float
    leak_geometry: LeakGeometry
    sample_rate_hz: float
    duration_s: float
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    seed: int = 0
    leak_end_s: Optional[float] = None
    extra_leaks: tuple[LeakIncident, ...] = ()
    attenuation: AttenuationModel = field(default_factory=AttenuationModel)
    transient_frequency_hz: float = ROCHA_FREQUENCY_HZ
    ramp_s: float = 0.0
    temperature: Optional[TemperatureSpec] = None
    inlet_station: str = "inlet"
    outlet_station: str = "outlet"

    @property
    def leaks(self) -> tuple[LeakIncident, ...]:
        primary = LeakIncident(self.leak_chainage_m, self.leak_start_s,
                               self.leak_geometry, self.leak_end_s)
        return (primary, *self.extra_leaks)

    def validate(self) -> None:
        report = validate_profile(self.profile)
        if not report.ok:
            raise RejectedInput("invalid profile: " + "; ".join(report.problems))
        if not self.sample_rate_hz > 0:
            raise RejectedInput("sample_rate_hz must be > 0")
        if not self.duration_s > 0:
            raise RejectedInput("duration_s must be > 0")
        if self.duration_s * self.sample_rate_hz < 1:
            raise RejectedInput("duration too short for two samples")
        if not self.inlet_pressure_pa >= 0:
            raise RejectedInput("inlet_pressure_pa must be >= 0")
        if self.ramp_s < 0:
            raise RejectedInput("ramp_s must be >= 0")
        for leak in self.leaks:
            if not 0 <= leak.chainage_m <= self.profile.length_m:
                raise RejectedInput(f"leak chainage {leak.chainage_m} outside "
                                    f"[0, {self.profile.length_m}]")
            if not 0 <= leak.start_s <= self.duration_s:
                raise RejectedInput(f"leak start {leak.start_s} outside "
                                    f"[0, {self.duration_s}]")
            if leak.end_s is not None and leak.end_s < leak.start_s:
                raise RejectedInput("leak end precedes leak start")


@dataclass(frozen=True)
class LeakTruth:
    leak_chainage_m: float
    leak_start_s: float
    arrival_inlet_s: float
    arrival_outlet_s: float
    leak_rate_m3_s: float
    pressure_drop_pa: float
    step_inlet_pa: float
    step_outlet_pa: float
    leak_end_s: Optional[float] = None

    @property
    def time_difference_s(self) -> float:
        """Inlet arrival minus outlet arrival."""
        return self.arrival_inlet_s - self.arrival_outlet_s


@dataclass(frozen=True)
class ScenarioOutput:
    inlet_pressure: TimeSeries
    outlet_pressure: TimeSeries
    inlet_flow: TimeSeries
    outlet_flow: TimeSeries
    truths: tuple[LeakTruth, ...]
    inlet_temperature: Optional[TimeSeries] = None
    outlet_temperature: Optional[TimeSeries] = None

    @property
    def truth(self) -> LeakTruth:
        return self.truths[0]

    def series(self) -> list[TimeSeries]:
        out = [self.inlet_pressure, self.outlet_pressure, self.inlet_flow, self.outlet_flow]
        if self.inlet_temperature is not None:
            out += [self.inlet_temperature, self.outlet_temperature]
        return out


def steady_state_profile(scenario: LeakScenario) -> list[tuple[float, float]]:
    """Hydrostatic pressure at each elevation point (no friction term)."""
    rho = scenario.fluid.density_kg_m3
    points = scenario.profile.elevation_profile
    z0 = points[0][1]
    return [(c, scenario.inlet_pressure_pa + rho * GRAVITY * (z0 - z)) for c, z in points]


def static_pressure_at(scenario: LeakScenario, chainage_m: float) -> float:
    chain, pressure = zip(*steady_state_profile(scenario))
    return float(np.interp(chainage_m, chain, pressure))


def orifice_flow(geometry: LeakGeometry, density_kg_m3: float,
                 discharge_coefficient: float = DISCHARGE_COEFFICIENT) -> float:
    """Sharp-edged orifice outflow driven by the static pressure, m^3/s."""
    area = math.pi * geometry.hole_diameter_m ** 2 / 4.0
    return discharge_coefficient * area * math.sqrt(
        2.0 * geometry.static_pressure_pa / density_kg_m3)


def hole_diameter_for_rate(rate_m3_s: float, static_pressure_pa: float,
                           density_kg_m3: float,
                           discharge_coefficient: float = DISCHARGE_COEFFICIENT) -> float:
    """Inverse of :func:`orifice_flow`."""
    jet = math.sqrt(2.0 * static_pressure_pa / density_kg_m3)
    return math.sqrt(4.0 * rate_m3_s / (math.pi * discharge_coefficient * jet))


def _step(t, arrival, ramp_s):
    if ramp_s > 0:
        return np.clip((t - arrival) / ramp_s, 0.0, 1.0)
    return (t >= arrival).astype(float)


def simulate(scenario: LeakScenario) -> ScenarioOutput:
    scenario.validate()
    profile = scenario.profile
    L = profile.length_m
    fs = scenario.sample_rate_hz
    n = int(round(scenario.duration_s * fs)) + 1
    t = np.arange(n) / fs
    # the outlet clock runs ahead, so sample k there shows the line at t - skew
    t_out = t - scenario.noise.clock_skew_s

    p_out0 = steady_state_profile(scenario)[-1][1]
    p_in = np.full(n, scenario.inlet_pressure_pa)
    p_out = np.full(n, p_out0)
    q_in = np.full(n, scenario.baseline_flow_m3_s)
    q_out = np.full(n, scenario.baseline_flow_m3_s)

    truths = []
    for leak in scenario.leaks:
        x = leak.chainage_m
        site = replace(leak.geometry, static_pressure_pa=static_pressure_at(scenario, x))
        dp = leak_pressure_drop(site)
        rate = orifice_flow(site, scenario.fluid.density_kg_m3)
        tt_in = travel_time(profile, 0.0, x)
        tt_out = travel_time(profile, x, L)
        f = scenario.transient_frequency_hz
        step_in = dp * attenuation_factor(scenario.attenuation, f, x)
        step_out = dp * attenuation_factor(scenario.attenuation, f, L - x)

        on_in = _step(t, leak.start_s + tt_in, scenario.ramp_s)
        on_out = _step(t_out, leak.start_s + tt_out, scenario.ramp_s)
        if leak.end_s is not None:
            on_in = on_in - _step(t, leak.end_s + tt_in, scenario.ramp_s)
            on_out = on_out - _step(t_out, leak.end_s + tt_out, scenario.ramp_s)

        p_in -= step_in * on_in
        p_out -= step_out * on_out
        q_in += rate * (L - x) / L * on_in
        q_out -= rate * x / L * on_out
        truths.append(LeakTruth(x, leak.start_s, leak.start_s + tt_in,
                                leak.start_s + tt_out, rate, dp, step_in, step_out,
                                leak.end_s))

    noise = scenario.noise
    root = SplitMix64(scenario.seed)
    if noise.gaussian_sigma_pa > 0:
        p_in += noise.gaussian_sigma_pa * root.spawn(_STREAM_INLET_P).normal(n)
        p_out += noise.gaussian_sigma_pa * root.spawn(_STREAM_OUTLET_P).normal(n)
    pump_hz, pump_amp = noise.pump_harmonic
    if pump_amp > 0:
        phase_in, phase_out = 2 * np.pi * root.spawn(_STREAM_PUMP).uniform(2)
        p_in += pump_amp * np.sin(2 * np.pi * pump_hz * t + phase_in)
        p_out += pump_amp * np.sin(2 * np.pi * pump_hz * t + phase_out)
    if noise.flow_sigma_m3_s > 0:
        q_in += noise.flow_sigma_m3_s * root.spawn(_STREAM_INLET_Q).normal(n)
        q_out += noise.flow_sigma_m3_s * root.spawn(_STREAM_OUTLET_Q).normal(n)

    dt = 1.0 / fs
    a, b = scenario.inlet_station, scenario.outlet_station
    temps = (None, None)
    if scenario.temperature is not None:
        temp = scenario.temperature.at(t)
        temps = (TimeSeries(0.0, dt, temp, "temperature_k", a),
                 TimeSeries(0.0, dt, temp, "temperature_k", b))
    return ScenarioOutput(
        TimeSeries(0.0, dt, p_in, "pressure_pa", a),
        TimeSeries(0.0, dt, p_out, "pressure_pa", b),
        TimeSeries(0.0, dt, q_in, "flow_m3_s", a),
        TimeSeries(0.0, dt, q_out, "flow_m3_s", b),
        tuple(truths),
        *temps,
    )


def case_study_scenario(**overrides) -> LeakScenario:
    """A line shaped like the 61.48 km field case: leak 39.34 km from the inlet
    with a uniform 1150.5 m/s wave speed, which puts the inlet arrival
    14.95 s after the outlet arrival."""
    profile = PipelineProfile.uniform(61480.0, 1150.5, inner_diameter_m=0.5)
    fluid = FluidState(density_kg_m3=850.0, bulk_modulus_pa=1.5e9,
                       thermal_expansion_per_k=8e-4, compressibility_per_pa=7e-10)
    params = dict(
        profile=profile,
        fluid=fluid,
        baseline_flow_m3_s=0.3,
        inlet_pressure_pa=50e5,
        leak_chainage_m=39340.0,
        leak_start_s=20.0,
        leak_geometry=LeakGeometry(0.05, 0.5, 50e5),
        sample_rate_hz=100.0,
        duration_s=120.0,
        noise=NoiseSpec(gaussian_sigma_pa=500.0, pump_harmonic=(1.3, 200.0),
                        flow_sigma_m3_s=0.0005),
        seed=2005,
    )
    params.update(overrides)
    return LeakScenario(**params)
