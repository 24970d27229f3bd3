"""JSON run-configuration and scenario documents.

Both documents carry ``"schema_version": 1``.  Dimensional fields are
spelled ``<name>_<unit>`` and may use any unit listed in
:mod:`pipeleak.units` (``length_km``, ``inlet_pressure_bar``,
``reference_temperature_c`` ...).  Chainage/elevation pairs and velocity
segments are given in metres and m/s.

Run configuration::

    {
      "schema_version": 1,
      "profile": {"length_km": 61.48, "inner_diameter_m": 0.5,
                  "wall_thickness_mm": 8, "wall_elastic_modulus_pa": 2.1e11,
                  "elevation_profile": [[0, 0], [61480, 0]],
                  "velocity_segments": [[0, 1150.5]]},
      "fluid": {"density_kg_m3": 850, "bulk_modulus_pa": 1.5e9,
                "thermal_expansion_per_k": 8e-4, "compressibility_per_pa": 7e-10,
                "reference_temperature_c": 15, "reference_pressure_bar": 1.01325},
      "detection": {"wavelet": "haar", "levels": 5, "threshold_scale": 1.0,
                    "persistence": 2},
      "balance": {"threshold_m3": 1.0, "persistence_windows": 3, "compensate": true},
      "attenuation": {"damping_coefficient_s2_per_m": 0.0,
                      "reference_band_hz": [175000, 750000]},
      "transient_frequency_hz": 10, "sensor_floor_mbar": 5, "pairing_margin_s": 5,
      "stations": {"inlet": "inlet", "outlet": "outlet"}
    }

Omitting ``velocity_segments`` gives one segment at the thin-wall wave speed
of the configured fluid and pipe.

Scenario::

    {
      "schema_version": 1, "seed": 2005,
      "baseline_flow_m3_s": 0.3, "inlet_pressure_bar": 50,
      "sample_rate_hz": 100, "duration_s": 120,
      "leaks": [{"chainage_km": 39.34, "start_s": 20, "hole_diameter_mm": 50,
                 "end_s": null}],
      "noise": {"gaussian_sigma_pa": 500, "pump_frequency_hz": 1.3,
                "pump_amplitude_pa": 200, "flow_sigma_m3_s": 0.0005,
                "clock_skew_s": 0},
      "ramp_s": 0,
      "temperature": {"initial_c": 15, "ramp_k_per_s": 0.001, "ramp_start_s": 0}
    }

An empty ``leaks`` list simulates an intact line.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .acoustic import AttenuationModel, LeakGeometry
from .detect import DetectionConfig
from .domain import FluidState, PipelineProfile, validate_profile, wave_speed
from .errors import PipeleakError, RejectedInput
from .monitor import BalanceConfig, RunConfig
from .sim import LeakIncident, LeakScenario, NoiseSpec, TemperatureSpec
from .units import BAR, field_si

SCHEMA_VERSION = 1

_NUM = {"type": "number"}
_POS = {"type": "number", "exclusiveMinimum": 0}
_NONNEG = {"type": "number", "minimum": 0}
_PAIRS = {"type": "array", "minItems": 1,
          "items": {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}}


def _unit_keys(base, units, schema):
    return {f"{base}_{u}": schema for u in units}


_LENGTH = ("m", "km", "mm")
_PRESSURE = ("pa", "kpa", "bar", "mbar")
_TEMPERATURE = ("k", "c")

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "profile", "fluid"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "profile": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                **_unit_keys("length", _LENGTH, _POS),
                **_unit_keys("inner_diameter", _LENGTH, _POS),
                **_unit_keys("wall_thickness", _LENGTH, _POS),
                "wall_elastic_modulus_pa": _POS,
                "elevation_profile": _PAIRS,
                "velocity_segments": _PAIRS,
            },
        },
        "fluid": {
            "type": "object",
            "additionalProperties": False,
            "required": ["density_kg_m3", "bulk_modulus_pa"],
            "properties": {
                "density_kg_m3": _POS,
                "bulk_modulus_pa": _POS,
                "thermal_expansion_per_k": _NONNEG,
                "compressibility_per_pa": _NONNEG,
                **_unit_keys("reference_temperature", _TEMPERATURE, _NUM),
                **_unit_keys("reference_pressure", _PRESSURE, _POS),
            },
        },
        "detection": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "wavelet": {"enum": ["haar", "db4"]},
                "levels": {"type": "integer", "minimum": 1},
                "threshold_scale": _POS,
                "persistence": {"type": "integer", "minimum": 1},
            },
        },
        "balance": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "threshold_m3": _NUM,
                "persistence_windows": {"type": "integer", "minimum": 1},
                "compensate": {"type": "boolean"},
            },
        },
        "attenuation": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "damping_coefficient_s2_per_m": _NONNEG,
                "reference_band_hz": {"type": "array", "items": _NONNEG,
                                      "minItems": 2, "maxItems": 2},
            },
        },
        "transient_frequency_hz": _NONNEG,
        **_unit_keys("sensor_floor", _PRESSURE, _NONNEG),
        "pairing_margin_s": _NONNEG,
        "stations": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"inlet": {"type": "string", "minLength": 1},
                           "outlet": {"type": "string", "minLength": 1}},
        },
    },
}

SCENARIO_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "baseline_flow_m3_s", "sample_rate_hz", "duration_s"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "seed": {"type": "integer", "minimum": 0},
        "baseline_flow_m3_s": _NUM,
        **_unit_keys("inlet_pressure", _PRESSURE, _NONNEG),
        "sample_rate_hz": _POS,
        "duration_s": _POS,
        "leaks": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["start_s"],
                "properties": {
                    **_unit_keys("chainage", _LENGTH, _NONNEG),
                    **_unit_keys("hole_diameter", _LENGTH, _NONNEG),
                    "start_s": _NONNEG,
                    "end_s": {"type": ["number", "null"], "minimum": 0},
                },
            },
        },
        "noise": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "gaussian_sigma_pa": _NONNEG,
                "pump_frequency_hz": _NONNEG,
                "pump_amplitude_pa": _NONNEG,
                "flow_sigma_m3_s": _NONNEG,
                "clock_skew_s": _NUM,
            },
        },
        "ramp_s": _NONNEG,
        "transient_frequency_hz": _NONNEG,
        "temperature": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                **_unit_keys("initial", _TEMPERATURE, _NUM),
                "ramp_k_per_s": _NUM,
                "ramp_start_s": _NONNEG,
                "ramp_end_s": {"type": ["number", "null"]},
            },
        },
    },
}


class SchemaError(PipeleakError):
    """Document failed to parse or validate; message names line or field."""


def load_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def check_schema(doc, schema, source="document") -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        lines = []
        for err in errors:
            where = "/".join(str(p) for p in err.absolute_path) or "<root>"
            lines.append(f"{source}: field {where}: {err.message}")
        raise SchemaError("\n".join(lines))


def _pairs(points):
    return tuple((float(a), float(b)) for a, b in points)


def parse_profile(doc: dict, fluid: FluidState | None = None) -> PipelineProfile:
    length = field_si(doc, "length", "length", path="profile.")
    segments = doc.get("velocity_segments")
    profile = PipelineProfile(
        length_m=length,
        inner_diameter_m=field_si(doc, "inner_diameter", "length", path="profile."),
        wall_thickness_m=field_si(doc, "wall_thickness", "length", default=0.008,
                                  path="profile."),
        wall_elastic_modulus_pa=float(doc.get("wall_elastic_modulus_pa", 2.1e11)),
        elevation_profile=_pairs(doc.get("elevation_profile", [[0, 0], [length, 0]])),
        velocity_segments=_pairs(segments) if segments else ((0.0, 1.0),),
    )
    if not segments:
        if fluid is None:
            raise RejectedInput("profile.velocity_segments missing and no fluid to derive "
                                "a wave speed from")
        profile = PipelineProfile(
            profile.length_m, profile.inner_diameter_m, profile.wall_thickness_m,
            profile.wall_elastic_modulus_pa, profile.elevation_profile,
            ((0.0, wave_speed(fluid, profile)),))
    report = validate_profile(profile)
    if not report.ok:
        raise SchemaError("profile: " + "; ".join(report.problems))
    return profile


def parse_fluid(doc: dict) -> FluidState:
    return FluidState(
        density_kg_m3=float(doc["density_kg_m3"]),
        bulk_modulus_pa=float(doc["bulk_modulus_pa"]),
        thermal_expansion_per_k=float(doc.get("thermal_expansion_per_k", 0.0)),
        compressibility_per_pa=float(doc.get("compressibility_per_pa", 0.0)),
        reference_temperature_k=field_si(doc, "reference_temperature", "temperature",
                                         default=288.15, path="fluid."),
        reference_pressure_pa=field_si(doc, "reference_pressure", "pressure",
                                       default=1.01325 * BAR, path="fluid."),
    )


def parse_config(doc: dict, source="config") -> RunConfig:
    check_schema(doc, CONFIG_SCHEMA, source)
    try:
        fluid = parse_fluid(doc["fluid"])
        profile = parse_profile(doc["profile"], fluid)
        att = doc.get("attenuation", {})
        stations = doc.get("stations", {})
        return RunConfig(
            profile=profile,
            fluid=fluid,
            detection=DetectionConfig(**doc.get("detection", {})),
            balance=BalanceConfig(**doc.get("balance", {})),
            attenuation=AttenuationModel(
                float(att.get("damping_coefficient_s2_per_m", 0.0)),
                tuple(att.get("reference_band_hz", (175e3, 750e3)))),
            transient_frequency_hz=float(doc.get("transient_frequency_hz", 10.0)),
            sensor_floor_pa=field_si(doc, "sensor_floor", "pressure", default=500.0),
            pairing_margin_s=float(doc.get("pairing_margin_s", 5.0)),
            inlet_station=stations.get("inlet", "inlet"),
            outlet_station=stations.get("outlet", "outlet"),
        )
    except RejectedInput as exc:
        raise SchemaError(f"{source}: {exc}") from None


def load_config(path) -> RunConfig:
    return parse_config(load_json(path), str(path))


def parse_scenario(doc: dict, config: RunConfig, source="scenario",
                   seed: int | None = None) -> LeakScenario:
    check_schema(doc, SCENARIO_SCHEMA, source)
    try:
        profile = config.profile
        D = profile.inner_diameter_m
        p_in = field_si(doc, "inlet_pressure", "pressure", path="scenario.")
        leaks = []
        for i, leak in enumerate(doc.get("leaks", [])):
            where = f"leaks/{i}."
            leaks.append(LeakIncident(
                chainage_m=field_si(leak, "chainage", "length", path=where),
                start_s=float(leak["start_s"]),
                geometry=LeakGeometry(field_si(leak, "hole_diameter", "length", path=where),
                                      D, p_in),
                end_s=leak.get("end_s"),
            ))
        if not leaks:
            leaks.append(LeakIncident(0.0, 0.0, LeakGeometry(0.0, D, p_in)))
        noise = doc.get("noise", {})
        temp = doc.get("temperature")
        temperature = None
        if temp is not None:
            temperature = TemperatureSpec(
                initial_k=field_si(temp, "initial", "temperature",
                                   default=config.fluid.reference_temperature_k,
                                   path="temperature."),
                ramp_k_per_s=float(temp.get("ramp_k_per_s", 0.0)),
                ramp_start_s=float(temp.get("ramp_start_s", 0.0)),
                ramp_end_s=temp.get("ramp_end_s"),
            )
        first = leaks[0]
        scenario = LeakScenario(
            profile=profile,
            fluid=config.fluid,
            baseline_flow_m3_s=float(doc["baseline_flow_m3_s"]),
            inlet_pressure_pa=p_in,
            leak_chainage_m=first.chainage_m,
            leak_start_s=first.start_s,
            leak_geometry=first.geometry,
            leak_end_s=first.end_s,
            extra_leaks=tuple(leaks[1:]),
            sample_rate_hz=float(doc["sample_rate_hz"]),
            duration_s=float(doc["duration_s"]),
            noise=NoiseSpec(
                gaussian_sigma_pa=float(noise.get("gaussian_sigma_pa", 0.0)),
                pump_harmonic=(float(noise.get("pump_frequency_hz", 0.0)),
                               float(noise.get("pump_amplitude_pa", 0.0))),
                flow_sigma_m3_s=float(noise.get("flow_sigma_m3_s", 0.0)),
                clock_skew_s=float(noise.get("clock_skew_s", 0.0)),
            ),
            seed=int(doc.get("seed", 0) if seed is None else seed),
            attenuation=config.attenuation,
            transient_frequency_hz=float(doc.get("transient_frequency_hz",
                                                 config.transient_frequency_hz)),
            ramp_s=float(doc.get("ramp_s", 0.0)),
            temperature=temperature,
            inlet_station=config.inlet_station,
            outlet_station=config.outlet_station,
        )
        scenario.validate()
        return scenario
    except RejectedInput as exc:
        raise SchemaError(f"{source}: {exc}") from None


def load_scenario(path, config: RunConfig, seed: int | None = None) -> LeakScenario:
    return parse_scenario(load_json(path), config, str(path), seed)
