import copy
import json
from pathlib import Path

import numpy as np
import pytest

from pipeleak.config import (SchemaError, load_config, load_json, load_scenario,
                             parse_config, parse_scenario)
from pipeleak.domain import TimeSeries
from pipeleak.errors import RejectedInput
from pipeleak.telemetry import (TelemetryError, read_telemetry, to_json_line,
                                write_series, write_telemetry)
from pipeleak.units import field_si, parse_quantity

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"

HEADER = "timestamp_s,station_id,channel,value\n"


@pytest.fixture
def config_doc():
    return load_json(DATA / "config.json")


@pytest.fixture
def scenario_doc():
    return load_json(DATA / "case_study.json")


def test_csv_round_trip_is_exact(tmp_path):
    values = np.random.default_rng(0).normal(5e6, 300.0, 50)
    ts = TimeSeries(12.5, 0.01, values, "pressure_pa", "inlet")
    write_telemetry([ts], tmp_path)
    back = read_telemetry(tmp_path)[("inlet", "pressure_pa")]
    assert np.array_equal(back.values, ts.values)
    assert back.start_time_s == 12.5
    assert back.sample_interval_s == pytest.approx(0.01, rel=1e-9)


def test_csv_bytes(tmp_path):
    path = write_series(TimeSeries(0.0, 0.5, [1.0, 2.25], "flow_m3_s", "A"), tmp_path / "a.csv")
    assert path.read_bytes() == (HEADER + "0.0,A,flow_m3_s,1.0\n0.5,A,flow_m3_s,2.25\n").encode()


@pytest.mark.parametrize("body, line, fragment", [
    ("0,A,pressure_pa,1\n1,A,pressure_pa\n", 3, "expected 4 fields"),
    ("0,A,pressure_pa,1\n1,A,pressure_pa,abc\n", 3, "must be numbers"),
    ("0,A,pressure_pa,1\n1,A,speed,2\n", 3, "unknown channel"),
    ("0,A,pressure_pa,-1\n", 2, "negative pressure"),
    ("0,A,pressure_pa,nan\n", 2, "non-finite"),
    ("0,,pressure_pa,1\n", 2, "empty station_id"),
])
def test_malformed_rows_name_file_and_line(tmp_path, body, line, fragment):
    path = tmp_path / "bad.csv"
    path.write_text(HEADER + body)
    with pytest.raises(TelemetryError) as info:
        read_telemetry(tmp_path)
    assert info.value.line == line
    assert f"bad.csv:{line}:" in str(info.value)
    assert fragment in str(info.value)


def test_wrong_header(tmp_path):
    (tmp_path / "x.csv").write_text("time,value\n0,1\n")
    with pytest.raises(TelemetryError, match="header"):
        read_telemetry(tmp_path)


def test_non_uniform_sampling(tmp_path):
    (tmp_path / "x.csv").write_text(HEADER + "0,A,flow_m3_s,1\n1,A,flow_m3_s,1\n3,A,flow_m3_s,1\n")
    with pytest.raises(TelemetryError, match="uniformly"):
        read_telemetry(tmp_path)


def test_json_line_keeps_precision():
    record = {"x": np.float64(39339.98753894081), "n": np.int64(3), "t": (1.0, 2.0)}
    back = json.loads(to_json_line(record))
    assert back == {"x": 39339.98753894081, "n": 3, "t": [1.0, 2.0]}


@pytest.mark.parametrize("text, kind, si", [
    ("61.48km", "length", 61480.0), ("69 bar", "pressure", 6.9e6), ("5mbar", "pressure", 500.0),
    ("20C", "temperature", 293.15), ("300", "temperature", 300.0), (12, "length", 12.0),
    ("50 mm", "length", 0.05),
])
def test_parse_quantity(text, kind, si):
    assert parse_quantity(text, kind) == pytest.approx(si)


@pytest.mark.parametrize("text, kind", [("5 bar", "length"), ("abc", "length"), ("3 furlong", "length")])
def test_parse_quantity_rejects(text, kind):
    with pytest.raises(RejectedInput):
        parse_quantity(text, kind)


def test_field_si_spellings():
    assert field_si({"length_km": 61.48}, "length", "length") == pytest.approx(61480.0)
    with pytest.raises(RejectedInput, match="not several"):
        field_si({"length_km": 1, "length_m": 1000}, "length", "length")
    with pytest.raises(RejectedInput, match="missing"):
        field_si({}, "length", "length")


def test_demo_config_loads():
    config = load_config(DATA / "config.json")
    assert config.profile.length_m == pytest.approx(61480.0)
    assert config.profile.velocity_segments == ((0.0, 1150.5),)
    assert config.inlet_station == "constanta"


def test_case_study_scenario_loads():
    config = load_config(DATA / "config.json")
    scenario = load_scenario(DATA / "case_study.json", config)
    assert scenario.leak_chainage_m == pytest.approx(39340.0)
    assert scenario.leak_geometry.hole_diameter_m == pytest.approx(0.05)
    assert load_scenario(DATA / "case_study.json", config, seed=9).seed == 9


def test_missing_velocity_segments_use_wall_speed(config_doc):
    del config_doc["profile"]["velocity_segments"]
    config = parse_config(config_doc)
    assert len(config.profile.velocity_segments) == 1
    assert 900 < config.profile.velocity_segments[0][1] < 1400


def test_schema_errors_name_the_field(config_doc, scenario_doc):
    bad = copy.deepcopy(config_doc)
    bad["schema_version"] = 2
    with pytest.raises(SchemaError, match="field schema_version"):
        parse_config(bad)
    bad = copy.deepcopy(config_doc)
    bad["fluid"]["colour"] = "black"
    with pytest.raises(SchemaError, match="field fluid"):
        parse_config(bad)
    config = parse_config(config_doc)
    zero = dict(scenario_doc, duration_s=0)
    with pytest.raises(SchemaError, match="field duration_s"):
        parse_scenario(zero, config)


def test_invalid_profile_reported(config_doc):
    config_doc["profile"]["velocity_segments"] = [[100, 1150.5]]
    with pytest.raises(SchemaError, match="gap"):
        parse_config(config_doc)


def test_leak_outside_line(config_doc, scenario_doc):
    config = parse_config(config_doc)
    scenario_doc["leaks"][0] = dict(scenario_doc["leaks"][0])
    scenario_doc["leaks"][0].pop("chainage_km", None)
    scenario_doc["leaks"][0]["chainage_m"] = 99000
    with pytest.raises(SchemaError):
        parse_scenario(scenario_doc, config)


def test_empty_leak_list_is_intact(config_doc, scenario_doc):
    config = parse_config(config_doc)
    scenario = parse_scenario(dict(scenario_doc, leaks=[]), config)
    assert scenario.leak_geometry.hole_diameter_m == 0.0


def test_json_decode_error_has_position(tmp_path):
    path = tmp_path / "c.json"
    path.write_text('{\n  "schema_version": 1,\n  oops\n}')
    with pytest.raises(SchemaError, match=r"c\.json:3:"):
        load_json(path)
