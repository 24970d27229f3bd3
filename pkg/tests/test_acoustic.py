import math

import pytest
from hypothesis import given, strategies as st

from pipeleak.acoustic import (EMISSION_BAND_HZ, MONITOR, REPAIR_30D, URGENT_24_48H,
                               AttenuationModel, LeakGeometry, attenuation_factor,
                               classify_severity, hole_ratio_from_drop, leak_pressure_drop,
                               min_detectable_hole_ratio, severity_rank)
from pipeleak.errors import RejectedInput

BAR = 1e5


def test_drop_at_detectability_bound():
    # 69 bar line, ratio 0.015540 -> 0.3 * 6.9e6 * 0.01554**2 = 499.89 Pa
    g = LeakGeometry(0.015540, 1.0, 69 * BAR)
    assert leak_pressure_drop(g) == pytest.approx(500.0, rel=1e-3)


def test_no_hole_no_signal():
    assert leak_pressure_drop(LeakGeometry(0.0, 0.5, 69 * BAR)) == 0.0


def test_drop_direct_evaluation():
    assert leak_pressure_drop(LeakGeometry(0.05, 0.5, 10 * BAR)) == pytest.approx(3000.0)


def test_zero_pipe_diameter_rejected():
    with pytest.raises(RejectedInput):
        leak_pressure_drop(LeakGeometry(0.0, 0.0, BAR))


def test_geometry_invariants():
    with pytest.raises(RejectedInput):
        LeakGeometry(0.6, 0.5, BAR)
    with pytest.raises(RejectedInput):
        LeakGeometry(0.1, 0.5, -1.0)


def test_min_detectable_ratio_closed_form():
    # sqrt(500 / (0.3 * 6.9e6)) evaluated by hand: 0.01554175
    assert min_detectable_hole_ratio(69 * BAR, 500.0) == pytest.approx(0.01554175, abs=1e-8)


def test_min_detectable_ratio_zero_floor():
    assert min_detectable_hole_ratio(69 * BAR, 0.0) == 0.0


def test_min_detectable_ratio_pressure_scaling():
    base = min_detectable_hole_ratio(30 * BAR, 500.0)
    assert min_detectable_hole_ratio(60 * BAR, 500.0) == pytest.approx(base / math.sqrt(2))


def test_min_detectable_rejects_zero_pressure():
    with pytest.raises(RejectedInput):
        min_detectable_hole_ratio(0.0, 500.0)


@given(ps=st.floats(1e4, 2e7), floor=st.floats(1.0, 1e4))
def test_detectability_round_trip(ps, floor):
    ratio = min_detectable_hole_ratio(ps, floor)
    if ratio <= 1:
        drop = leak_pressure_drop(LeakGeometry(ratio, 1.0, ps))
        assert drop == pytest.approx(floor, rel=1e-9)
        assert hole_ratio_from_drop(drop, ps) == pytest.approx(ratio, rel=1e-9)


@given(ps=st.floats(0, 2e7), d1=st.floats(0, 0.5), dps=st.floats(0, 1e6), dd=st.floats(0, 0.1))
def test_drop_monotone(ps, d1, dps, dd):
    base = leak_pressure_drop(LeakGeometry(d1, 0.6, ps))
    assert leak_pressure_drop(LeakGeometry(d1, 0.6, ps + dps)) >= base
    assert leak_pressure_drop(LeakGeometry(d1 + dd, 0.6, ps)) >= base


def test_attenuation_identity_on_axes():
    model = AttenuationModel(1e-6)
    assert attenuation_factor(model, 250.0, 0.0) == 1.0
    assert attenuation_factor(model, 0.0, 5e4) == 1.0


def test_rocha_calibration():
    model = AttenuationModel.calibrated()
    assert model.damping_coefficient_s2_per_m == pytest.approx(4.307e-8, rel=1e-3)
    assert attenuation_factor(model, 10.0, 160934.4) == pytest.approx(0.5)
    # a decade up in frequency loses a factor 2**100 over the same path
    assert attenuation_factor(model, 100.0, 160934.4) == pytest.approx(2.0 ** -100, rel=1e-9)
    assert model.reference_band_hz == EMISSION_BAND_HZ == (175e3, 750e3)


@given(f=st.floats(0, 1e3), d=st.floats(0, 2e5), df=st.floats(0, 100), dd=st.floats(0, 1e4))
def test_attenuation_monotone(f, d, df, dd):
    model = AttenuationModel.calibrated()
    base = attenuation_factor(model, f, d)
    assert 0.0 <= base <= 1.0
    assert attenuation_factor(model, f + df, d) <= base
    assert attenuation_factor(model, f, d + dd) <= base


def test_attenuation_rejects_negative_inputs():
    with pytest.raises(RejectedInput):
        attenuation_factor(AttenuationModel(), -1.0, 10.0)


@pytest.mark.parametrize("ratio, expected", [
    (0.2, URGENT_24_48H), (0.1, URGENT_24_48H), (0.05, REPAIR_30D),
    (0.01, REPAIR_30D), (0.005, MONITOR), (0.0, MONITOR),
])
def test_severity_thresholds(ratio, expected):
    assert classify_severity(ratio) == expected


def test_undetectable_is_monitor():
    assert classify_severity(0.5, detectable=False) == MONITOR


@given(a=st.floats(0, 1), b=st.floats(0, 1))
def test_severity_monotone(a, b):
    lo, hi = sorted((a, b))
    assert severity_rank(classify_severity(lo)) <= severity_rank(classify_severity(hi))


def test_severity_rejects_bad_ratio():
    with pytest.raises(RejectedInput):
        classify_severity(1.5)
