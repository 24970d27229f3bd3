import numpy as np
import pytest

from pipeleak.detect import DetectionConfig, OnsetEvent, detect_onsets, noise_scale, pair_events
from pipeleak.domain import TimeSeries
from pipeleak.errors import RejectedInput
from pipeleak.rng import SplitMix64


def pressure(values, fs=100.0, station="A"):
    return TimeSeries(0.0, 1.0 / fs, values, "pressure_pa", station)


def step_signal(n=4096, at=500, height=-5000.0, base=50e5):
    x = np.full(n, base)
    x[at:] += height
    return x


def ev(t, station="A", polarity="drop"):
    return OnsetEvent(station, t, polarity, 10.0)


def test_noiseless_step_gives_one_drop():
    events = detect_onsets(pressure(step_signal()))
    assert len(events) == 1
    assert events[0].polarity == "drop"
    assert abs(events[0].index - 500) <= 1
    assert events[0].onset_time_s == pytest.approx(events[0].index / 100.0)
    assert events[0].step_pa == pytest.approx(-5000.0)


@pytest.mark.parametrize("at", [500, 501, 1023, 1024, 3000])
def test_step_parity_does_not_matter(at):
    events = detect_onsets(pressure(step_signal(at=at)))
    assert [abs(e.index - at) <= 1 for e in events] == [True]


def test_rise_polarity():
    events = detect_onsets(pressure(step_signal(height=4000.0)))
    assert [e.polarity for e in events] == ["rise"]


def test_constant_signal_is_quiet():
    assert detect_onsets(pressure(np.full(256, 7.0))) == []
    assert detect_onsets(pressure(np.zeros(64))) == []


def test_strength_meets_threshold():
    n = 4096
    x = step_signal() + 500.0 * SplitMix64(3).normal(n)
    for e in detect_onsets(pressure(x)):
        assert e.strength >= np.sqrt(2 * np.log(n))


def test_noise_scale_recovers_sigma():
    x = 250.0 * SplitMix64(9).normal(100_000)
    assert noise_scale(x) == pytest.approx(250.0, rel=0.02)


def test_false_alarm_rate_on_pure_noise():
    """Monte-Carlo calibration: 100 seeded white-noise records of 4096 samples."""
    quiet = sum(not detect_onsets(pressure(500.0 * SplitMix64(seed).normal(4096)))
                for seed in range(100))
    assert quiet >= 95


def test_buried_step_hit_rate():
    """A 5 sigma drop in sigma = 500 Pa noise is placed within 2 samples in >= 90 of 100 seeds."""
    hits = 0
    for seed in range(100):
        x = step_signal(height=-2500.0) + 500.0 * SplitMix64(1000 + seed).normal(4096)
        events = detect_onsets(pressure(x))
        hits += any(e.polarity == "drop" and abs(e.index - 500) <= 2 for e in events)
    assert hits >= 90


def test_db4_also_detects():
    events = detect_onsets(pressure(step_signal()), DetectionConfig(wavelet="db4"))
    assert len(events) == 1 and abs(events[0].index - 500) <= 1


def test_short_signal_rejected():
    with pytest.raises(RejectedInput):
        detect_onsets(pressure(np.ones(7)))


@pytest.mark.parametrize("kwargs", [dict(wavelet="coif1"), dict(levels=0),
                                    dict(persistence=0), dict(threshold_scale=0.0)])
def test_bad_config(kwargs):
    with pytest.raises(RejectedInput):
        DetectionConfig(**kwargs)


def test_pair_case_study_lag():
    result = pair_events([ev(34.95)], [ev(20.0, "B")], 60.0)
    assert len(result.pairs) == 1
    assert result.pairs[0][0].onset_time_s - result.pairs[0][1].onset_time_s == pytest.approx(14.95)


def test_pair_two_incidents_in_order():
    inlet = [ev(1480.0), ev(100.0)]
    outlet = [ev(110.0, "B"), ev(1470.0, "B")]
    result = pair_events(inlet, outlet, 60.0)
    assert [(a.onset_time_s, b.onset_time_s) for a, b in result.pairs] == [
        (100.0, 110.0), (1480.0, 1470.0)]
    assert not result.unpaired_inlet and not result.unpaired_outlet


def test_pair_respects_lag_bound():
    result = pair_events([ev(0.0)], [ev(120.0, "B")], 60.0)
    assert result.pairs == []
    assert len(result.unpaired_inlet) == 1 and len(result.unpaired_outlet) == 1


def test_pair_requires_same_polarity():
    result = pair_events([ev(0.0)], [ev(5.0, "B", "rise")], 60.0)
    assert result.pairs == []


def test_pair_takes_nearest():
    result = pair_events([ev(10.0)], [ev(40.0, "B"), ev(12.0, "B")], 60.0)
    assert result.pairs[0][1].onset_time_s == 12.0
    assert [e.onset_time_s for e in result.unpaired_outlet] == [40.0]


def test_pair_rejects_nonpositive_lag():
    with pytest.raises(RejectedInput):
        pair_events([], [], 0.0)
