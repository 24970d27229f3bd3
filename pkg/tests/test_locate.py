import numpy as np
import pytest
from hypothesis import given, strategies as st

from pipeleak.domain import PipelineProfile, travel_time
from pipeleak.errors import InfeasibleTimeDifference
from pipeleak.locate import (arrival_difference, localization_error, localize_profile,
                             localize_uniform)

from conftest import random_profile

L, V = 61480.0, 1150.5


def grid_search(profile, dt, step=0.5):
    """Brute-force oracle: grid point whose forward arrival difference is nearest dt."""
    xs = np.arange(0.0, profile.length_m + step / 2, step)
    bounds = profile.segment_bounds()
    starts = np.array([b[0] for b in bounds])
    ends = np.array([b[1] for b in bounds])
    slow = np.array([1 / b[2] for b in bounds])
    # time from the inlet to each grid point, then the matching outlet time
    t_in = (np.clip(xs[:, None], starts, ends) - starts) @ slow
    t_out = t_in[-1] - t_in
    return xs[np.argmin(np.abs(t_in - t_out - dt))]


def test_case_study_fix():
    fix = localize_uniform(14.95, 0.0, L, V)
    assert fix.chainage_m == pytest.approx(39340.0, abs=20.0)
    assert fix.time_difference_s == pytest.approx(14.95)


def test_zero_difference_is_midpoint():
    assert localize_uniform(3.0, 3.0, L, V).chainage_m == L / 2


def test_inlet_boundary():
    assert localize_uniform(0.0, L / V, L, V).chainage_m == pytest.approx(0.0, abs=1e-9)


def test_infeasible_difference():
    with pytest.raises(InfeasibleTimeDifference):
        localize_uniform(60.0, 0.0, L, V)


@given(ta=st.floats(-50, 50), tb=st.floats(-50, 50))
def test_end_symmetry(ta, tb):
    if abs(ta - tb) <= L / V:
        a = localize_uniform(ta, tb, L, V).chainage_m
        b = localize_uniform(tb, ta, L, V).chainage_m
        assert a + b == pytest.approx(L, abs=1e-9)


@given(d1=st.floats(-53, 53), d2=st.floats(-53, 53))
def test_uniform_monotone(d1, d2):
    x1 = localize_uniform(d1, 0, L, V).chainage_m
    x2 = localize_uniform(d2, 0, L, V).chainage_m
    if d1 < d2:
        assert x1 <= x2
    if d2 - d1 > 1e-6:
        assert x1 < x2


def test_profile_reduces_to_uniform():
    rng = np.random.default_rng(8)
    for _ in range(50):
        length = rng.uniform(1e3, 1.2e5)
        speed = rng.uniform(900, 1400)
        dt = rng.uniform(-1, 1) * length / speed
        prof = PipelineProfile.uniform(length, speed)
        assert localize_profile(dt, 0.0, prof).chainage_m == pytest.approx(
            localize_uniform(dt, 0.0, length, speed).chainage_m, abs=0.1)


def test_two_segment_round_trip():
    prof = PipelineProfile(L, 0.5, 0.008, 2.1e11, ((0, 0), (L, 0)),
                           ((0.0, 1100.0), (L / 2, 1200.0)))
    for x in (1000.0, 20000.0, 30740.0, 45000.0, 61000.0):
        dt = travel_time(prof, 0, x) - travel_time(prof, x, L)
        assert localize_profile(dt, 0.0, prof).chainage_m == pytest.approx(x, abs=0.1)


def test_midpoint_only_when_halves_balance():
    balanced = PipelineProfile(L, 0.5, 0.008, 2.1e11, ((0, 0), (L, 0)),
                               ((0.0, 1100.0), (L / 4, 1200.0), (3 * L / 4, 1100.0)))
    skewed = PipelineProfile(L, 0.5, 0.008, 2.1e11, ((0, 0), (L, 0)),
                             ((0.0, 1100.0), (L / 2, 1200.0)))
    for prof in (balanced, skewed):
        dt = arrival_difference(prof, L / 2)
        oracle = grid_search(prof, dt)
        fix = localize_profile(dt, 0.0, prof).chainage_m
        assert fix == pytest.approx(oracle, abs=0.5)
        assert fix == pytest.approx(L / 2, abs=0.1)
    # with unequal half-line travel times a zero difference is not the midpoint
    assert localize_profile(0.0, 0.0, balanced).chainage_m == pytest.approx(L / 2, abs=0.1)
    assert abs(localize_profile(0.0, 0.0, skewed).chainage_m - L / 2) > 100


def test_profile_matches_grid_oracle():
    rng = np.random.default_rng(11)
    for _ in range(100):
        prof = random_profile(rng, int(rng.integers(2, 6)), length_m=rng.uniform(5e3, 6e4))
        total = travel_time(prof, 0, prof.length_m)
        dt = rng.uniform(-1, 1) * total
        assert localize_profile(dt, 0.0, prof).chainage_m == pytest.approx(
            grid_search(prof, dt), abs=0.5)


def test_profile_infeasible():
    prof = PipelineProfile.uniform(1000.0, 1000.0)
    with pytest.raises(InfeasibleTimeDifference):
        localize_profile(0.0, 1.5, prof)


def test_case_study_error_arithmetic():
    absolute, relative = localization_error(39340.0, 39290.0, 61480.0)
    assert absolute == pytest.approx(50.0)
    assert relative * 100 == pytest.approx(0.0813, abs=1e-4)


def test_error_edges():
    assert localization_error(localize_uniform(0, 0, 10.0, 1.0), 5.0, 10.0) == (0.0, 0.0)
    assert localization_error(0.0, 10.0, 10.0) == (10.0, 1.0)
