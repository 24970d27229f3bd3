"""Leak position from the arrival-time difference of the pressure wave.

Chainage is measured from the inlet and the time difference is
``t_inlet - t_outlet``: an inlet arrival later than the outlet's puts the
leak in the outlet half of the line.  With a uniform wave speed

    x = (L + v * dt) / 2

and with a segmented speed profile ``x`` solves
``T(0, x) - T(x, L) = dt`` where ``T`` is the wave travel time.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domain import PipelineProfile, require_valid, travel_time
from .errors import InfeasibleTimeDifference, RejectedInput

# slack on the feasibility bound so that exact end-of-line arrivals pass
_FEASIBLE_RTOL = 1e-12


@dataclass(frozen=True)
class LeakFix:
    chainage_m: float
    time_difference_s: float
    wave_speed_used: str
    confidence: float = 1.0


def localize_uniform(t_inlet_s: float, t_outlet_s: float, length_m: float,
                     wave_speed_m_s: float, confidence: float = 1.0) -> LeakFix:
    if not wave_speed_m_s > 0:
        raise RejectedInput("wave speed must be > 0")
    if not length_m > 0:
        raise RejectedInput("length must be > 0")
    dt = t_inlet_s - t_outlet_s
    span = length_m / wave_speed_m_s
    if abs(dt) > span * (1 + _FEASIBLE_RTOL):
        raise InfeasibleTimeDifference(
            f"|dt| = {abs(dt):.6g} s exceeds the end-to-end travel time {span:.6g} s")
    x = 0.5 * (length_m + wave_speed_m_s * dt)
    x = min(max(x, 0.0), length_m)
    return LeakFix(x, dt, f"uniform {wave_speed_m_s:g} m/s", confidence)


def arrival_difference(profile: PipelineProfile, chainage_m: float) -> float:
    """Inlet-minus-outlet arrival time for a leak at ``chainage_m``."""
    return (travel_time(profile, 0.0, chainage_m)
            - travel_time(profile, chainage_m, profile.length_m))


def localize_profile(t_inlet_s: float, t_outlet_s: float, profile: PipelineProfile,
                     confidence: float = 1.0, tol_m: float = 0.01) -> LeakFix:
    """Bisection on the monotone arrival-difference curve of a segmented line."""
    require_valid(profile)
    dt = t_inlet_s - t_outlet_s
    L = profile.length_m
    total = travel_time(profile, 0.0, L)
    if abs(dt) > total * (1 + _FEASIBLE_RTOL):
        raise InfeasibleTimeDifference(
            f"|dt| = {abs(dt):.6g} s exceeds the end-to-end travel time {total:.6g} s")
    lo, hi = 0.0, L
    while hi - lo > tol_m:
        mid = 0.5 * (lo + hi)
        if arrival_difference(profile, mid) < dt:
            lo = mid
        else:
            hi = mid
    if profile.is_uniform():
        used = f"uniform {profile.velocity_segments[0][1]:g} m/s"
    else:
        used = f"profile of {len(profile.velocity_segments)} segments"
    return LeakFix(0.5 * (lo + hi), dt, used, confidence)


def localization_error(fix, truth_chainage_m: float, length_m: float) -> tuple[float, float]:
    """Absolute error in metres and the same error as a fraction of line length."""
    chainage = fix.chainage_m if isinstance(fix, LeakFix) else float(fix)
    absolute = abs(chainage - truth_chainage_m)
    return absolute, absolute / length_m
