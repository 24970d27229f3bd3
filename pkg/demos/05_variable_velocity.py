"""
When the wave speed changes along the line
==========================================

Temperature varies along a crude line, so the wave speed does too and the
closed-form midpoint formula drifts.  The profile solver inverts the
travel-time difference segment by segment instead.
"""

from pipeleak import PipelineProfile, localize_profile, localize_uniform, travel_time
from pipeleak.locate import arrival_difference

L = 61480.0
warm_then_cold = PipelineProfile(L, 0.5, 0.008, 2.1e11, ((0, 0), (L, 0)),
                                 ((0.0, 1210.0), (15000.0, 1150.0), (40000.0, 1090.0)))
mean_speed = L / travel_time(warm_then_cold, 0, L)
print(f"harmonic-mean speed {mean_speed:.1f} m/s")

print(" true x [km]   dt [s]   profile fix [km]   one-speed fix [km]")
for x in (5000.0, 20000.0, 30740.0, 39340.0, 55000.0):
    dt = arrival_difference(warm_then_cold, x)
    exact = localize_profile(dt, 0.0, warm_then_cold).chainage_m
    naive = localize_uniform(dt, 0.0, L, mean_speed).chainage_m
    print(f"   {x / 1e3:7.2f}   {dt:7.3f}      {exact / 1e3:9.4f}         {naive / 1e3:9.4f}")

# a zero arrival gap is the travel-time midpoint, not the geometric one
print(f"dt = 0 puts the leak at {localize_profile(0, 0, warm_then_cold).chainage_m / 1e3:.3f} km")
