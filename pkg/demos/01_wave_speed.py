"""
How fast does a pressure drop travel down a crude line?
=======================================================

A leak announces itself as a small negative pressure wave.  Its speed sets
how arrival times turn into distances, so start there.
"""

import numpy as np

from pipeleak import FluidState, PipelineProfile, travel_time, validate_profile, wave_speed

# a 61.48 km, 500 mm line with 8 mm steel walls
line = PipelineProfile.uniform(61480.0, 1150.5, inner_diameter_m=0.5)
crude = FluidState(density_kg_m3=850.0, bulk_modulus_pa=1.5e9)

# thin-wall (Korteweg) speed: the elastic wall slows the wave below sqrt(K/rho)
v = wave_speed(crude, line)
print(f"wall-compliant speed {v:.1f} m/s, rigid-pipe limit {np.sqrt(1.5e9 / 850):.1f} m/s")

# thinner walls give a softer pipe and a slower wave
for wall_mm in (4, 8, 16):
    thinner = PipelineProfile(61480.0, 0.5, wall_mm / 1e3, 2.1e11,
                              ((0, 0), (61480, 0)), ((0.0, 1000.0),))
    print(f"  wall {wall_mm:2d} mm -> {wave_speed(crude, thinner):7.1f} m/s")

# Real lines are not isothermal.  A warm first third carries a faster wave.
stratified = PipelineProfile(61480.0, 0.5, 0.008, 2.1e11, ((0, 12.0), (61480, 4.0)),
                             ((0.0, 1190.0), (20000.0, 1150.5), (45000.0, 1120.0)))
print("profile problems:", validate_profile(stratified).problems or "none")
print(f"end-to-end travel time {travel_time(stratified, 0, 61480):.2f} s "
      f"vs {61480 / 1150.5:.2f} s at a single speed")

# a gap in the speed table is caught before anything uses it
broken = PipelineProfile(61480.0, 0.5, 0.008, 2.1e11, ((0, 0), (61480, 0)),
                         ((100.0, 1150.5),))
print("broken profile:", validate_profile(broken).problems)
