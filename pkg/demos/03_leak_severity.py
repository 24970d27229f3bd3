"""
Sizing a leak from the pressure drop it causes
==============================================

A hole of diameter D1 in a pipe of diameter Dp at static pressure Ps drops
the local pressure by about 0.3 Ps (D1/Dp)^2.  Turned around, a sensor
floor sets the smallest hole anyone can see.
"""

import math

from pipeleak import (AttenuationModel, LeakGeometry, attenuation_factor, classify_severity,
                      leak_pressure_drop, min_detectable_hole_ratio)

# a 5 mbar sensor on a 69 bar line
floor, ps = 500.0, 69e5
r_min = min_detectable_hole_ratio(ps, floor)
print(f"smallest visible hole: {r_min:.5f} of the bore "
      f"({r_min * 500:.1f} mm in a 500 mm pipe)")

for ratio in (0.2, 0.05, 0.012, 0.005):
    g = LeakGeometry(ratio * 0.5, 0.5, ps)
    drop = leak_pressure_drop(g)
    print(f"  ratio {ratio:<6} drop {drop:9.1f} Pa  -> {classify_severity(ratio, drop >= floor)}")

# The drop fades on its way to the stations.  Calibrated so a 10 Hz
# component halves over 100 miles, the transient barely notices 60 km,
# while acoustic emission at 175 kHz halves within millimetres.
model = AttenuationModel.calibrated()
print(f"  10 Hz after 61.48 km keeps {attenuation_factor(model, 10.0, 61480):.3f}")
for f in (10.0, 1e3, 175e3):
    half = math.log(2) / (model.damping_coefficient_s2_per_m * f**2)
    print(f"  {f:>9.0f} Hz halves every {half:12.4g} m")
