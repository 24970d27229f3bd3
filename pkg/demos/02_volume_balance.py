"""
Volume balance: metered in, metered out, and what the line itself holds
=======================================================================

A slow leak hides below any pressure wave detector, but it still loses
volume.  The catch is that warming oil swells and looks just like a gain.
"""

from pipeleak import FluidState, PipelineProfile, line_inventory, simulate
from pipeleak.acoustic import LeakGeometry
from pipeleak.monitor import RunConfig, balance_windows, volume_alarm
from pipeleak.sim import LeakScenario, TemperatureSpec, hole_diameter_for_rate

line = PipelineProfile.uniform(61480.0, 1150.5, inner_diameter_m=0.5)
crude = FluidState(850.0, 1.5e9, thermal_expansion_per_k=8e-4, compressibility_per_pa=7e-10)

cold = line_inventory(line, crude, 50e5, 288.15).line_volume_m3
warm = line_inventory(line, crude, 50e5, 293.15).line_volume_m3
print(f"line holds {cold:.1f} m3; 5 K warmer it holds {warm - cold:+.1f} m3 more")

# a 5 L/s leak at kilometre 1, sized with the orifice equation
hole = hole_diameter_for_rate(0.005, 50e5, 850.0)
print(f"a {hole * 1e3:.2f} mm hole leaks 5 L/s at 50 bar")


def scenario(hole_m, temperature=None):
    return LeakScenario(profile=line, fluid=crude, baseline_flow_m3_s=0.3,
                        inlet_pressure_pa=50e5, leak_chainage_m=1000.0, leak_start_s=0.0,
                        leak_geometry=LeakGeometry(hole_m, 0.5, 50e5), sample_rate_hz=1.0,
                        duration_s=1800.0, temperature=temperature, seed=3)


config = RunConfig(profile=line, fluid=crude)
out = simulate(scenario(hole))
results = balance_windows(out.inlet_flow, out.outlet_flow, config, 600.0,
                          [out.inlet_pressure, out.outlet_pressure])
for r in results:
    print(f"  window {r.window[0]:6.0f}-{r.window[1]:6.0f} s  dV = {r.leakage_volume_m3:.4f} m3")
print("alarm:", volume_alarm(results, config, 50e5))

# Now no leak at all, but the oil warms by 1.2 K over 10 minutes.
heat = TemperatureSpec(288.15, 0.002, ramp_start_s=600.0, ramp_end_s=1200.0)
out = simulate(scenario(0.0, heat))
temps = [out.inlet_temperature, out.outlet_temperature]
for r in balance_windows(out.inlet_flow, out.outlet_flow, config, 600.0,
                         [out.inlet_pressure, out.outlet_pressure], temps):
    print(f"  window {r.window[0]:6.0f}-{r.window[1]:6.0f} s  inventory "
          f"{r.delta_inventory_m3:+.3f} m3, dV {r.leakage_volume_m3:+.3f} m3")
# a negative dV is a gain in stored volume, never a leak
print(f"(bare A*L times 8e-4/K times 1.2 K: {line.cross_section_m2 * 61480 * 8e-4 * 1.2:.3f} m3)")
