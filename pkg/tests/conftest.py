import numpy as np
import pytest

from pipeleak.acoustic import LeakGeometry
from pipeleak.domain import FluidState, PipelineProfile
from pipeleak.sim import LeakScenario, NoiseSpec

CASE_LENGTH_M = 61480.0
CASE_SPEED = 1150.5


@pytest.fixture
def crude():
    return FluidState(density_kg_m3=850.0, bulk_modulus_pa=1.5e9,
                      thermal_expansion_per_k=8e-4, compressibility_per_pa=7e-10)


@pytest.fixture
def case_profile():
    return PipelineProfile.uniform(CASE_LENGTH_M, CASE_SPEED, inner_diameter_m=0.5)


@pytest.fixture
def make_scenario(case_profile, crude):
    """Scenario factory with noiseless defaults on the case-study line."""
    def make(**overrides):
        params = dict(
            profile=case_profile, fluid=crude, baseline_flow_m3_s=0.3,
            inlet_pressure_pa=50e5, leak_chainage_m=39340.0, leak_start_s=10.0,
            leak_geometry=LeakGeometry(0.05, 0.5, 50e5), sample_rate_hz=100.0,
            duration_s=80.0, noise=NoiseSpec(), seed=1,
        )
        params.update(overrides)
        return LeakScenario(**params)
    return make


def random_profile(rng: np.random.Generator, n_segments: int, length_m=None):
    """Valid multi-segment profile with random breakpoints and speeds."""
    L = float(length_m if length_m is not None else rng.uniform(5e3, 120e3))
    cuts = np.sort(rng.uniform(0, L, n_segments - 1))
    starts = np.concatenate(([0.0], cuts))
    speeds = rng.uniform(900.0, 1400.0, n_segments)
    elev = np.concatenate(([0.0], rng.uniform(-50, 50, 3), [0.0]))
    chain = np.concatenate(([0.0], np.sort(rng.uniform(0, L, 3)), [L]))
    return PipelineProfile(L, 0.5, 0.008, 2.1e11, tuple(zip(chain, elev)),
                           tuple(zip(starts, speeds)))
