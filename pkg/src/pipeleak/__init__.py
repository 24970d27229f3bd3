"""Pipeline leak detection from end-station SCADA telemetry.

Volume balance with compensated line inventory, wavelet detection of the
negative pressure wave a sudden leak sends to both end stations, and leak
localization from the arrival-time difference.  A seeded simulator
supplies ground-truth telemetry.
"""

from .acoustic import (AttenuationModel, LeakGeometry, attenuation_factor, classify_severity,
                       leak_pressure_drop, min_detectable_hole_ratio)
from .alarms import Alarm
from .detect import DetectionConfig, OnsetEvent, detect_onsets, pair_events
from .domain import (FluidState, PipelineProfile, SensorSample, TimeSeries, travel_time,
                     validate_profile, wave_speed)
from .inventory import (BalanceResult, InventorySnapshot, detect_imbalance, integrate_flow,
                        line_inventory, volume_balance)
from .locate import LeakFix, localization_error, localize_profile, localize_uniform
from .sim import LeakScenario, NoiseSpec, ScenarioOutput, simulate, steady_state_profile
from .wavelet import WaveletDecomposition, dwt, idwt

__version__ = "0.1.0"

__all__ = [
    "Alarm", "AttenuationModel", "BalanceResult", "DetectionConfig", "FluidState",
    "InventorySnapshot", "LeakFix", "LeakGeometry", "LeakScenario", "NoiseSpec", "OnsetEvent",
    "PipelineProfile", "ScenarioOutput", "SensorSample", "TimeSeries", "WaveletDecomposition",
    "attenuation_factor", "classify_severity", "detect_imbalance", "detect_onsets", "dwt",
    "idwt", "integrate_flow", "leak_pressure_drop", "line_inventory", "localization_error",
    "localize_profile", "localize_uniform", "min_detectable_hole_ratio", "pair_events",
    "simulate", "steady_state_profile", "travel_time", "validate_profile", "volume_balance",
    "wave_speed",
]
