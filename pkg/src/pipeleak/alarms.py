"""Alarm record emitted by the pressure-wave and volume-balance detectors."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Optional

from .errors import RejectedInput

ALARM_KINDS = ("PRESSURE_WAVE_LEAK", "VOLUME_IMBALANCE")


@dataclass(frozen=True)
class Alarm:
    """Operator-facing alarm record, shared by both detectors.

    ``time_s`` is when the anomaly began (first exceedance or earliest wave
    arrival); ``raised_at_s`` is when enough evidence had accumulated.
    """

    time_s: float
    kind: str
    severity: str
    confidence: float
    chainage_m: Optional[float] = None
    time_difference_s: Optional[float] = None
    delta_v_m3: Optional[float] = None
    notes: str = ""
    raised_at_s: Optional[float] = None

    def __post_init__(self):
        if self.kind == "PRESSURE_WAVE_LEAK":
            if self.chainage_m is None or self.time_difference_s is None:
                raise RejectedInput("pressure-wave alarm needs chainage and time difference")
        elif self.kind == "VOLUME_IMBALANCE":
            if self.delta_v_m3 is None:
                raise RejectedInput("volume alarm needs delta_v_m3")
        else:
            raise RejectedInput(f"unknown alarm kind {self.kind!r}")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)
