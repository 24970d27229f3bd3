"""Unit conversion at the operator boundary (CLI flags and JSON documents).

Operators may write lengths in km, pressures in bar and temperatures in
degC.  Everything is converted to SI on entry; nothing past this module
sees a non-SI number.
"""

import re

from .errors import RejectedInput

BAR = 1e5
KELVIN_OFFSET = 273.15

# suffix -> (quantity kind, factor, offset) so that SI = value * factor + offset
SUFFIXES = {
    "m": ("length", 1.0, 0.0),
    "km": ("length", 1e3, 0.0),
    "mm": ("length", 1e-3, 0.0),
    "pa": ("pressure", 1.0, 0.0),
    "kpa": ("pressure", 1e3, 0.0),
    "bar": ("pressure", BAR, 0.0),
    "mbar": ("pressure", 1e-3 * BAR, 0.0),
    "k": ("temperature", 1.0, 0.0),
    "c": ("temperature", 1.0, KELVIN_OFFSET),
    "s": ("time", 1.0, 0.0),
    "m_s": ("speed", 1.0, 0.0),
}

_QUANTITY = re.compile(r"^\s*([-+0-9.eE]+)\s*([a-zA-Z_/°]*)\s*$")


def parse_quantity(text, kind: str) -> float:
    """Parse ``"61.48km"``, ``"69 bar"``, ``"20C"`` or a bare SI number."""
    if isinstance(text, (int, float)):
        return float(text)
    m = _QUANTITY.match(str(text))
    if not m:
        raise RejectedInput(f"cannot parse {kind} {text!r}")
    number, suffix = m.groups()
    try:
        value = float(number)
    except ValueError:
        raise RejectedInput(f"cannot parse {kind} {text!r}") from None
    suffix = suffix.lower().replace("°", "").replace("/", "_")
    if not suffix:
        return value
    if suffix not in SUFFIXES or SUFFIXES[suffix][0] != kind:
        raise RejectedInput(f"unit {suffix!r} not accepted for {kind}")
    _, factor, offset = SUFFIXES[suffix]
    return value * factor + offset


def field_si(doc: dict, base: str, kind: str, *, default=None, path: str = ""):
    """Read ``base_<unit>`` from a JSON object and return it in SI.

    ``doc`` may hold e.g. ``length_m`` or ``length_km``; exactly one
    spelling is allowed.
    """
    found = [(k, v) for k, v in doc.items()
             if k.startswith(base + "_") and k[len(base) + 1:] in SUFFIXES
             and SUFFIXES[k[len(base) + 1:]][0] == kind]
    if len(found) > 1:
        raise RejectedInput(f"{path}{base}: give one of {[k for k, _ in found]}, not several")
    if not found:
        if default is None:
            raise RejectedInput(f"{path}{base}: missing (e.g. {base}_{_si_suffix(kind)})")
        return default
    key, value = found[0]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise RejectedInput(f"{path}{key}: expected a number, got {value!r}")
    _, factor, offset = SUFFIXES[key[len(base) + 1:]]
    return float(value) * factor + offset


def _si_suffix(kind):
    return {"length": "m", "pressure": "pa", "temperature": "k",
            "time": "s", "speed": "m_s"}[kind]
