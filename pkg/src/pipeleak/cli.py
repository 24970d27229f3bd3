"""``pipeleak`` command line: simulate, detect, balance, localize, classify.

Exit codes: 0 success, 1 detection infeasibility (a time difference that no
point on the line can produce), 2 input or schema error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import acoustic
from .acoustic import LeakGeometry
from .config import SchemaError, load_config, load_json, load_scenario, parse_fluid, parse_profile
from .errors import InfeasibleTimeDifference, PipeleakError
from .locate import localize_profile, localize_uniform
from .monitor import balance_windows, pressure_wave_alarms, volume_alarm
from .sim import simulate
from .telemetry import read_telemetry, to_json_line, write_telemetry
from .units import BAR, parse_quantity

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT = 0, 1, 2

log = logging.getLogger("pipeleak")


def _emit(record, out):
    out.write(to_json_line(record) + "\n")


def _station_series(telemetry, station, channel, required=True):
    series = telemetry.get((station, channel))
    if series is None and required:
        raise SchemaError(f"telemetry has no {channel} series for station {station!r}")
    return series


def cmd_simulate(args, out) -> int:
    config = load_config(args.config)
    scenario = load_scenario(args.scenario, config, seed=args.seed)
    result = simulate(scenario)
    out_dir = Path(args.out_dir)
    paths = write_telemetry(result.series(), out_dir)
    truth = {
        "schema_version": 1,
        "seed": scenario.seed,
        "files": [p.name for p in paths],
        "leaks": [
            {
                "leak_chainage_m": t.leak_chainage_m,
                "leak_start_s": t.leak_start_s,
                "leak_end_s": t.leak_end_s,
                "arrival_inlet_s": t.arrival_inlet_s,
                "arrival_outlet_s": t.arrival_outlet_s,
                "time_difference_s": t.time_difference_s,
                "leak_rate_m3_s": t.leak_rate_m3_s,
                "pressure_drop_pa": t.pressure_drop_pa,
                "step_inlet_pa": t.step_inlet_pa,
                "step_outlet_pa": t.step_outlet_pa,
            }
            for t in result.truths if t.leak_rate_m3_s > 0
        ],
    }
    with open(out_dir / "truth.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(truth, fh, indent=2)
        fh.write("\n")
    log.info("wrote %d series to %s", len(paths), out_dir)
    return EXIT_OK


def cmd_detect(args, out) -> int:
    config = load_config(args.config)
    telemetry = read_telemetry(args.telemetry_dir)
    p_in = _station_series(telemetry, config.inlet_station, "pressure_pa")
    p_out = _station_series(telemetry, config.outlet_station, "pressure_pa")
    report = pressure_wave_alarms(p_in, p_out, config)
    for alarm in report.alarms:
        _emit(alarm, out)
    for ev_in, ev_out, message in report.infeasible:
        log.error("inlet drop at %.3f s / outlet drop at %.3f s: %s",
                  ev_in.onset_time_s, ev_out.onset_time_s, message)
    return EXIT_INFEASIBLE if report.infeasible else EXIT_OK


def cmd_balance(args, out) -> int:
    config = load_config(args.config)
    telemetry = read_telemetry(args.telemetry_dir)
    a, b = config.inlet_station, config.outlet_station
    q_in = _station_series(telemetry, a, "flow_m3_s")
    q_out = _station_series(telemetry, b, "flow_m3_s")
    pressures = [_station_series(telemetry, s, "pressure_pa", False) for s in (a, b)]
    temps = [_station_series(telemetry, s, "temperature_k", False) for s in (a, b)]
    window = parse_quantity(args.window_s, "time")
    if not window > 0:
        raise SchemaError("window must be > 0 s")
    results = balance_windows(q_in, q_out, config, window, pressures, temps)
    line_pressure = (float(pressures[0].values.mean()) if pressures[0] is not None
                     else config.fluid.reference_pressure_pa)
    alarm = volume_alarm(results, config, line_pressure)
    cumulative = 0.0
    for r in results:
        cumulative += r.leakage_volume_m3
        record = {
            "window": list(r.window),
            "v_in_m3": r.v_in_m3,
            "v_out_m3": r.v_out_m3,
            "delta_inventory_m3": r.delta_inventory_m3,
            "leakage_volume_m3": r.leakage_volume_m3,
            "cumulative_leakage_m3": cumulative,
        }
        _emit(record, out)
        if alarm is not None and r.window[1] == alarm.raised_at_s:
            _emit(alarm, out)
    return EXIT_OK


def _load_profile(path):
    doc = load_json(path)
    if "profile" in doc:
        fluid = parse_fluid(doc["fluid"]) if "fluid" in doc else None
        return parse_profile(doc["profile"], fluid)
    return parse_profile(doc)


def cmd_localize(args, out) -> int:
    t_in, t_out = float(args.t_inlet), float(args.t_outlet)
    if args.profile:
        fix = localize_profile(t_in, t_out, _load_profile(args.profile))
    else:
        if args.length is None or args.velocity is None:
            raise SchemaError("give --length and --velocity, or --profile")
        fix = localize_uniform(t_in, t_out, parse_quantity(args.length, "length"),
                               parse_quantity(args.velocity, "speed"))
    _emit(fix, out)
    return EXIT_OK


def cmd_classify(args, out) -> int:
    pressure = args.pressure_bar * BAR
    if args.hole_ratio is not None:
        ratio = args.hole_ratio
        if not 0 <= ratio <= 1:
            raise SchemaError("--hole-ratio must lie in [0, 1]")
        geometry = LeakGeometry(ratio, 1.0, pressure)
    else:
        if args.hole_mm is None or args.pipe_mm is None:
            raise SchemaError("give --hole-ratio, or both --hole-mm and --pipe-mm")
        geometry = LeakGeometry(args.hole_mm / 1e3, args.pipe_mm / 1e3, pressure)
    floor = args.floor_mbar * 1e-3 * BAR
    drop = acoustic.leak_pressure_drop(geometry)
    detectable = drop >= floor
    result = {
        "severity": acoustic.classify_severity(geometry.hole_ratio, detectable),
        "hole_ratio": geometry.hole_ratio,
        "pressure_drop_pa": drop,
        "detectable": detectable,
        "min_detectable_hole_ratio": (acoustic.min_detectable_hole_ratio(pressure, floor)
                                      if pressure > 0 else None),
        "reference_band_hz": list(acoustic.EMISSION_BAND_HZ),
        "notes": acoustic.NO_FLOW_CAVEAT,
    }
    _emit(result, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pipeleak", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="write synthetic telemetry CSVs and truth.json")
    p.add_argument("config")
    p.add_argument("scenario")
    p.add_argument("out_dir")
    p.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("detect", help="pressure-wave leak alarms as NDJSON")
    p.add_argument("config")
    p.add_argument("telemetry_dir")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("balance", help="windowed volume balance as NDJSON")
    p.add_argument("config")
    p.add_argument("telemetry_dir")
    p.add_argument("window_s", help="window length, seconds")
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("localize", help="leak chainage from arrival times")
    p.add_argument("t_inlet", type=float)
    p.add_argument("t_outlet", type=float)
    p.add_argument("--length", help="line length, m or with km suffix")
    p.add_argument("--velocity", help="uniform wave speed, m/s")
    p.add_argument("--profile", help="JSON file holding a profile or a run config")
    p.set_defaults(func=cmd_localize)

    p = sub.add_parser("classify", help="repair-urgency class of a leak")
    p.add_argument("--pressure-bar", type=float, required=True)
    p.add_argument("--hole-ratio", type=float)
    p.add_argument("--hole-mm", type=float)
    p.add_argument("--pipe-mm", type=float)
    p.add_argument("--floor-mbar", type=float, default=5.0,
                   help="sensor floor for detectability (default 5 mbar)")
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="pipeleak: %(levelname)s: %(message)s")
    started = time.perf_counter()
    try:
        code = args.func(args, out)
    except InfeasibleTimeDifference as exc:
        print(f"pipeleak: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except PipeleakError as exc:
        print(f"pipeleak: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    log.debug("%s finished in %.3f s", args.command, time.perf_counter() - started)
    return code


if __name__ == "__main__":
    sys.exit(main())
