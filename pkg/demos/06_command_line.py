"""
The same runs from the command line
===================================

Every step above is also a ``pipeleak`` subcommand: simulate writes CSV
telemetry, detect and balance read it back and print NDJSON.  Here the
commands are driven through ``main`` so the script runs anywhere.
"""

import io
import json
import tempfile
from pathlib import Path

from pipeleak.cli import main

data = Path(__file__).parent / "data"
config = str(data / "config.json")


def pipeleak(*args):
    buf = io.StringIO()
    code = main([str(a) for a in args], out=buf)
    print(f"$ pipeleak {' '.join(str(a) for a in args)}   [exit {code}]")
    for line in buf.getvalue().splitlines():
        print("  ", line[:150] + ("..." if len(line) > 150 else ""))
    return code


with tempfile.TemporaryDirectory() as tmp:
    for name in ("case_study", "two_incidents", "slow_leak"):
        out = Path(tmp) / name
        pipeleak("simulate", config, data / f"{name}.json", out)
        truth = json.loads((out / "truth.json").read_text())
        print("   truth:", [round(t["leak_chainage_m"], 1) for t in truth["leaks"]])
        pipeleak("detect", config, out)
    pipeleak("balance", config, Path(tmp) / "slow_leak", "600")

pipeleak("localize", "14.95", "0", "--length", "61.48km", "--velocity", "1150.5")
pipeleak("localize", "100", "0", "--length", "61.48km", "--velocity", "1150.5")
pipeleak("classify", "--pressure-bar", "69", "--hole-mm", "10", "--pipe-mm", "500")
