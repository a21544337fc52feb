#!/usr/bin/env python3
"""Find the standard small countermodels and re-confirm them independently.

Writes each countermodel as a frame/valuation file pair and replays it
through the model checker, mirroring what `clc search` + `clc mc` do.
"""

import json
import sys
from pathlib import Path

from condlogic import catalog
from condlogic.frames import frame_from_json, frame_to_json
from condlogic.semantics import check, valuation_from_json, valuation_to_json
from condlogic.syntax import parse

DEMOS = [
    ("ICK", "(p ~> q) -> (p -> q)"),
    ("ICK", "p ~> p"),
    ("HLCflat", "(p -> q) -> (p ~> q)"),
]


def main() -> int:
    outroot = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("countermodels")
    ok = True
    for idx, (logic, target_src) in enumerate(DEMOS):
        target = parse(target_src)
        result = catalog.search_countermodel(logic, target, max_worlds=2)
        if not result.found:
            print(f"FAIL {logic} vs {target_src}: exhausted")
            ok = False
            continue
        outdir = outroot / f"demo{idx}"
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "frame.json").write_text(
            json.dumps(frame_to_json(result.frame), sort_keys=True, indent=2)
        )
        (outdir / "valuation.json").write_text(
            json.dumps(valuation_to_json(result.valuation), sort_keys=True, indent=2)
        )
        # reload from disk and confirm the refutation world-by-world
        frame = frame_from_json(json.loads((outdir / "frame.json").read_text()))
        valuation = valuation_from_json(
            json.loads((outdir / "valuation.json").read_text()), frame
        )
        confirmed = not check(frame, valuation, target, result.world)
        ok &= confirmed
        print(f"{'ok  ' if confirmed else 'FAIL'} {logic:8s} refutes {target_src!r} "
              f"at world {result.world} on {result.frame.n} world(s) -> {outdir}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
