#!/usr/bin/env python3
"""Run the six-stage pipeline on the cubic family at mu3 = 2 and print the trace summary."""

import argparse
import json
import time
from pathlib import Path

from abeljac.pipeline import run_pipeline, trace_dict
from abeljac.textio import parse_poly

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--data", default=str(ROOT / "data" / "cubic_family_mu3_2"))
    ap.add_argument("--j", type=int, default=2)
    ap.add_argument("--trace", help="write the full trace here")
    args = ap.parse_args()

    d = Path(args.data)
    P = parse_poly((d / "P.txt").read_text())
    Q = parse_poly((d / "Q.txt").read_text())
    mu = tuple(parse_poly(s).coeff(0, 0) for s in (d / "mu.txt").read_text().strip().split(","))

    t0 = time.monotonic()
    state = run_pipeline(P, Q, mu, args.j, strict=False)
    print(f"ran in {time.monotonic() - t0:.2f}s")
    for s in state.stages:
        bad = [c.name for c in s.checks if not c.passed]
        print(f"  stage {s.index} {s.name:8s} {'ok' if not bad else 'FAILED: ' + ', '.join(bad)}")
    print(json.dumps(state.final, indent=2))
    if args.trace:
        Path(args.trace).write_text(json.dumps(trace_dict(state), indent=2, default=str))


if __name__ == "__main__":
    main()
