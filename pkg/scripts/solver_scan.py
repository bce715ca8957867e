#!/usr/bin/env python3
"""Scan deg q1 = 2..D for solutions of the coefficient system and print a JSON report per degree."""

import argparse
import json

from abeljac.groebner import Budget
from abeljac.solver import conjecture_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-deg", type=int, default=3)
    ap.add_argument("--min-deg", type=int, default=2)
    ap.add_argument("--budget", type=float, default=300.0, help="seconds per degree")
    ap.add_argument("--restrict", action="store_true", help="impose mu1 = mu2 = 0")
    args = ap.parse_args()

    fixed = {"mu1": 0, "mu2": 0} if args.restrict else {}
    for rep in conjecture_scan(args.max_deg, Budget(seconds=args.budget), args.min_deg, **fixed):
        print(json.dumps(rep.to_dict(), indent=2))


if __name__ == "__main__":
    main()
