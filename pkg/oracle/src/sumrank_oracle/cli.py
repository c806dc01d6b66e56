"""Read primary JSON artifacts, recompute everything, write a single report JSON.

Usage:
    sumrank-oracle --rrbasis rr1.json rr2.json --analyze run1.json --out report.json

Exit code 0 iff every check matches.
"""

from __future__ import annotations

import argparse
import json
import sys

from .checks import check_rr_basis, check_weight_distribution


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="sumrank-oracle")
    parser.add_argument("--rrbasis", nargs="*", default=[], help="rrbasis JSON files")
    parser.add_argument("--analyze", nargs="*", default=[], help="analyze JSON files")
    parser.add_argument("--out", help="report path (default stdout)")
    args = parser.parse_args(argv)

    checks = []
    for path in args.rrbasis:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        for entry in check_rr_basis(data):
            entry["source"] = path
            checks.append(entry)
    for path in args.analyze:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        for entry in check_weight_distribution(data):
            entry["source"] = path
            checks.append(entry)

    report = {"checks": checks, "all_match": all(c["match"] for c in checks)}
    text = json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["all_match"] else 1


if __name__ == "__main__":
    sys.exit(main())
