"""Run the default (or deep) suite and write the report plus a one-line summary per statement."""

import argparse
import json
import os
from collections import Counter

from liewedge.verify import SuiteConfig, exit_code, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--deep", action="store_true")
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--output", default="suite_report.json")
    args = ap.parse_args()

    doc = run_suite(SuiteConfig(deep=args.deep, workers=args.workers))
    with open(args.output, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    table = Counter((c["statement"], c["outcome"]) for c in doc["cases"])
    for stmt in sorted({s for s, _ in table}):
        row = ", ".join(f"{o}={n}" for (s, o), n in sorted(table.items()) if s == stmt)
        print(f"{stmt:14s} {row}")
    return exit_code(doc)


if __name__ == "__main__":
    raise SystemExit(main())
