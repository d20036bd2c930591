"""Run the acceptance criteria and print one PASS/FAIL line each.

    python3 scripts/run_acceptance.py [--json report.json]
"""

import argparse
import json
import sys
import time

from laguerre_geronimus.checks import CheckConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", default=None)
    args = ap.parse_args()
    t0 = time.perf_counter()
    results = run_suite("all", CheckConfig())
    for r in results:
        print(r.line())
    print(f"({time.perf_counter() - t0:.1f} s)")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.as_dict() for r in results], fh, indent=1, sort_keys=True)
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
