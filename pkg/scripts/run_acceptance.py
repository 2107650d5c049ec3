"""Run the eight acceptance checks outside pytest and print one line each.

    python3 scripts/run_acceptance.py [--only 2,6]
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import acceptance  # noqa: E402


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--only", help="comma-separated criterion numbers")
    args = ap.parse_args()
    which = [int(k) for k in args.only.split(",")] if args.only else sorted(acceptance.CRITERIA)
    failed = 0
    for k in which:
        name, fn = acceptance.CRITERIA[k]
        t0 = time.perf_counter()
        ok, detail = fn()
        failed += not ok
        print(f"criterion {k} ({name}): {'PASS' if ok else 'FAIL'} [{time.perf_counter() - t0:.1f}s] -- {detail}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
