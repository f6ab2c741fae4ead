#!/usr/bin/env python3
"""Run every verification suite at both primes and print a summary table."""

import sys
import time

from thh.cli import default_window, run_suite

SUITES = ("section4", "matching", "cofiber", "dueling", "duality", "units", "ko")


def main() -> int:
    failures = 0
    for p in (2, 3):
        window = default_window(p)
        for suite in SUITES:
            if suite == "ko" and p != 2:
                continue
            t0 = time.perf_counter()
            rows = run_suite(suite, p, window, level=3)
            bad = [r for r in rows if not r[2]]
            failures += len(bad)
            status = "ok" if not bad else f"{len(bad)} FAILED"
            print(f"p={p} {suite:<9} {len(rows):>4} checks  "
                  f"{time.perf_counter() - t0:6.1f}s  {status}")
            for name, idx, _, detail in bad[:10]:
                print(f"    FAIL {name} @ {idx}: {detail}")
    print("all clean" if failures == 0 else f"{failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
