#!/usr/bin/env python3
"""Run every randomized property suite at full acceptance scale.

Usage: python3 scripts/run_property_suite.py [seed]

Exits nonzero if any suite reports a failure; failures include the
diagram dump and move log needed to reproduce them.
"""

import sys
import time

from maip.checks import (check_compose_suite, check_corollary_suite,
                         check_moves, check_prop2_suite, check_vassiliev_suite)

RUNS = (
    (check_moves, 1000),
    (check_prop2_suite, 500),
    (check_corollary_suite, 500),
    (check_compose_suite, 200),
    (check_vassiliev_suite, 200),
)


def main():
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 20250810
    bad = 0
    for suite, trials in RUNS:
        t0 = time.perf_counter()
        report = suite(trials, seed)
        elapsed = time.perf_counter() - t0
        print(f"{report.summary()}  ({elapsed:.1f}s)")
        for failure in report.failures:
            bad += 1
            print(f"-- trial {failure['trial']} (seed {failure['seed']})")
            for key, value in failure.items():
                if key not in ("trial", "seed"):
                    print(f"   {key}: {value}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
