#!/usr/bin/env python3
"""Benchmark the compiled survey kernel against the pure-Python fallback.

Runs the same survey range through both implementations in-process and
reports wall time, fields/second and the speedup.  Checks that the two
aggregates agree before trusting the numbers.

Usage: python benchmarks/bench_kernels.py [--max-disc 2000000] [--repeat 3]
"""

import argparse
import time


def _load_kernels():
    from nuquad import _pykernel
    try:
        from nuquad import _kernel
    except ImportError:
        _kernel = None
    return _kernel, _pykernel


def _drive(survey_range, x: int, chunk: int = 1 << 16) -> dict:
    total = {"total": 0, "violations": 0}
    for lo in range(1, x + 1, chunk):
        counts, _ = survey_range(lo, min(lo + chunk, x + 1), x, False, False)
        total["total"] += counts["total"]
        total["violations"] += counts["violations"]
    return total


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-disc", type=int, default=2_000_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    compiled, python = _load_kernels()
    lanes = []
    if compiled is not None:
        lanes.append(("compiled", compiled.survey_range))
    else:
        print("compiled kernel not built; benchmarking the fallback only")
    lanes.append(("python", python.survey_range))

    results = {}
    agg_check = {}
    for name, fn in lanes:
        best = float("inf")
        for _ in range(args.repeat):
            t0 = time.perf_counter()
            agg = _drive(fn, args.max_disc)
            best = min(best, time.perf_counter() - t0)
        results[name] = best
        agg_check[name] = agg
        rate = agg["total"] / best
        print(f"{name:>9}: {best:8.3f} s   {agg['total']} fields   "
              f"{rate:12.0f} fields/s   violations={agg['violations']}")

    if len(agg_check) == 2:
        vals = list(agg_check.values())
        if vals[0] != vals[1]:
            print("AGGREGATE MISMATCH between lanes:", agg_check)
            return 1
        print(f"  speedup: {results['python'] / results['compiled']:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
