#!/usr/bin/env python3
"""Time full sweeps against cohort size.

Runs PFFN and PFCFS sweeps on synthetic cohorts of increasing size with the
production degree bounds (4 friends, 3 preferences) and prints a timing
table.  The per-sweep cost should grow roughly with n^2 since each of the
n iterations touches every node with constant-bounded list work.

Usage:
    python scripts/benchmark_sweep.py --sizes 250 500 1000 2000
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from generate_cohort import generate

from cohort_alloc import Algorithm, sweep


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=[250, 500, 1000, 2000])
    parser.add_argument("--seed", type=int, default=11)
    parser.add_argument("--capacity", type=int, default=4)
    args = parser.parse_args()

    print(f"{'n':>6}  {'algo':<6}  {'seconds':>8}  {'best si':>7}")
    for n in args.sizes:
        dataset = generate(n, args.seed)
        for algorithm in Algorithm:
            started = time.perf_counter()
            result = sweep(dataset, algorithm, capacity=args.capacity)
            elapsed = time.perf_counter() - started
            best = result.iterations[result.best_index]
            print(
                f"{n:>6}  {algorithm.value:<6}  {elapsed:>8.3f}  "
                f"{best.satisfaction_index:>7}"
            )


if __name__ == "__main__":
    main()
