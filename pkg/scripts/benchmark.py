#!/usr/bin/env python3
"""Soft performance trend: recursive relations-lattice HNF vs the naive path.

Times both paths on random n x n matrices with 16-bit entries and reports the
per-size ratio and the growth factor of the recursive path between successive
sizes.  The naive path's cost is dominated by intermediate entry growth and
becomes impractical well before the recursive path does; pass --skip-naive-above
to cap where it is still timed.

Usage:
    python scripts/benchmark.py [--sizes 32,64,128] [--seed N]
                                [--skip-naive-above 64] [--trials 1]
"""

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hnfkit.apps import hnf                      # noqa: E402
from hnfkit.intmat import IntMat                 # noqa: E402
from hnfkit.oracle import naive_hnf              # noqa: E402


def run(sizes, seed, skip_naive_above, trials):
    rng = random.Random(seed)
    prev = None
    print(f"{'n':>5} {'recursive':>12} {'naive':>12} {'ratio':>8} {'growth':>8}")
    for n in sizes:
        best_fast = None
        best_naive = None
        for _ in range(trials):
            a = IntMat([[rng.randrange(-(2 ** 15), 2 ** 15) for _ in range(n)]
                        for _ in range(n)], n, n)
            t0 = time.time()
            fast = hnf(a)
            t_fast = time.time() - t0
            best_fast = t_fast if best_fast is None else min(best_fast, t_fast)
            if n <= skip_naive_above:
                t0 = time.time()
                slow = naive_hnf(a)
                t_naive = time.time() - t0
                assert fast.mat == slow.mat
                best_naive = t_naive if best_naive is None else min(best_naive, t_naive)
        naive_txt = f"{best_naive:12.2f}" if best_naive is not None else f"{'skipped':>12}"
        ratio_txt = (f"{best_fast / best_naive:8.2f}" if best_naive else f"{'-':>8}")
        growth_txt = f"{best_fast / prev:8.1f}" if prev else f"{'-':>8}"
        print(f"{n:5d} {best_fast:12.2f} {naive_txt} {ratio_txt} {growth_txt}", flush=True)
        prev = best_fast


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="32,64,128",
                    help="comma-separated matrix dimensions")
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--skip-naive-above", type=int, default=64,
                    help="do not time the naive path beyond this dimension")
    ap.add_argument("--trials", type=int, default=1)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",") if s]
    run(sizes, args.seed, args.skip_naive_above, args.trials)


if __name__ == "__main__":
    main()
