#!/usr/bin/env python3
"""Agreement sweeps between the fiber-based analysis and the dense oracle.

Runs exhaustive sweeps for small n and a randomized sweep at a larger n,
printing the worst norm error and any classification disagreements per n.
"""

import argparse
import time

import numpy as np

from genshift import (
    IndexMap,
    IndexSet,
    PowerIterationConfig,
    check_map_agreement,
    exhaustive_maps,
    random_tables,
)


def sweep(maps, config, rng):
    checked = 0
    worst = 0.0
    bad = []
    for m in maps:
        res = check_map_agreement(m, config=config, rng=rng)
        checked += 1
        worst = max(worst, res.norm_error)
        if not res.ok:
            bad.append(res.table)
    return checked, worst, bad


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-exhaustive", type=int, default=5)
    parser.add_argument("--random-n", type=int, default=12)
    parser.add_argument("--random-count", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    config = PowerIterationConfig(seed=args.seed)
    rng = np.random.default_rng(args.seed)

    for n in range(2, args.max_exhaustive + 1):
        t0 = time.monotonic()
        checked, worst, bad = sweep(exhaustive_maps(n), config, rng)
        dt = time.monotonic() - t0
        print(f"n={n} exhaustive: {checked} maps, worst norm error {worst:.3e}, "
              f"{len(bad)} disagreements, {dt:.2f}s")
        for table in bad:
            print(f"  disagreement: {list(table)}")

    dom = IndexSet.finite(args.random_n)
    maps = (IndexMap(dom, table=t) for t in random_tables(args.random_n, args.random_count, rng))
    t0 = time.monotonic()
    checked, worst, bad = sweep(maps, config, rng)
    dt = time.monotonic() - t0
    print(f"n={args.random_n} random: {checked} maps, worst norm error {worst:.3e}, "
          f"{len(bad)} disagreements, {dt:.2f}s")
    for table in bad:
        print(f"  disagreement: {list(table)}")


if __name__ == "__main__":
    main()
