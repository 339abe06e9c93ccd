#!/usr/bin/env python3
"""Reproduce the coincidence tables: how many distinct counting polynomials
exist per tree class and size, and which trees collide.

Usage:
    python scripts/run_census.py [--max-n 14] [--list-collisions]
"""

from __future__ import annotations

import argparse
import time

from treecount.counting import CensusClass, census

RANGES = {
    CensusClass.ORANGE: range(2, 15, 2),
    CensusClass.UNIMODAL_VERSAL: range(1, 14, 2),
    CensusClass.UNIMODAL_GENERIC: range(1, 14, 2),
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=14)
    parser.add_argument("--list-collisions", action="store_true")
    args = parser.parse_args()

    for klass, sizes in RANGES.items():
        trees, polys = [], []
        collisions = []
        for n in sizes:
            if n > args.max_n:
                break
            rep = census(n, klass)
            trees.append(rep.tree_count)
            polys.append(rep.distinct_polynomial_count)
            collisions.extend((n, bucket) for bucket in rep.collisions)
        print(f"{klass.value}:")
        print(f"  trees        {', '.join(map(str, trees))}")
        print(f"  polynomials  {', '.join(map(str, polys))}")
        if args.list_collisions:
            for n, bucket in collisions:
                print(f"  n={n} collision: {' '.join(bucket)}")


if __name__ == "__main__":
    start = time.monotonic()
    main()
    print(f"[{time.monotonic() - start:.1f}s]")
