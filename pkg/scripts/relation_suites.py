"""Run the polynomial-model relation suites and report per-relation instance counts."""

import argparse
import collections
import time

from schurkit.schurrep import SUITES, check_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--suite", choices=sorted(SUITES), default="full")
    ap.add_argument("--max-thickness", type=int, default=2)
    ap.add_argument("--max-degree", type=int, default=3)
    args = ap.parse_args()

    counts = collections.Counter()
    failures = collections.Counter()
    start = time.perf_counter()
    for inst in SUITES[args.suite](args.max_thickness):
        counts[inst.name] += 1
        _, failure = check_instance(inst, args.max_degree)
        if failure:
            failures[inst.name] += 1
    for name in sorted(counts):
        print(f"{name:<24} {counts[name]:>5}  failures={failures[name]}")
    print(f"total {sum(counts.values())} instances in {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
