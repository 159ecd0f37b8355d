"""Round-trip the higher level RSK map over all pairs of types and tabulate counts."""

import argparse
import time

from schurkit.rsk import verify_bijection


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=4)
    ap.add_argument("--max-ell", type=int, default=2)
    args = ap.parse_args()

    print(f"{'m':>2} {'ell':>3} {'pairs':>6} {'elements':>9} {'bad':>4} {'secs':>7}")
    for ell in range(1, args.max_ell + 1):
        for m in range(1, args.max_m + 1):
            start = time.perf_counter()
            rep = verify_bijection(m, ell)
            secs = time.perf_counter() - start
            print(f"{m:>2} {ell:>3} {rep.pairs_checked:>6} {rep.elements_checked:>9} "
                  f"{len(rep.mismatches):>4} {secs:>7.1f}")


if __name__ == "__main__":
    main()
