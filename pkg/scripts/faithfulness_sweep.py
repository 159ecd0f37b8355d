"""Evaluation rank and leading terms of compiled diagrams for every pair of objects."""

import argparse
import json
import time

from schurkit.combinatorics import enumerate_multicompositions
from schurkit.hecke import sample_parameters
from schurkit.schurrep import faithfulness_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--ell", type=int, default=2)
    ap.add_argument("--max-degree", type=int, default=2)
    ap.add_argument("--leading-block", action="store_true")
    args = ap.parse_args()

    u = sample_parameters(args.ell)
    start = time.perf_counter()
    elements = 0
    bad = []
    types = enumerate_multicompositions(args.m, args.ell)
    for nu in types:
        for mu in types:
            rep = faithfulness_check(nu, mu, args.max_degree, args.leading_block, u)
            elements += rep.count
            if not rep.ok:
                bad.append(rep.to_json())
    print(json.dumps({
        "m": args.m, "ell": args.ell, "leading_block": args.leading_block,
        "pairs": len(types) ** 2, "elements": elements, "failures": bad[:5],
        "seconds": round(time.perf_counter() - start, 1),
    }, indent=2))


if __name__ == "__main__":
    main()
