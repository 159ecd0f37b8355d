"""Compile the two-block ornamented matrix and compare leading terms with the prediction.

The dotted version is only compiled and predicted; evaluating it needs a very
large staircase.  The dot-free version is evaluated at its default staircase,
through the top-degree component only.
"""

import argparse

from schurkit.combinatorics import dual_partition
from schurkit.parmat import ParMat, empty_partitions
from schurkit.schurrep import compile_parmat, leading_term_check, predicted_leading_exponent

A = ((2, 3, 4), (3, 2, 2))
DUALS = {(0, 0): (2, 1), (1, 0): (3, 2, 1), (0, 1): (4, 3, 2), (1, 1): (5, 4), (0, 2): (6, 5, 4, 3), (1, 2): (7, 6)}


def example(with_dots: bool) -> ParMat:
    if with_dots:
        P = tuple(tuple(dual_partition(DUALS[(i, j)]) for j in range(3)) for i in range(2))
    else:
        P = empty_partitions(A)
    return ParMat(A, P, ((9,), (7,)), ((5, 5), (6,)))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--N", type=int, default=100, help="staircase size for the predicted exponent")
    args = ap.parse_args()

    dotted = example(True)
    prog = compile_parmat(dotted, leading_block=True)
    kinds = [g.kind for g in prog.ops]
    print("operations:", {k: kinds.count(k) for k in sorted(set(kinds))})
    print(f"predicted leading exponent at N={args.N}:", predicted_leading_exponent(dotted, args.N))

    rep = leading_term_check(example(False), leading_block=True, nu=1, top_degree=True)
    print(f"dot-free version at N={rep.N}: observed={rep.observed}")
    print("matches prediction:", rep.ok)


if __name__ == "__main__":
    main()
