"""Dimensions of reduced cyclotomic Hecke algebras and Schur algebra Hom counts."""

import argparse
from math import factorial

from schurkit.hecke import CycContext, sample_parameters
from schurkit.schurdjm import algebra_dimension


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=3)
    ap.add_argument("--max-ell", type=int, default=2)
    ap.add_argument("--schur", action="store_true", help="also compute the Schur algebra dimension")
    args = ap.parse_args()

    for ell in range(1, args.max_ell + 1):
        for m in range(1, args.max_m + 1):
            ctx = CycContext(m, ell, sample_parameters(ell))
            line = (f"m={m} ell={ell} hecke={ctx.dimension()} "
                    f"ideal_route={ctx.reduced_basis_rank_mod_ideal()} expected={ell**m * factorial(m)}")
            if args.schur:
                c1, c2 = algebra_dimension(m, ell, ctx)
                line += f" schur={c1}/{c2}"
            print(line)


if __name__ == "__main__":
    main()
