"""How fast the finite-N bounds close in on F(s), formula evaluation only."""

import argparse

from logpcf import theory


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--s", type=float, nargs="+", default=[1.0, 2.5, 4.3, 7.3])
    ap.add_argument("--max-exp", type=int, default=8)
    args = ap.parse_args()

    print("N,s,lower,upper,F,k_max,k_min")
    for e in range(2, args.max_exp + 1):
        N = 10**e
        for s in args.s:
            c = theory.fn_bounds(N, s)
            print(f"{N},{s:g},{c.lower:.12g},{c.upper:.12g},{theory.f_limit(s):.12g},"
                  f"{c.counts.k_max},{c.counts.k_min}")


if __name__ == "__main__":
    main()
