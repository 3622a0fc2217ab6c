"""Worst chain ratio prod(n)/prod(q) over all nonincreasing q with entries
up to a bound, compared with the rational enclosure of (4/e) sqrt(3)^(d-1)."""

import argparse
import itertools

from succmin import exact
from succmin.verifiers import constant_enclosure, minimize_chain


def nonincreasing(d, top):
    for q in itertools.combinations_with_replacement(range(top, 0, -1), d):
        yield q


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-dim", type=int, default=4)
    ap.add_argument("--max-entry", type=int, default=12)
    args = ap.parse_args()

    for d in range(1, args.max_dim + 1):
        worst, arg = 0, None
        for q in nonincreasing(d, args.max_entry):
            sol = minimize_chain(q)
            if sol.ratio > worst:
                worst, arg = sol.ratio, sol
        lo, hi = constant_enclosure(d)
        print(f"d={d} worst ratio {exact.fmt(worst)} ~ {float(worst):.4f} at q={arg.q} n={arg.n}; "
              f"upper enclosure {float(hi):.4f}; within {worst <= hi}")


if __name__ == "__main__":
    main()
