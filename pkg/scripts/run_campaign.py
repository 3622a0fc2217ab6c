"""Run one seeded campaign and print its summary.

    python3 scripts/run_campaign.py ineq4 --dim 3 --trials 200 --symmetric --random-lattice
"""

import argparse
import json
import time

from succmin import lab


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("statement", choices=lab.STATEMENTS)
    ap.add_argument("--dim", type=int, default=2)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bodies", type=int, nargs=2, default=(1, 1), metavar=("LO", "HI"))
    ap.add_argument("--symmetric", action="store_true")
    ap.add_argument("--random-lattice", action="store_true")
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    cfg = lab.GenConfig(dim=args.dim, trials=args.trials, seed=args.seed, body_count=tuple(args.bodies),
                        symmetric=args.symmetric, random_lattice=args.random_lattice)
    out = args.out or f"campaign-{args.statement}-d{args.dim}-s{args.seed}.jsonl"
    start = time.perf_counter()
    summary = lab.run_campaign(args.statement, cfg, out)
    summary["seconds"] = round(time.perf_counter() - start, 2)
    print(json.dumps(summary, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
