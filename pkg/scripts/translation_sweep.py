"""Sweep the simultaneous translation search over small random instances
(d <= 2, n <= 3 bodies, t <= 6) and tabulate outcomes."""

import argparse
import collections

from succmin import lab


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--budget", type=int, default=10 ** 5)
    args = ap.parse_args()

    table = collections.Counter()
    for d in (1, 2):
        for n in (2, 3):
            cfg = lab.GenConfig(dim=d, body_count=(n, n), trials=args.trials, seed=args.seed,
                                budget=args.budget)
            summary = lab.run_campaign("translation-problem", cfg, f"translation-d{d}-n{n}.jsonl")
            for verdict, count in summary["counts"].items():
                table[d, n, verdict] += count
            print(f"d={d} n={n}", summary["counts"], "confirmed", summary["confirmed_violations"])
    if any(v for (_, _, verdict), v in table.items() if verdict == "violated"):
        print("instances without a translation were found; see the JSONL logs")


if __name__ == "__main__":
    main()
