"""Largest DQC1 negativity seen over Haar-random unitaries and all cuts, per n.

The witness value 5/4 is listed alongside for comparison.
"""
import argparse

import numpy as np

from mixedcorr import dqc1
from mixedcorr.seeding import DEFAULT_SEED

from script_io import write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results/haar_scan.csv")
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--workers", type=int, default=4)
    args = ap.parse_args()

    rows = []
    for n in range(1, args.max_n + 1):
        items = dqc1.haar_scan(n, args.samples, args.seed + n, args.workers)
        ms = np.array([i.max_m for i in items])
        rows.append([n, args.samples, float(ms.mean()), float(ms.max()), dqc1.NEGATIVITY_CAP])
    write_csv(args.out, ["n", "samples", "mean_max_M", "max_M", "witness_M"], rows)


if __name__ == "__main__":
    main()
