"""Mean negativity of fixed-trace binary-phase unitaries against n, one series per f."""
import argparse
from fractions import Fraction

from mixedcorr import typicality as ty
from mixedcorr.seeding import DEFAULT_SEED

from script_io import write_csv

FRACTIONS = ("1/4", "5/8", "3/4", "7/8", "1")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results/fixed_trace.csv")
    ap.add_argument("--ns", default="4,6,8,10,12")
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--workers", type=int, default=4)
    args = ap.parse_args()

    rows = []
    for f in map(Fraction, FRACTIONS):
        for n in (int(t) for t in args.ns.split(",")):
            s = ty.fixed_trace_mc(ty.FixedTraceSpec(n, f, args.samples), args.seed, args.workers)
            rows.append([s.n, str(s.f), s.samples, s.mean_M, s.std_err, s.max_M])
    write_csv(args.out, ["n", "f", "samples", "mean_M", "std_err", "max_M"], rows)


if __name__ == "__main__":
    main()
