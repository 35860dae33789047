"""Mixed-Grover tables: negativity sweep, discord-bound scaling and repetition counts."""
import argparse

from mixedcorr import grover

from script_io import write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--max-n", type=int, default=6)
    args = ap.parse_args()

    sweep_rows = []
    for n in range(3, args.max_n + 1):
        for p in (1.0, 0.5, 0.1, 2 ** (-n / 2)):
            for r in grover.sweep(n, p):
                sweep_rows.append([r.n, r.p, r.theta, str(r.mask), r.phi, r.M_analytic, r.M_brute, r.d, r.discord_bound])
    write_csv(
        f"{args.out_dir}/grover_sweep.csv",
        ["n", "p", "theta", "mask", "phi", "M_analytic", "M_brute", "d", "discord_bound"],
        sweep_rows,
    )

    # worst case phi = pi/4, so d = p
    scaling = []
    for n in range(4, 61, 4):
        p = 2 ** (-0.4 * n)
        scaling.append([n, p, p, grover.discord_bound_value(p, n), grover.negativity_upper_bound(p, n)])
    write_csv(f"{args.out_dir}/discord_scaling.csv", ["n", "p", "d", "discord_bound", "M_bound"], scaling)

    speedup = []
    for n in range(8, 41, 4):
        for p in (2 ** (-n / 4), 2 ** (-0.4 * n)):
            L = grover.min_repetitions(p, n)
            m = grover.speedup_model(p, n, L)
            speedup.append([n, p, L, m.p_tilde, m.success, m.advantage])
    write_csv(f"{args.out_dir}/grover_speedup.csv", ["n", "p", "L", "p_tilde", "success", "advantage"], speedup)


if __name__ == "__main__":
    main()
