"""Command-line entry point: ``mixedcorr <group> <command> [options]``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import dqc1, grover, linalg, typicality
from .matrix_io import format_float, read_matrix
from .seeding import DEFAULT_SEED

SEED_ENV = "MIXEDCORR_SEED"


def resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{SEED_ENV}={env!r} is not an integer") from None
    return DEFAULT_SEED


def _cell(x):
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, (float, np.floating)):
        return format_float(x)
    return str(x)


def render(header: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "json":
        records = [dict(zip(header, (_json_value(v) for v in row))) for row in rows]
        return json.dumps(records, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([[_cell(v) for v in row] for row in rows])
    return buf.getvalue()


def _json_value(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    return str(v)


def parse_masks(text: str | None, n: int, canonical=None) -> list[linalg.BipartitionMask]:
    if text is None:
        return canonical if canonical is not None else linalg.all_masks(n)
    if text == "all":
        return linalg.all_masks(n)
    masks = [linalg.BipartitionMask.from_string(s) for s in text.split(",")]
    for y in masks:
        if y.n != n:
            raise ValueError(f"mask {y} has {y.n} bits, expected n={n}")
        y.require_nontrivial()
    return masks


def _parse_list(text: str, kind):
    return [kind(t) for t in text.split(",") if t.strip()]


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


# -- dqc1 -------------------------------------------------------------------

def _load_unitary(args) -> np.ndarray:
    if args.input:
        return linalg.as_unitary(read_matrix(args.input))
    _require(args.n is not None, "--n or --input is required")
    _require(1 <= args.n <= 10, "--n must satisfy 1 <= n <= 10")
    return dqc1.haar_random_unitary(args.n, np.random.default_rng(args.seed))


def _report_rows(reports):
    return [[str(r.mask), r.mask.w, r.m_value, r.method] for r in reports]


DQC1_HEADER = ["mask", "w_y", "M", "method"]


def cmd_dqc1_negativity(args):
    U = _load_unitary(args)
    n = linalg.num_qubits(U.shape[0])
    masks = parse_masks(args.mask, n)
    if args.method == "svd-fast":
        reports = [dqc1.negativity_svd(U, y) for y in masks]
    else:
        state = dqc1.build_dqc1_state(U)
        reports = [dqc1.negativity_brute(state, y) for y in masks]
    best = max(r.m_value for r in reports)
    return DQC1_HEADER, _report_rows(reports), f"n={n} masks={len(reports)} max_M={best:.12g}"


def cmd_dqc1_scan(args):
    U = _load_unitary(args)
    scan = dqc1.scan_all_masks(U, args.method)
    argmax = " ".join(str(y) for y in scan.argmax())
    return DQC1_HEADER, _report_rows(scan.reports), f"max_M={scan.max_m:.12g} at {argmax}"


def _parse_cnots(items) -> tuple[tuple[int, int], ...]:
    out = []
    for item in items or []:
        try:
            c, t = (int(s) for s in item.split(","))
        except ValueError:
            raise ValueError(f"--cnot expects 'control,target', got {item!r}") from None
        out.append((c, t))
    return tuple(out)


def cmd_dqc1_witness(args):
    _require(args.n is not None and args.n >= 2, "--n must be >= 2 for the witness")
    _require(args.n <= 10, "--n must be <= 10")
    spec = dqc1.WitnessSpec(args.n, cnots=_parse_cnots(args.cnot))
    U = dqc1.build_witness(spec)
    masks = parse_masks(args.mask, args.n)
    reports = [dqc1.negativity_svd(U, y) for y in masks]
    best = max(r.m_value for r in reports)
    hits = sum(abs(r.m_value - dqc1.NEGATIVITY_CAP) <= 1e-9 for r in reports)
    return DQC1_HEADER, _report_rows(reports), f"n={args.n} max_M={best:.12g} masks_at_5/4={hits}"


def cmd_dqc1_trace(args):
    U = _load_unitary(args)
    shots = args.samples
    _require(shots is None or shots >= 1, "--samples (shots) must be >= 1")
    est = dqc1.estimate_trace(U, shots, np.random.default_rng([args.seed, 1]))
    header = ["shots", "re_est", "im_est", "re_exact", "im_exact"]
    row = [shots if shots is not None else "exact", est.re_est, est.im_est, est.re_exact, est.im_exact]
    return header, [row], f"Tr(U)/2^n ~ {est.re_est:.6g} + {est.im_est:.6g}i"


# -- grover -----------------------------------------------------------------

def _grover_n(args, upper: int):
    _require(args.n is not None, "--n is required")
    _require(2 <= args.n <= upper, f"--n must satisfy 2 <= n <= {upper}")
    _require(0 < args.p <= 1, "--p must lie in (0, 1]")


SWEEP_HEADER = ["n", "p", "theta", "mask", "phi", "M_analytic", "M_brute", "d", "discord_bound"]


def cmd_grover_sweep(args):
    _grover_n(args, grover.BRUTE_MAX_N)
    thetas = None if args.theta is None else _parse_list(args.theta, float)
    masks = parse_masks(args.mask, args.n, grover.canonical_masks(args.n))
    rows = grover.sweep(args.n, args.p, thetas, masks)
    out = [
        [r.n, r.p, r.theta, str(r.mask), r.phi, r.M_analytic, r.M_brute, r.d, r.discord_bound]
        for r in rows
    ]
    worst = max(abs(r.M_analytic - r.M_brute) for r in rows)
    return SWEEP_HEADER, out, f"rows={len(rows)} max|M_analytic-M_brute|={worst:.3g}"


def cmd_grover_decompose(args):
    _grover_n(args, grover.BRUTE_MAX_N)
    theta = grover.uniform_theta(args.n) if args.theta is None else float(args.theta)
    cfg = grover.GroverConfig(args.n, 0, args.p, theta)
    masks = parse_masks(args.mask, args.n, grover.canonical_masks(args.n))
    rows = []
    for y in masks:
        for i, step in enumerate(grover.decomposition_trace(cfg, y)):
            rows.append([str(y), i, step.label, step.M, step.d])
    return ["mask", "step", "label", "M", "d"], rows, f"masks={len(masks)} steps=5"


def cmd_grover_speedup(args):
    _require(args.n is not None and args.n >= 1, "--n is required")
    _require(0 < args.p <= 1, "--p must lie in (0, 1]")
    L = args.L if args.L is not None else grover.min_repetitions(args.p, args.n)
    model = grover.speedup_model(args.p, args.n, L)
    header = ["n", "p", "L", "p_tilde", "success", "advantage"]
    row = [args.n, args.p, L, model.p_tilde, model.success, model.advantage]
    return header, [row], f"L={L} success={model.success:.6g} advantage={model.advantage}"


# -- typicality -------------------------------------------------------------

def cmd_walk(args):
    _require(args.n is not None and args.n >= 1, "--n is required")
    mode = args.mode or "1d"
    _require(mode in typicality.MODE_TO_MODEL, "--mode must be 1d or 2d")
    est = typicality.estimate_E(args.n, mode, args.samples or 10000, args.seed, args.workers)
    header = ["mode", "n", "samples", "e_hat", "std_err", "e_closed"]
    row = [est.mode, est.n, est.samples, est.e_hat, est.std_err, est.e_closed]
    z = (est.e_hat - est.e_closed) / est.std_err if est.std_err else math.inf
    return header, [row], f"e_hat={est.e_hat:.6g} e_closed={est.e_closed:.6g} z={z:.3g}"


def _graph_model(mode: str | None) -> str:
    mode = mode or "binary"
    model = typicality.MODE_TO_MODEL.get(mode, mode)
    _require(model in typicality.MODELS, "--mode must be binary/uniform (or 1d/2d)")
    return model


def cmd_graph(args):
    _require(args.n is not None, "--n is required")
    model = _graph_model(args.mode)
    s = typicality.typicality_mc(args.n, model, args.samples or 1000, args.seed, args.workers)
    header = ["n", "model", "samples", "mean_M", "prediction"]
    row = [s.n, s.model, s.samples, s.mean_M, s.prediction]
    return header, [row], f"mean_M={s.mean_M:.6g} prediction={s.prediction:.6g} gap={s.discrepancy:.3g}"


def cmd_fixed_trace(args):
    _require(args.n is not None, "--n is required")
    fracs = _parse_list(args.trace_fraction or "1/4,5/8,3/4,7/8,1", Fraction)
    rows = []
    for f in fracs:
        spec = typicality.FixedTraceSpec(args.n, f, args.samples or 1000)
        s = typicality.fixed_trace_mc(spec, args.seed, args.workers)
        rows.append([s.n, str(s.f), s.samples, s.mean_M, s.std_err])
    means = " ".join(f"{r[1]}:{r[3]:.6g}" for r in rows)
    return ["n", "f", "samples", "mean_M", "std_err"], rows, f"mean_M {means}"


def cmd_lemma(args):
    ns = [args.n] if args.n is not None else [2, 4, 6, 8, 10]
    rows = []
    for n in ns:
        r = typicality.verify_lemma(n, seed=args.seed)
        rows.append([
            n, r.max_abs_error, r.positive, r.negative, r.expected_positive,
            r.expected_negative, r.row_sum, r.shift_max_error, r.holds,
        ])
    header = [
        "n", "max_abs_error", "positive", "negative", "expected_positive",
        "expected_negative", "row_sum", "shift_max_error", "holds",
    ]
    return header, rows, f"lemma holds for n={ns}: {all(r[-1] for r in rows)}"


# -- parser -----------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--theta", help="angle in radians (sweep: comma-separated list)")
    p.add_argument("--mask", help="big-endian bit string(s), comma-separated, or 'all'")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--mode")
    p.add_argument("--trace-fraction", help="fraction(s) like 1/4,7/8")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--workers", type=int, default=1)


COMMANDS = {
    "dqc1": {
        "negativity": cmd_dqc1_negativity,
        "scan": cmd_dqc1_scan,
        "witness": cmd_dqc1_witness,
        "trace": cmd_dqc1_trace,
    },
    "grover": {
        "sweep": cmd_grover_sweep,
        "decompose": cmd_grover_decompose,
        "speedup": cmd_grover_speedup,
    },
    "typicality": {
        "walk": cmd_walk,
        "graph": cmd_graph,
        "fixed-trace": cmd_fixed_trace,
        "lemma": cmd_lemma,
    },
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixedcorr", description=__doc__)
    groups = parser.add_subparsers(dest="group", required=True)
    for group, commands in COMMANDS.items():
        gp = groups.add_parser(group)
        sub = gp.add_subparsers(dest="command", required=True)
        for name, fn in commands.items():
            cp = sub.add_parser(name)
            _common(cp)
            if group == "dqc1":
                cp.add_argument("--input", help="unitary in the matrix file format")
                cp.add_argument("--method", choices=["svd-fast", "brute-eigen"], default="svd-fast")
                cp.add_argument("--cnot", action="append", help="witness dressing 'control,target' (0-based)")
            if name == "speedup":
                cp.add_argument("--L", type=int)
            cp.set_defaults(func=fn)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.seed = resolve_seed(args.seed)
        _require(args.workers >= 1, "--workers must be >= 1")
        header, rows, summary = args.func(args)
    except (ValueError, IndexError, ArithmeticError) as exc:
        print(f"mixedcorr: error: {exc}", file=sys.stderr)
        return 1
    text = render(header, rows, args.format)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"{args.group} {args.command}: {summary}", file=sys.stderr)
    return 0


def main() -> None:
    sys.exit(run())
