"""Typical negativity of graph-diagonal random unitaries.

A graph-diagonal unitary is C H^n diag(e^{i theta}) H^n C, with C the chain of
controlled-Z gates on neighbouring qubits. Transposing it over the
alternating mask 0101... gives an operator whose eigenvalues are the entries
of R|Theta>, with R = H^n S H^n and S the diagonal of signs
(-1)^{sum_i x_i x_{i+1}}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .seeding import item_rng, map_items, mean_and_stderr

MODELS = ("binary", "uniform")
MAX_N = 12
LAMBDA_TOL = 1e-12


# -- complementary error function -------------------------------------------

def _erf_series(x: float) -> float:
    term, total, k = x, x, 0
    while abs(term) > 1e-17 * abs(total):
        k += 1
        term *= -x * x / k
        total += term / (2 * k + 1)
    return 2 / math.sqrt(math.pi) * total


def _erfc_continued_fraction(x: float) -> float:
    # erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
    # evaluated with the modified Lentz method.
    tiny = 1e-300
    f = x
    C, D = x, 0.0
    for k in range(1, 500):
        a = k / 2
        D = x + a * D
        D = 1 / (D if D != 0 else tiny)
        C = x + a / C
        if C == 0:
            C = tiny
        delta = C * D
        f *= delta
        if abs(delta - 1) < 1e-16:
            break
    return math.exp(-x * x) / math.sqrt(math.pi) / f


def erfc(x: float) -> float:
    if x < 0:
        return 2 - erfc(-x)
    if x < 2.5:
        return 1 - _erf_series(x)
    return _erfc_continued_fraction(x)


def closed_form_E(model: str) -> float:
    """Large-n mean of max(|walk| / 2^{n/2} - 1, 0)."""
    if model in ("1d", "binary"):
        return math.sqrt(2 / (math.pi * math.e)) - erfc(1 / math.sqrt(2))
    if model in ("2d", "uniform"):
        return math.sqrt(math.pi) / 2 * erfc(1.0)
    raise ValueError(f"unknown model {model!r}")


# -- R transform ------------------------------------------------------------

def chain_signs(n: int) -> np.ndarray:
    """(-1)^{sum_{i=1}^{n-1} x_i x_{i+1}} for every basis index x."""
    x = np.arange(2**n)
    bits = (x[:, None] >> np.arange(n - 1, -1, -1)) & 1
    parity = (bits[:, :-1] & bits[:, 1:]).sum(axis=1) & 1
    return 1 - 2 * parity


def r_transform(phases) -> np.ndarray:
    """R applied to the vector of e^{i theta_x}."""
    phases = np.asarray(phases, dtype=float)
    n = linalg.num_qubits(phases.size)
    z = np.exp(1j * phases)
    z[phases == np.pi] = -1.0
    return apply_r(z, n)


def apply_r(v, n: int) -> np.ndarray:
    v = np.asarray(v)
    if v.size != 2**n:
        raise ValueError(f"vector length {v.size} does not match n={n}")
    # Unnormalized transforms keep binary-phase inputs in exact integer arithmetic.
    w = linalg.fwht(v) * chain_signs(n)
    return linalg.fwht(w) / 2**n


def negativity_from_eigenvector(lambdas) -> float:
    """1 + 2^{-n} sum over |lambda| > 1 of (|lambda| - 1)."""
    mod = np.abs(np.asarray(lambdas))
    excess = mod[mod > 1 + LAMBDA_TOL] - 1
    return float(1 + excess.sum() / mod.size)


def graph_unitary(phases) -> np.ndarray:
    """Explicit C H^n diag(e^{i theta}) H^n C, built densely."""
    phases = np.asarray(phases, dtype=float)
    n = linalg.num_qubits(phases.size)
    D = np.diag(np.exp(1j * phases))
    U = linalg.apply_global_hadamard(D)
    signs = chain_signs(n)
    return signs[:, None] * U * signs[None, :]


@dataclass(frozen=True)
class LemmaReport:
    n: int
    first_row: np.ndarray
    max_abs_error: float
    positive: int
    negative: int
    row_sum: float
    shift_checks: int
    shift_max_error: float

    @property
    def expected_positive(self) -> int:
        return (2**self.n + 2 ** (self.n // 2)) // 2

    @property
    def expected_negative(self) -> int:
        return (2**self.n - 2 ** (self.n // 2)) // 2

    @property
    def holds(self) -> bool:
        return (
            self.max_abs_error <= 1e-12
            and self.positive == self.expected_positive
            and self.negative == self.expected_negative
            and abs(self.row_sum - 1) <= 1e-10
            and self.shift_max_error <= 1e-12
        )


def verify_lemma(n: int, shift_pairs: int = 100, seed: int = 0) -> LemmaReport:
    """Check |R_z| = 2^{-n/2}, the sign counts, and <y|R|z> = R_{z xor y}."""
    if n % 2 or not 2 <= n <= MAX_N:
        raise ValueError(f"the lemma needs even 2 <= n <= {MAX_N}, got {n}")
    dim = 2**n
    e0 = np.zeros(dim)
    e0[0] = 1.0
    row = np.real(apply_r(e0, n))  # R is real symmetric, so R e_0 is the first row
    err = float(np.max(np.abs(np.abs(row) - 2 ** (-n / 2))))
    rng = np.random.default_rng(seed)
    shift_err = 0.0
    for _ in range(shift_pairs):
        y, z = (int(t) for t in rng.integers(0, dim, size=2))
        ez = np.zeros(dim)
        ez[z] = 1.0
        column = np.real(apply_r(ez, n))
        shift_err = max(shift_err, abs(column[y] - row[z ^ y]))
    return LemmaReport(
        n, row, err, int((row > 0).sum()), int((row < 0).sum()),
        float(row.sum()), shift_pairs, shift_err,
    )


# -- random walks -----------------------------------------------------------

def draw_phases(n: int, model: str, rng) -> np.ndarray:
    if model == "binary":
        return np.pi * rng.integers(0, 2, size=2**n)
    if model == "uniform":
        return rng.uniform(0.0, 2 * np.pi, size=2**n)
    raise ValueError(f"unknown phase model {model!r}")


def walk_statistic(n: int, model: str, rng) -> float:
    """|sum_x e^{i theta_x}| / 2^{n/2} for freshly drawn phases."""
    if n < 1:
        raise ValueError("n must be >= 1")
    phases = draw_phases(n, model, rng)
    if model == "binary":
        return abs(float(np.cos(phases).sum())) / 2 ** (n / 2)
    return float(abs(np.exp(1j * phases).sum())) / 2 ** (n / 2)


MODE_TO_MODEL = {"1d": "binary", "2d": "uniform"}


@dataclass(frozen=True)
class WalkEstimate:
    mode: str
    n: int
    samples: int
    e_hat: float
    std_err: float
    e_closed: float


def estimate_E(n: int, mode: str, samples: int, seed: int, workers: int = 1) -> WalkEstimate:
    if samples < 100:
        raise ValueError("estimate_E needs at least 100 samples")
    if mode not in MODE_TO_MODEL:
        raise ValueError(f"mode must be one of {sorted(MODE_TO_MODEL)}")
    model = MODE_TO_MODEL[mode]
    excess = map_items(
        lambda i: max(walk_statistic(n, model, item_rng(seed, i)) - 1, 0.0), samples, workers
    )
    e_hat, se = mean_and_stderr(excess)
    return WalkEstimate(mode, n, samples, e_hat, se, closed_form_E(mode))


@dataclass(frozen=True)
class TypicalitySummary:
    n: int
    model: str
    samples: int
    mean_M: float
    std_err: float
    std_dev: float
    prediction: float

    @property
    def discrepancy(self) -> float:
        return self.mean_M - self.prediction


def _check_graph_n(n: int) -> None:
    if n % 2 or not 2 <= n <= MAX_N:
        raise ValueError(f"graph ensembles need even 2 <= n <= {MAX_N}, got {n}")


def typicality_mc(n: int, model: str, samples: int, seed: int, workers: int = 1) -> TypicalitySummary:
    """Mean M over random phase vectors, against the independence prediction 1 + E."""
    _check_graph_n(n)
    values = map_items(
        lambda i: negativity_from_eigenvector(r_transform(draw_phases(n, model, item_rng(seed, i)))),
        samples,
        workers,
    )
    mean, se = mean_and_stderr(values)
    sd = float(np.std(values, ddof=1)) if samples > 1 else 0.0
    return TypicalitySummary(n, model, samples, mean, se, sd, 1 + closed_form_E(model))


@dataclass(frozen=True)
class FixedTraceSpec:
    n: int
    trace_fraction: Fraction
    samples: int

    def __post_init__(self):
        f = Fraction(self.trace_fraction)
        object.__setattr__(self, "trace_fraction", f)
        _check_graph_n(self.n)
        if not -1 <= f <= 1:
            raise ValueError(f"trace fraction {f} outside [-1, 1]")
        if ((1 + f) * 2 ** (self.n - 1)).denominator != 1:
            raise ValueError(f"(1 + {f}) 2^{self.n - 1} is not an integer count of +1 eigenvalues")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")

    @property
    def plus_count(self) -> int:
        return int((1 + self.trace_fraction) * 2 ** (self.n - 1))


@dataclass(frozen=True)
class FixedTraceSummary:
    n: int
    f: Fraction
    samples: int
    mean_M: float
    std_err: float
    max_M: float


def fixed_trace_phases(spec: FixedTraceSpec, rng) -> np.ndarray:
    """Phases 0 (count fixed by the trace) and pi, in uniformly random positions."""
    phases = np.full(2**spec.n, np.pi)
    phases[rng.permutation(2**spec.n)[: spec.plus_count]] = 0.0
    return phases


def fixed_trace_mc(spec: FixedTraceSpec, seed: int, workers: int = 1) -> FixedTraceSummary:
    values = map_items(
        lambda i: negativity_from_eigenvector(r_transform(fixed_trace_phases(spec, item_rng(seed, i)))),
        spec.samples,
        workers,
    )
    mean, se = mean_and_stderr(values)
    return FixedTraceSummary(spec.n, spec.trace_fraction, spec.samples, mean, se, max(values))
