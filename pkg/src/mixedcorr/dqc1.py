"""One-clean-qubit states, their partial-transpose negativity, and trace estimation.

The clean qubit is the most significant bit of the (n+1)-qubit register and
is never part of a transpose mask.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .linalg import BipartitionMask, Spectrum
from .seeding import item_rng, map_items

D_THRESHOLD = 1e-12
NEGATIVITY_CAP = 1.25

# Swaps |00> and |11>; its transpose over qubit 2 has singular values {2, 0, 0, 0}.
WITNESS_BASE = np.array(
    [[0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0]], dtype=complex
)


@dataclass(frozen=True)
class Dqc1State:
    U: np.ndarray
    rho: np.ndarray

    @property
    def n(self) -> int:
        return linalg.num_qubits(self.U.shape[0])


@dataclass(frozen=True)
class NegativityReport:
    mask: BipartitionMask
    spectrum: Spectrum
    m_value: float
    method: str  # "svd-fast" | "brute-eigen"


def build_dqc1_state(U) -> Dqc1State:
    """Output of the trace-estimation circuit: (1/2^{n+1}) [[1, U^dag], [U, 1]]."""
    U = linalg.as_unitary(U)
    dim = U.shape[0]
    eye = np.eye(dim)
    rho = np.block([[eye, U.conj().T], [U, eye]]) / (2 * dim)
    return Dqc1State(U=U, rho=rho)


def _check_mask(U: np.ndarray, mask: BipartitionMask) -> None:
    if mask.n != linalg.num_qubits(U.shape[0]):
        raise ValueError(f"mask {mask} does not match a {U.shape[0]}-dimensional unitary")
    mask.require_nontrivial()


def negativity_from_singular_values(d, n: int) -> float:
    d = np.asarray(d, dtype=float)
    excess = d[d > 1 + D_THRESHOLD] - 1
    return float(1 + excess.sum() / 2**n)


def negativity_svd(U, mask: BipartitionMask) -> NegativityReport:
    """M_y from the singular values d_i of U_y; rho_y has spectrum (1 +- d_i)/2^{n+1}."""
    U = linalg.as_unitary(U)
    _check_mask(U, mask)
    n = mask.n
    d = linalg.singular_values(linalg.partial_transpose(U, mask)).values
    spectrum = Spectrum(np.concatenate([(1 + d), (1 - d)]) / 2 ** (n + 1), "eigenvalues-hermitian")
    return NegativityReport(mask, spectrum, negativity_from_singular_values(d, n), "svd-fast")


BRUTE_MAX_N = 8


def negativity_brute(state: Dqc1State, mask: BipartitionMask) -> NegativityReport:
    """Sum of |eigenvalues| of the fully built, partially transposed rho."""
    if state.n > BRUTE_MAX_N:
        raise ValueError(f"brute-force negativity limited to n <= {BRUTE_MAX_N}")
    _check_mask(state.U, mask)
    rho_y = linalg.partial_transpose(state.rho, mask.with_prefix([0]))
    spectrum = linalg.hermitian_spectrum(rho_y)
    return NegativityReport(mask, spectrum, spectrum.abs_sum(), "brute-eigen")


@dataclass(frozen=True)
class WitnessSpec:
    n: int
    pair: tuple[int, int] = (0, 1)
    cnots: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("witness needs n >= 2")


def build_witness(spec: WitnessSpec) -> np.ndarray:
    """Base permutation on ``spec.pair``, identity elsewhere, conjugated by CNOTs.

    Each entry of ``spec.cnots`` is a (control, target) pair of 0-based qubit
    indices.
    """
    U = linalg.embed_gate(WITNESS_BASE, spec.pair, spec.n)
    for control, target in spec.cnots:
        C = linalg.embed_gate(linalg.CNOT, (control, target), spec.n)
        U = C @ U @ C.conj().T
    return U


def cnots_respect(mask: BipartitionMask, cnots: Sequence[tuple[int, int]]) -> bool:
    """True when every CNOT acts within one side of the cut."""
    return all(mask.bits[c] == mask.bits[t] for c, t in cnots)


@dataclass(frozen=True)
class ScanResult:
    reports: list[NegativityReport]

    @property
    def max_m(self) -> float:
        return max(r.m_value for r in self.reports)

    def argmax(self, atol: float = 1e-9) -> list[BipartitionMask]:
        top = self.max_m
        return [r.mask for r in self.reports if r.m_value >= top - atol]


SCAN_LIMITS = {"svd-fast": 10, "brute-eigen": BRUTE_MAX_N}


def scan_all_masks(U, method: str = "svd-fast") -> ScanResult:
    U = linalg.as_unitary(U)
    n = linalg.num_qubits(U.shape[0])
    if method not in SCAN_LIMITS:
        raise ValueError(f"unknown method {method!r}")
    if n > SCAN_LIMITS[method]:
        raise ValueError(f"{method} scan limited to n <= {SCAN_LIMITS[method]}")
    if method == "svd-fast":
        reports = [negativity_svd(U, y) for y in linalg.all_masks(n)]
    else:
        state = build_dqc1_state(U)
        reports = [negativity_brute(state, y) for y in linalg.all_masks(n)]
    return ScanResult(reports)


def haar_random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix with phase correction."""
    if not 0 <= n <= 10:
        raise ValueError("haar_random_unitary supports n <= 10")
    dim = 2**n
    Z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    phases = np.diag(R) / np.abs(np.diag(R))
    return Q * phases


@dataclass(frozen=True)
class HaarScanItem:
    max_m: float
    max_sum_d2_error: float


def haar_scan(n: int, samples: int, seed: int, workers: int = 1) -> list[HaarScanItem]:
    """Max M over every mask for ``samples`` Haar unitaries, one stream per sample.

    Also records the worst relative deviation of sum d_i^2 from 2^n.
    """

    def one(i: int) -> HaarScanItem:
        U = haar_random_unitary(n, item_rng(seed, i))
        best, err = 1.0, 0.0
        for y in linalg.all_masks(n):
            d = linalg.singular_values(linalg.partial_transpose(U, y)).values
            best = max(best, negativity_from_singular_values(d, n))
            err = max(err, abs((d**2).sum() - 2**n) / 2**n)
        return HaarScanItem(best, err)

    return map_items(one, samples, workers)


@dataclass(frozen=True)
class TraceEstimate:
    shots: int | None
    re_est: float
    im_est: float
    p_plus: float
    p_plus_i: float

    @property
    def re_exact(self) -> float:
        return 2 * self.p_plus - 1

    @property
    def im_exact(self) -> float:
        return 2 * self.p_plus_i - 1


def clean_qubit_probabilities(U) -> tuple[float, float]:
    """Probabilities of finding the clean qubit in |+> and in (|0> + i|1>)/sqrt 2."""
    state = build_dqc1_state(U)
    dim = state.U.shape[0]
    reduced = np.einsum("aibi->ab", state.rho.reshape(2, dim, 2, dim))
    plus = np.array([1, 1]) / np.sqrt(2)
    plus_i = np.array([1, 1j]) / np.sqrt(2)
    p_plus = float(np.real(plus.conj() @ reduced @ plus))
    p_plus_i = float(np.real(plus_i.conj() @ reduced @ plus_i))
    return p_plus, p_plus_i


def estimate_trace(U, shots: int | None, rng: np.random.Generator | None = None) -> TraceEstimate:
    """Estimate Re and Im of Tr(U)/2^n from clean-qubit measurements.

    ``shots=None`` returns the exact values; otherwise each basis is measured
    ``shots`` times and the observed frequencies are inverted.
    """
    p_plus, p_plus_i = clean_qubit_probabilities(U)
    if shots is None:
        return TraceEstimate(None, 2 * p_plus - 1, 2 * p_plus_i - 1, p_plus, p_plus_i)
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if rng is None:
        raise ValueError("sampling mode needs an rng")
    k_re = rng.binomial(shots, p_plus)
    k_im = rng.binomial(shots, p_plus_i)
    return TraceEstimate(shots, 2 * k_re / shots - 1, 2 * k_im / shots - 1, p_plus, p_plus_i)
