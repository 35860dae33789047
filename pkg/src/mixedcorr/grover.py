"""Grover search started from a depolarized state.

The search state is cos(theta)|x0> + sin(theta)|psi_perp>, where |psi_perp>
is the uniform superposition over the unmarked items, mixed with the
maximally mixed state at weight 1 - p.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .linalg import BipartitionMask, Spectrum

BRUTE_MAX_N = 6


@dataclass(frozen=True)
class GroverConfig:
    n: int
    x0: int = 0
    p: float = 1.0
    theta: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0 < self.p <= 1:
            raise ValueError(f"p must lie in (0, 1], got {self.p}")
        if not 0 <= self.theta <= math.pi / 2 + 1e-15:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")
        if not 0 <= self.x0 < 2**self.n:
            raise ValueError(f"x0={self.x0} out of range for n={self.n}")


def grover_vector(n: int, x0: int, theta: float) -> np.ndarray:
    """cos(theta)|x0> + sin(theta)|psi_perp> for any real theta."""
    dim = 2**n
    v = np.full(dim, math.sin(theta) / math.sqrt(dim - 1), dtype=complex)
    v[x0] = math.cos(theta)
    return v


def pure_grover_state(cfg: GroverConfig) -> np.ndarray:
    return grover_vector(cfg.n, cfg.x0, cfg.theta)


def mix_with_identity(v, p: float) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    dim = v.size
    return p * np.outer(v, v.conj()) + (1 - p) * np.eye(dim) / dim


def depolarized_state(cfg: GroverConfig) -> np.ndarray:
    """rho(theta) = p |Psi><Psi| + (1 - p) 1/2^n."""
    return mix_with_identity(pure_grover_state(cfg), cfg.p)


def uniform_theta(n: int) -> float:
    """The angle at which the search state equals |+>^n."""
    return math.acos(2 ** (-n / 2))


def step_angle(n: int) -> float:
    """Decrease of theta per Grover iteration."""
    return 2 * math.asin(2 ** (-n / 2))


def canonical_masks(n: int) -> list[BipartitionMask]:
    """One mask per bipartition of n qubits: qubit 1 always on the untransposed side."""
    return [y for y in linalg.all_masks(n) if y.bits[0] == 0]


@dataclass(frozen=True)
class SchmidtSplit:
    mask: BipartitionMask
    phi: float

    @property
    def coefficients(self) -> tuple[float, float]:
        return math.cos(self.phi) ** 2, math.sin(self.phi) ** 2


def schmidt_angle_of_vector(v, mask: BipartitionMask) -> SchmidtSplit:
    coeffs = linalg.schmidt_coefficients(v, mask).values
    if coeffs.size > 2 and coeffs[2] > 1e-10:
        raise ValueError("state has more than two Schmidt coefficients across this cut")
    phi = math.acos(min(1.0, math.sqrt(max(coeffs[0], 0.0))))
    return SchmidtSplit(mask, min(phi, math.pi / 4))


def schmidt_angle(cfg: GroverConfig, mask: BipartitionMask) -> SchmidtSplit:
    return schmidt_angle_of_vector(pure_grover_state(cfg), mask)


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError("the Schmidt-form spectrum needs n >= 2")


def analytic_pt_spectrum(phi: float, p: float, n: int) -> Spectrum:
    """Partially transposed spectrum of the two-term Schmidt form mixed with noise."""
    _check_n(n)
    a = (1 - p) / 2**n
    c2, s2 = math.cos(2 * phi), math.sin(2 * phi)
    values = np.concatenate(
        [
            np.full(2**n - 4, a),
            [p / 2 * (1 + c2) + a, p / 2 * (1 - c2) + a, a + p / 2 * s2, a - p / 2 * s2],
        ]
    )
    return Spectrum(values, "eigenvalues-hermitian")


def analytic_negativity(phi: float, p: float, n: int) -> float:
    """max(1, 1 + p sin 2phi - (1-p)/2^{n-1}); equals 1 once no PT eigenvalue is negative."""
    _check_n(n)
    return max(1.0, 1 + p * math.sin(2 * phi) - (1 - p) / 2 ** (n - 1))


def negativity_upper_bound(p: float, n: int) -> float:
    """1 + p - (1-p)/2^{n-1}, the phi = pi/4 value of the unclamped formula."""
    return 1 + p - (1 - p) / 2 ** (n - 1)


def brute_pt_spectrum(rho, mask: BipartitionMask) -> Spectrum:
    return linalg.hermitian_spectrum(linalg.partial_transpose(rho, mask))


def brute_negativity(rho, mask: BipartitionMask) -> float:
    return brute_pt_spectrum(rho, mask).abs_sum()


def schmidt_form_state(phi: float, p: float, n: int) -> np.ndarray:
    """p|v><v| + noise with v = cos(phi)|0...0> + sin(phi)|1...1>.

    Every cut of v has Schmidt coefficients cos^2 phi and sin^2 phi.
    """
    v = np.zeros(2**n, dtype=complex)
    v[0], v[-1] = math.cos(phi), math.sin(phi)
    return mix_with_identity(v, p)


@dataclass(frozen=True)
class ZeroDiscordReference:
    sigma: np.ndarray
    basis: np.ndarray  # product basis in which sigma is diagonal, as columns
    phi: float


def zero_discord_from_vector(rho, v, mask: BipartitionMask) -> ZeroDiscordReference:
    """Dephase rho in the product basis aligned with the Schmidt vectors of v."""
    A, s, B = linalg.schmidt_decomposition(v, mask)
    W = linalg.product_basis(A, B, mask)
    diag = np.real(np.einsum("ij,ik,kj->j", W.conj(), rho, W))
    sigma = (W * diag) @ W.conj().T
    sigma = (sigma + sigma.conj().T) / 2
    phi = schmidt_angle_of_vector(v, mask).phi
    return ZeroDiscordReference(sigma, W, phi)


def zero_discord_reference(cfg: GroverConfig, mask: BipartitionMask) -> ZeroDiscordReference:
    mask.require_nontrivial()
    return zero_discord_from_vector(depolarized_state(cfg), pure_grover_state(cfg), mask)


@dataclass(frozen=True)
class DiscordBoundReport:
    d: float
    bound: float
    phi: float
    p: float
    n: int


def discord_bound_value(d: float, n: int) -> float:
    """Continuity bound 8 d (n - 1) + 4 h(d) on the discord."""
    if d > 1 + 1e-12:
        raise ArithmeticError(f"trace distance {d} exceeds 1")
    d = min(max(d, 0.0), 1.0)
    return 8 * d * (n - 1) + 4 * linalg.binary_entropy(d)


def discord_bound(cfg: GroverConfig, mask: BipartitionMask) -> DiscordBoundReport:
    _check_n(cfg.n)
    phi = schmidt_angle(cfg, mask).phi
    d = cfg.p * math.sin(2 * phi)
    return DiscordBoundReport(d, discord_bound_value(d, cfg.n), phi, cfg.p, cfg.n)


@dataclass(frozen=True)
class SpeedupModel:
    p: float
    n: int
    L: int

    @property
    def p_tilde(self) -> float:
        return self.p + (1 - self.p) / 2**self.n

    @property
    def success(self) -> float:
        return 1 - (1 - self.p_tilde) ** self.L

    @property
    def advantage(self) -> bool:
        # Integer-exact form of 2^{n/2} L < 2^{n-1}: square both sides.
        return 2**self.n * self.L**2 < 2 ** (2 * self.n - 2)


def speedup_model(p: float, n: int, L: int) -> SpeedupModel:
    if L < 1:
        raise ValueError("L must be >= 1")
    if not 0 < p <= 1:
        raise ValueError(f"p must lie in (0, 1], got {p}")
    return SpeedupModel(p, n, L)


def min_repetitions(p: float, n: int, target: float = 2 / 3) -> int:
    """Smallest L with 1 - (1 - p_tilde)^L >= target."""
    p_tilde = speedup_model(p, n, 1).p_tilde
    if p_tilde >= 1:
        return 1
    L = max(1, math.ceil(math.log1p(-target) / math.log1p(-p_tilde)))
    while speedup_model(p, n, L).success < target:
        L += 1
    while L > 1 and speedup_model(p, n, L - 1).success >= target:
        L -= 1
    return L


def grover_iterate(v, x0: int) -> np.ndarray:
    """H P_0 H P_x0 applied to a state vector (rightmost first)."""
    v = linalg.as_state_vector(v)
    v = linalg.apply_phase_flip(v, x0)
    v = linalg.apply_global_hadamard(v)
    v = linalg.apply_phase_flip(v, 0)
    return linalg.apply_global_hadamard(v)


@dataclass(frozen=True)
class DecompositionStep:
    label: str
    M: float
    d: float


DECOMPOSITION_LABELS = ("initial", "P_x0", "H", "P_0", "H")


def decomposition_trace(cfg: GroverConfig, mask: BipartitionMask) -> list[DecompositionStep]:
    """Brute-force M and Tr|rho - sigma| after each elementary step of one iteration.

    The density matrix is evolved by conjugation; the pure component is
    tracked alongside to orient the zero-discord reference at every step.
    """
    if cfg.n > BRUTE_MAX_N:
        raise ValueError(f"decomposition trace limited to n <= {BRUTE_MAX_N}")
    mask.require_nontrivial()
    rho = depolarized_state(cfg)
    v = pure_grover_state(cfg)

    def snapshot(label):
        ref = zero_discord_from_vector(rho, v, mask)
        d = linalg.trace_distance_unhalved(rho, ref.sigma)
        return DecompositionStep(label, brute_negativity(rho, mask), d)

    ops = [
        lambda a: linalg.apply_phase_flip(a, cfg.x0),
        linalg.apply_global_hadamard,
        lambda a: linalg.apply_phase_flip(a, 0),
        linalg.apply_global_hadamard,
    ]
    steps = [snapshot(DECOMPOSITION_LABELS[0])]
    for label, op in zip(DECOMPOSITION_LABELS[1:], ops):
        rho, v = op(rho), op(v)
        steps.append(snapshot(label))
    return steps


@dataclass(frozen=True)
class SweepRow:
    n: int
    p: float
    theta: float
    mask: BipartitionMask
    phi: float
    M_analytic: float
    M_brute: float
    d: float
    discord_bound: float


def default_thetas(count: int = 8) -> np.ndarray:
    return np.linspace(0.0, math.pi / 2, count)


def sweep(n: int, p: float, thetas=None, masks=None, x0: int = 0) -> list[SweepRow]:
    """Analytic vs brute-force negativity and the discord pipeline over a grid."""
    if n > BRUTE_MAX_N:
        raise ValueError(f"sweep limited to n <= {BRUTE_MAX_N}")
    thetas = default_thetas() if thetas is None else thetas
    masks = canonical_masks(n) if masks is None else masks
    rows = []
    for theta in thetas:
        cfg = GroverConfig(n, x0, p, float(theta))
        rho = depolarized_state(cfg)
        for y in masks:
            ref = zero_discord_reference(cfg, y)
            report = discord_bound(cfg, y)
            rows.append(
                SweepRow(
                    n, p, float(theta), y, ref.phi,
                    analytic_negativity(ref.phi, p, n),
                    brute_negativity(rho, y),
                    linalg.trace_distance_unhalved(rho, ref.sigma),
                    report.bound,
                )
            )
    return rows
