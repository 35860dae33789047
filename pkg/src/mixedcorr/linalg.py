"""Dense linear algebra over qubit registers.

Qubit 1 is the most significant bit of a computational-basis index, so a
matrix reshaped to ``(2,) * 2n`` has row qubits on axes ``0..n-1`` and column
qubits on axes ``n..2n-1`` in the same order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10
NORM_TOL = 1e-12
MAX_QUBITS = 12


def num_qubits(dim: int) -> int:
    """Return k for dim == 2**k, raising on anything else."""
    dim = int(dim)
    if dim < 1 or dim & (dim - 1):
        raise ValueError(f"dimension {dim} is not a power of two")
    return dim.bit_length() - 1


def _square(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if num_qubits(M.shape[0]) > MAX_QUBITS:
        raise ValueError(f"dimension {M.shape[0]} exceeds 2^{MAX_QUBITS}")
    return M


def as_matrix(M) -> np.ndarray:
    """Validate a square complex matrix of power-of-two dimension."""
    return _square(M)


def is_hermitian(M, tol: float = HERMITIAN_TOL) -> bool:
    M = np.asarray(M)
    return bool(np.max(np.abs(M - M.conj().T), initial=0.0) <= tol)


def is_unitary(U, tol: float = UNITARY_TOL) -> bool:
    U = np.asarray(U)
    eye = np.eye(U.shape[0])
    return bool(np.max(np.abs(U @ U.conj().T - eye), initial=0.0) <= tol)


def as_hermitian(M, tol: float = HERMITIAN_TOL) -> np.ndarray:
    M = _square(M)
    if not is_hermitian(M, tol):
        raise ValueError("matrix is not Hermitian")
    return M


def as_unitary(U, tol: float = UNITARY_TOL) -> np.ndarray:
    U = _square(U)
    if not is_unitary(U, tol):
        raise ValueError("matrix is not unitary")
    return U


def as_density(rho, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, eigenvalues >= -tol."""
    rho = as_hermitian(rho, tol)
    if abs(np.trace(rho) - 1) > 1e-9:
        raise ValueError(f"density matrix has trace {np.trace(rho).real:.6g}")
    if np.linalg.eigvalsh(rho).min() < -1e-9:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def as_state_vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise ValueError("state vector must be one-dimensional")
    num_qubits(v.size)
    if abs(np.linalg.norm(v) - 1) > NORM_TOL:
        raise ValueError(f"state vector has norm {np.linalg.norm(v):.15g}")
    return v


@dataclass(frozen=True)
class BipartitionMask:
    """Bit mask y over n qubits; qubit 1 is the leftmost bit."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if not bits or any(b not in (0, 1) for b in bits):
            raise ValueError(f"invalid mask bits {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_string(cls, s: str) -> "BipartitionMask":
        s = s.strip()
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"mask must be a bit string, got {s!r}")
        return cls(tuple(int(c) for c in s))

    @classmethod
    def from_int(cls, value: int, n: int) -> "BipartitionMask":
        if not 0 <= value < 2**n:
            raise ValueError(f"mask value {value} out of range for n={n}")
        return cls(tuple((value >> (n - 1 - i)) & 1 for i in range(n)))

    @classmethod
    def alternating(cls, n: int) -> "BipartitionMask":
        """The 0101...01 pattern: every second qubit, starting with qubit 2."""
        return cls(tuple(i % 2 for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def w(self) -> int:
        return sum(self.bits)

    @property
    def value(self) -> int:
        return int(str(self), 2)

    @property
    def is_trivial(self) -> bool:
        return self.w == 0

    def require_nontrivial(self) -> "BipartitionMask":
        if self.is_trivial:
            raise ValueError("the all-zero mask is not a bipartition")
        return self

    def complement(self) -> "BipartitionMask":
        return BipartitionMask(tuple(1 - b for b in self.bits))

    def with_prefix(self, bits: Sequence[int]) -> "BipartitionMask":
        return BipartitionMask(tuple(bits) + self.bits)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def all_masks(n: int) -> list[BipartitionMask]:
    """Every nonzero mask over n qubits, in increasing integer order."""
    return [BipartitionMask.from_int(v, n) for v in range(1, 2**n)]


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray
    kind: str  # "eigenvalues-hermitian" | "singular-values"

    def __post_init__(self):
        values = np.sort(np.asarray(self.values, dtype=float))[::-1]
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.values.size

    def __iter__(self):
        return iter(self.values)

    def abs_sum(self) -> float:
        return float(np.abs(self.values).sum())


def spectra_match(a, b, atol: float = 1e-9) -> bool:
    """Compare two spectra as sorted multisets."""
    a = np.sort(np.asarray(getattr(a, "values", a), dtype=float))
    b = np.sort(np.asarray(getattr(b, "values", b), dtype=float))
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= atol))


def partial_transpose(M, mask: BipartitionMask) -> np.ndarray:
    """Transpose the tensor factors of M selected by ``mask``."""
    M = _square(M)
    n = num_qubits(M.shape[0])
    if mask.n != n:
        raise ValueError(f"mask has {mask.n} qubits, matrix has {n}")
    axes = list(range(2 * n))
    for i, bit in enumerate(mask.bits):
        if bit:
            axes[i], axes[n + i] = axes[n + i], axes[i]
    return M.reshape((2,) * (2 * n)).transpose(axes).reshape(M.shape)


def hermitian_spectrum(M) -> Spectrum:
    M = as_hermitian(M)
    return Spectrum(np.linalg.eigvalsh(M), "eigenvalues-hermitian")


def singular_values(M) -> Spectrum:
    M = _square(M)
    return Spectrum(np.linalg.svd(M, compute_uv=False), "singular-values")


def _split_amplitudes(v: np.ndarray, mask: BipartitionMask) -> np.ndarray:
    """Reshape a state into a (2^w, 2^(n-w)) amplitude matrix, y qubits first."""
    n = mask.n
    inside = [i for i, b in enumerate(mask.bits) if b]
    outside = [i for i, b in enumerate(mask.bits) if not b]
    T = v.reshape((2,) * n).transpose(inside + outside)
    return T.reshape(2 ** len(inside), 2 ** len(outside))


def schmidt_decomposition(v, mask: BipartitionMask):
    """Full SVD of the amplitude matrix across ``mask``.

    Returns ``(A, s, B)`` with ``v = sum_k s[k] A[:, k] (x) B[:, k]`` where the
    tensor product is taken in the y-first qubit order. ``A`` and ``B`` are
    complete orthonormal bases of the two sides.
    """
    v = as_state_vector(v)
    mask.require_nontrivial()
    if mask.n != num_qubits(v.size):
        raise ValueError("mask size does not match state")
    C = _split_amplitudes(v, mask)
    A, s, Bh = np.linalg.svd(C, full_matrices=True)
    return A, s, Bh.T


def schmidt_coefficients(v, mask: BipartitionMask) -> Spectrum:
    """Squared Schmidt coefficients: the spectrum of the reduced state on y."""
    _, s, _ = schmidt_decomposition(v, mask)
    return Spectrum(s**2, "eigenvalues-hermitian")


def product_basis(A: np.ndarray, B: np.ndarray, mask: BipartitionMask) -> np.ndarray:
    """Columns are A[:, i] (x) B[:, j] mapped back to natural qubit order."""
    n = mask.n
    inside = [i for i, b in enumerate(mask.bits) if b]
    outside = [i for i, b in enumerate(mask.bits) if not b]
    W = np.kron(A, B)  # rows indexed in y-first order
    perm = np.argsort(inside + outside)
    return W.reshape((2,) * n + (W.shape[1],)).transpose(list(perm) + [n]).reshape(W.shape)


def trace_distance_unhalved(A, B) -> float:
    """Tr|A - B| with no factor of one half."""
    A, B = as_hermitian(A), as_hermitian(B)
    if A.shape != B.shape:
        raise ValueError("shape mismatch")
    return float(np.abs(np.linalg.eigvalsh(A - B)).sum())


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary entropy needs 0 <= x <= 1, got {x}")
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


def apply_phase_flip(a, x: int) -> np.ndarray:
    """Apply P_x = 1 - 2|x><x| to a vector, or conjugate a matrix by it."""
    a = np.array(a, dtype=complex)
    dim = a.shape[0]
    if not 0 <= x < dim:
        raise IndexError(f"basis index {x} out of range for dim {dim}")
    if a.ndim == 1:
        a[x] = -a[x]
    else:
        a[x, :] = -a[x, :]
        a[:, x] = -a[:, x]
    return a


def fwht(a, axis: int = 0) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform along ``axis`` (butterfly form)."""
    a = np.array(a, dtype=complex if np.iscomplexobj(a) else float)
    a = np.moveaxis(a, axis, 0)
    dim = a.shape[0]
    n = num_qubits(dim)
    rest = a.shape[1:]
    for k in range(n):
        blocks = a.reshape((2**k, 2, dim >> (k + 1)) + rest)
        lo, hi = blocks[:, 0].copy(), blocks[:, 1].copy()
        blocks[:, 0] = lo + hi
        blocks[:, 1] = lo - hi
    return np.moveaxis(a, 0, axis)


def apply_global_hadamard(a) -> np.ndarray:
    """H^{(x)n} applied to a vector, or by conjugation to a matrix."""
    a = np.asarray(a, dtype=complex)
    scale = 1 / np.sqrt(a.shape[0])
    if a.ndim == 1:
        return fwht(a) * scale
    return fwht(fwht(a, axis=0), axis=1) * scale**2


def embed_gate(gate, qubits: Sequence[int], n: int) -> np.ndarray:
    """Lift a k-qubit gate acting on ``qubits`` (0-based, MSB first) to n qubits."""
    gate = _square(gate)
    k = num_qubits(gate.shape[0])
    qubits = list(qubits)
    if len(qubits) != k or len(set(qubits)) != k or not all(0 <= q < n for q in qubits):
        raise ValueError(f"invalid qubit placement {qubits} for a {k}-qubit gate on {n} qubits")
    rest = [q for q in range(n) if q not in qubits]
    full = np.kron(gate, np.eye(2 ** len(rest)))
    order = qubits + rest
    perm = list(np.argsort(order))
    T = full.reshape((2,) * (2 * n))
    T = T.transpose(perm + [n + p for p in perm])
    return T.reshape(2**n, 2**n)


CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
