import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def pt_by_index(M, bits):
    """Partial transpose by explicit index swapping, qubit 1 = MSB."""
    M = np.asarray(M)
    dim = M.shape[0]
    n = len(bits)
    sel = sum(1 << (n - 1 - i) for i, b in enumerate(bits) if b)
    out = np.empty_like(M)
    for r, c in itertools.product(range(dim), repeat=2):
        r2 = (r & ~sel) | (c & sel)
        c2 = (c & ~sel) | (r & sel)
        out[r, c] = M[r2, c2]
    return out


def kron_hadamard(n):
    H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    out = np.ones((1, 1))
    for _ in range(n):
        out = np.kron(out, H)
    return out


def random_matrix(rng, dim):
    return rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))


def random_hermitian(rng, dim):
    A = random_matrix(rng, dim)
    return A + A.conj().T


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
