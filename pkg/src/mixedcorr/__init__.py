"""Quantum-correlation measures for one-clean-qubit computation and depolarized Grover search."""

from .linalg import BipartitionMask, Spectrum

__all__ = ["BipartitionMask", "Spectrum"]
__version__ = "0.1.0"
