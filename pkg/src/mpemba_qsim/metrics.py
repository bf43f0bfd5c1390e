"""Distance measures between quantum states.

Production code always takes the Hermitian-eigenvalue route for the trace
distance; pure-state shortcuts exist only as independent oracles in the tests.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError
from .linalg import eig_hermitian
from .states import BlochVector

# Eigenvalues below this are round-off of "equal states" and clamped to 0 so
# trace_distance(rho, rho) is exactly 0.
EIGENVALUE_CLIP = 1e-13


def _check_same_dims(rho: np.ndarray, sigma: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.shape != sigma.shape:
        raise DimensionError(f"state dims differ: {rho.shape} vs {sigma.shape}")
    return rho, sigma


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """(1/2) sum |eigenvalues of rho - sigma|; in [0, 1] for valid states."""
    rho, sigma = _check_same_dims(rho, sigma)
    w, _ = eig_hermitian(rho - sigma)
    w = np.where(np.abs(w) < EIGENVALUE_CLIP, 0.0, w)
    return float(0.5 * np.sum(np.abs(w)))


def hs_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Hilbert-Schmidt (Frobenius) distance sqrt(tr[(rho - sigma)^2])."""
    rho, sigma = _check_same_dims(rho, sigma)
    return float(np.linalg.norm(rho - sigma))


def bloch_distance(a1: BlochVector, a2: BlochVector) -> float:
    """Half the Euclidean distance between two Bloch vectors.

    Equals the trace distance of the corresponding qubit states.
    """
    return float(0.5 * np.linalg.norm(a1.as_array() - a2.as_array()))
