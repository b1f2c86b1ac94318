# ===========================================================================================================
#                                         Stochastic.py
# ===========================================================================================================
# Bistochastic matrices, the unistochastic matrix b(u) of a unitary, and their entropies
#   H(b)   = (1/n) Σ_i Σ_j η(b(i,j))
#   H_λ(b) = Σ_k λ_k Σ_j η(b(j,k))

from dataclasses import dataclass

import numpy as np

from Backend.Config import BISTOCHASTIC_TOL, SUM_TOL, UNITARY_TOL
from Backend.Errors import DimensionError, NotBistochasticError
from Backend.Functionals import eta_clipped
from Backend.MatrixCore import as_unitary, frozen

# Entries this far below zero are floating-point noise from squaring
_NEGATIVE_NOISE = 1e-12

# -------------------------------------------------------------------------------------------------------
#                                         Types
# -------------------------------------------------------------------------------------------------------

@dataclass(frozen=True)
class BistochasticMatrix:
    """Nonnegative real n×n matrix with unit row and column sums."""
    entries: np.ndarray

    def __post_init__(self):
        b = np.array(self.entries, dtype=np.float64)
        if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape[0] < 1:
            raise NotBistochasticError(f"expected a square matrix, got shape {b.shape}")
        if np.any(b < -_NEGATIVE_NOISE):
            raise NotBistochasticError("bistochastic matrices have nonnegative entries")
        b = np.clip(b, 0.0, None)

        row_error = np.max(np.abs(b.sum(axis=1) - 1.0))
        column_error = np.max(np.abs(b.sum(axis=0) - 1.0))
        if max(row_error, column_error) > BISTOCHASTIC_TOL:
            raise NotBistochasticError(
                f"row/column sums deviate from 1 by {max(row_error, column_error):.3e}"
            )
        object.__setattr__(self, "entries", frozen(b))

    @property
    def n(self):
        return self.entries.shape[0]


def as_probability_vector(values, n=None):
    """Validates a probability vector: entries ≥ 0 summing to 1 within SUM_TOL."""
    lam = np.array(values, dtype=np.float64)
    if lam.ndim != 1 or (n is not None and lam.shape[0] != n):
        raise DimensionError(f"expected a probability vector of length {n}, got shape {lam.shape}")
    if np.any(lam < 0) or abs(lam.sum() - 1.0) > SUM_TOL:
        raise ValueError("probability vector must be nonnegative and sum to 1")
    return frozen(lam)

# -------------------------------------------------------------------------------------------------------
#                                         Constructors
# -------------------------------------------------------------------------------------------------------

def unistochastic(u):
    """b(u) with b(i,j) = |u(i,j)|². Bistochastic because u is unitary."""
    u = as_unitary(u, UNITARY_TOL)
    return BistochasticMatrix(np.abs(u) ** 2)


def flat_matrix(n):
    """The van der Waerden matrix, every entry 1/n."""
    return BistochasticMatrix(np.full((n, n), 1.0 / n))


def transpose(b):
    """b* of a real bistochastic matrix is its transpose."""
    return BistochasticMatrix(b.entries.T)

# -------------------------------------------------------------------------------------------------------
#                                         Entropies
# -------------------------------------------------------------------------------------------------------

def row_entropies(b):
    """Σ_j η(b(i,j)) for each row i."""
    return eta_clipped(b.entries).sum(axis=1)


def entropy(b):
    """H(b), in [0, ln n]."""
    return float(eta_clipped(b.entries).sum() / b.n)


def weighted_entropy(b, lam):
    """
    H_λ(b) = Σ_k λ_k Σ_j η(b(j,k)), a λ-weighted sum of column entropies.

    Args:
        b (BistochasticMatrix): The matrix.
        lam (array-like): Probability vector of length n.
    """
    lam = as_probability_vector(lam, b.n)
    column_entropies = eta_clipped(b.entries).sum(axis=0)
    return float(np.dot(lam, column_entropies))
