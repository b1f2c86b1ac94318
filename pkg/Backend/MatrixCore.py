# ===========================================================================================================
#                                         MatrixCore.py
# ===========================================================================================================
# Dense complex matrix plumbing shared by every other module.
#
# Key Features:
# - Validation: square, finite, Hermitian and unitary checks with configurable tolerances.
# - Spectral Decomposition: Hermitian eigendecomposition with eigenvalues sorted high to low.
# - Generators: Fourier, seeded random (Ginibre + QR) and permutation unitaries.
#
# Matrices are plain numpy complex128 arrays. Everything returned from here is read-only,
# so values can be shared between threads without copying.

import numpy as np
import numpy.typing as npt
from scipy import linalg

from Backend.Config import HERMITIAN_TOL, UNITARY_TOL
from Backend.Errors import (
    DimensionError,
    NotFiniteError,
    NotHermitianError,
    NotSquareError,
    NotUnitaryError,
)

ComplexMatrix = npt.NDArray[np.complex128]
RealVector = npt.NDArray[np.float64]

# Off-diagonal mass below this is treated as an exactly diagonal input by the eigensolver
_DIAGONAL_ROUNDOFF = 1e-14

# -------------------------------------------------------------------------------------------------------
#                                         Helper Functions
# -------------------------------------------------------------------------------------------------------

def frozen(array):
    """Marks an array read-only and returns it."""
    array.flags.writeable = False
    return array


def max_abs(x):
    """Max-entry norm ‖x‖_max."""
    x = np.asarray(x)
    return float(np.max(np.abs(x))) if x.size else 0.0


def dagger(x):
    return np.conj(np.asarray(x)).T


def as_complex_matrix(x):
    """
    Converts input to a read-only square complex matrix.

    Args:
        x (array-like): Nested lists or an ndarray.

    Returns:
        ComplexMatrix: A complex128 copy of x.

    Raises:
        NotSquareError: If x is not a non-empty square 2-d array.
        NotFiniteError: If any component is NaN or infinite.
    """
    m = np.array(x, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise NotSquareError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NotFiniteError("matrix has NaN or infinite entries")
    return frozen(m)


def is_hermitian(h, tol=HERMITIAN_TOL):
    h = np.asarray(h)
    return max_abs(h - dagger(h)) <= tol


def is_unitary(m, tol=UNITARY_TOL):
    """
    True iff ‖m·m* − 1‖_max ≤ tol.

    Raises:
        NotSquareError: For non-square input.
    """
    m = as_complex_matrix(m)
    n = m.shape[0]
    return max_abs(m @ dagger(m) - np.eye(n)) <= tol


def as_unitary(u, tol=UNITARY_TOL):
    """Validates u as a unitary matrix and returns it as a read-only array."""
    u = as_complex_matrix(u)
    if not is_unitary(u, tol):
        deviation = max_abs(u @ dagger(u) - np.eye(u.shape[0]))
        raise NotUnitaryError(f"matrix is not unitary: ‖u·u* − 1‖_max = {deviation:.3e} > {tol:.1e}")
    return u

# -------------------------------------------------------------------------------------------------------
#                                         Spectral Decomposition
# -------------------------------------------------------------------------------------------------------

def hermitian_eigendecomposition(h, tol=HERMITIAN_TOL):
    """
    Diagonalizes a Hermitian matrix as h = v · diag(eigenvalues) · v*.

    Eigenvalues come back sorted non-increasing (λ_1 ≥ λ_2 ≥ ... ≥ λ_n).
    A matrix that is already diagonal keeps the standard basis: its diagonal is sorted
    with a stable descending sort and v is the matching permutation unitary.
    Otherwise ties follow scipy's output order, which is deterministic.

    Args:
        h (array-like): Hermitian matrix.
        tol (float): Hermiticity tolerance (max-entry).

    Returns:
        tuple[RealVector, ComplexMatrix]: (eigenvalues, v).
    """
    h = as_complex_matrix(h)
    if not is_hermitian(h, tol):
        raise NotHermitianError(f"matrix is not Hermitian within {tol:.1e}")

    h = (h + dagger(h)) / 2
    off_diagonal = h - np.diag(np.diag(h))

    if max_abs(off_diagonal) <= _DIAGONAL_ROUNDOFF:
        diagonal = np.real(np.diag(h))
        order = np.argsort(-diagonal, kind="stable")
        return frozen(diagonal[order].copy()), permutation_unitary(order)

    eigenvalues, v = linalg.eigh(h)
    eigenvalues, v = eigenvalues[::-1].copy(), v[:, ::-1].copy()
    return frozen(eigenvalues), frozen(v.astype(np.complex128))

# -------------------------------------------------------------------------------------------------------
#                                         Unitary Generators
# -------------------------------------------------------------------------------------------------------

def fourier_matrix(n):
    """F_n with entries exp(2πi·jk/n)/√n, j, k = 0..n−1. Every |u(j,k)|² equals 1/n."""
    if n < 1:
        raise DimensionError(f"Fourier matrix needs n ≥ 1, got {n}")
    j, k = np.indices((n, n))
    return frozen(np.exp(2j * np.pi * j * k / n) / np.sqrt(n))


def random_unitary(n, seed):
    """
    Seeded random unitary: a complex Ginibre matrix orthonormalized by QR.

    The phases of R's diagonal are moved into Q, which makes the result
    approximately Haar distributed and, more importantly, deterministic per seed.
    """
    if n < 1:
        raise DimensionError(f"random unitary needs n ≥ 1, got {n}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    return frozen(q.astype(np.complex128))


def permutation_unitary(perm):
    """
    Permutation unitary with u(i, j) = 1 iff i = perm[j].

    Args:
        perm (Sequence[int]): A 0-based bijection of range(n).
    """
    perm = [int(p) for p in perm]
    n = len(perm)
    if n < 1 or sorted(perm) != list(range(n)):
        raise DimensionError(f"{perm} is not a permutation of 0..{n - 1}")
    u = np.zeros((n, n), dtype=np.complex128)
    u[perm, np.arange(n)] = 1.0
    return frozen(u)


def random_permutation(n, rng):
    return permutation_unitary(rng.permutation(n))


def random_diagonal_unitary(n, rng):
    return frozen(np.diag(np.exp(2j * np.pi * rng.random(n))))


def random_state_spectrum(n, rng):
    """Dirichlet(1, ..., 1) probability vector sorted descending."""
    return frozen(np.sort(rng.dirichlet(np.ones(n)))[::-1].copy())


# -------------------------------------------------------------------------------------------------------
#                                         Main Execution (Test Node)
# -------------------------------------------------------------------------------------------------------

if __name__ == "__main__":
    from rich import print

    F = fourier_matrix(4)
    print("[green]F_4 unitary:[/green]", is_unitary(F))
    print("[dim]|F_4(j,k)|^2 =[/dim]", np.round(np.abs(F) ** 2, 6))
