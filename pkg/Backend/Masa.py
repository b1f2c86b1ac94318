# ===========================================================================================================
#                                         Masa.py
# ===========================================================================================================
# Maximal abelian *-subalgebras of M_n(C).
#
# A MASA is stored through its diagonalizer w: the minimal projections are p_j = w e_j w*.
# Two MASAs A, B are always conjugate (B = uAu*), and everything here that compares two of them
# goes through the connecting unitary read in A's matrix units, w_A* w_B.
#
# Key Features:
# - The trace-preserving conditional expectation E_A.
# - Connecting unitaries u(A, B) and set-equality of MASAs.
# - Popa orthogonality, both as the flat-modulus test and as a commuting square.

from dataclasses import dataclass, field

import numpy as np

from Backend.Config import DIAGONAL_TOL, ORTHOGONALITY_TOL, UNITARY_TOL
from Backend.Errors import DimensionError
from Backend.MatrixCore import as_unitary, dagger, frozen, max_abs, random_unitary

# -------------------------------------------------------------------------------------------------------
#                                         Types
# -------------------------------------------------------------------------------------------------------

@dataclass(frozen=True)
class Masa:
    """
    A MASA given by a diagonalizing unitary.

    Attributes:
        diagonalizer (ComplexMatrix): w with p_j = w e_j w*.
        projections (tuple): The rank-one projections p_1, ..., p_n, in order.
    """
    diagonalizer: np.ndarray
    projections: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        w = as_unitary(self.diagonalizer, UNITARY_TOL)
        projections = tuple(frozen(np.outer(w[:, j], np.conj(w[:, j]))) for j in range(w.shape[0]))
        object.__setattr__(self, "diagonalizer", w)
        object.__setattr__(self, "projections", projections)

    @property
    def n(self):
        return self.diagonalizer.shape[0]

    def __len__(self):
        return self.n


def _check_same_dimension(a, b):
    if a.n != b.n:
        raise DimensionError(f"MASAs of M_{a.n} and M_{b.n} cannot be compared")

# -------------------------------------------------------------------------------------------------------
#                                         Constructors
# -------------------------------------------------------------------------------------------------------

def diagonal_masa(n):
    """The diagonal algebra D, generated by the matrix units e_11, ..., e_nn."""
    if n < 1:
        raise DimensionError(f"diagonal algebra needs n ≥ 1, got {n}")
    return Masa(np.eye(n, dtype=np.complex128))


def conjugate_masa(masa, u):
    """uAu*: projections u p_j u*, diagonalizer u w."""
    u = as_unitary(u, UNITARY_TOL)
    if u.shape[0] != masa.n:
        raise DimensionError("unitary and MASA have different dimensions")
    return Masa(u @ masa.diagonalizer)


def random_masa(n, seed):
    return Masa(random_unitary(n, seed))

# -------------------------------------------------------------------------------------------------------
#                                         Conditional Expectation
# -------------------------------------------------------------------------------------------------------

def normalized_trace(x):
    """τ(x) = Tr(x)/n."""
    x = np.asarray(x)
    return complex(np.trace(x)) / x.shape[0]


def conditional_expectation(masa, x):
    """
    E_A(x) = Σ_j n·τ(x p_j)·p_j.

    In A's basis this keeps the diagonal of w* x w and drops the rest.
    """
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (masa.n, masa.n):
        raise DimensionError(f"expected a {masa.n}x{masa.n} matrix, got {x.shape}")
    w = masa.diagonalizer
    weights = np.diag(dagger(w) @ x @ w)
    return (w * weights) @ dagger(w)


def contains(masa, x, tol=DIAGONAL_TOL):
    """
    True iff x ∈ A, i.e. x commutes with every minimal projection of A.

    Checked in A's basis, where members of A are exactly the diagonal matrices.
    """
    w = masa.diagonalizer
    y = dagger(w) @ np.asarray(x) @ w
    return max_abs(y - np.diag(np.diag(y))) <= tol

# -------------------------------------------------------------------------------------------------------
#                                         Connecting Unitaries
# -------------------------------------------------------------------------------------------------------

def connecting_unitary(a, b):
    """u(A, B) = w_B w_A*, so that B = u A u*."""
    _check_same_dimension(a, b)
    return frozen(b.diagonalizer @ dagger(a.diagonalizer))


def relative_unitary(a, b):
    """
    u(A, B) written in the matrix units of A: w_A* w_B.

    Its squared moduli are the overlaps Tr(p_i q_j) between the minimal projections
    of A and B, which is what every entropy of the pair depends on.
    """
    _check_same_dimension(a, b)
    return frozen(dagger(a.diagonalizer) @ b.diagonalizer)


def same_masa(a, b, tol=ORTHOGONALITY_TOL):
    """
    Unordered projection-set equality.

    Each p_i is matched greedily to the unused q_j with the largest overlap Tr(p_i q_j).
    """
    _check_same_dimension(a, b)
    overlaps = np.abs(relative_unitary(a, b)) ** 2
    unused = set(range(b.n))
    for i, p in enumerate(a.projections):
        j = max(unused, key=lambda k: overlaps[i, k])
        if max_abs(p - b.projections[j]) > tol:
            return False
        unused.remove(j)
    return True

# -------------------------------------------------------------------------------------------------------
#                                         Orthogonality
# -------------------------------------------------------------------------------------------------------

def is_orthogonal_pair(a, b, tol=ORTHOGONALITY_TOL):
    """Popa orthogonality as flat moduli: max |  |u(j,k)|² − 1/n  | ≤ tol."""
    moduli = np.abs(relative_unitary(a, b)) ** 2
    return max_abs(moduli - 1.0 / a.n) <= tol


def is_commuting_square(a, b, tol=ORTHOGONALITY_TOL):
    """
    True iff E_A E_B = E_B E_A = E_{C1} on every matrix unit e_kl.

    E_{C1}(x) = τ(x)·1.
    """
    _check_same_dimension(a, b)
    n = a.n
    identity = np.eye(n)
    for k in range(n):
        for l in range(n):
            unit = np.zeros((n, n), dtype=np.complex128)
            unit[k, l] = 1.0
            scalar = normalized_trace(unit) * identity
            if max_abs(conditional_expectation(a, conditional_expectation(b, unit)) - scalar) > tol:
                return False
            if max_abs(conditional_expectation(b, conditional_expectation(a, unit)) - scalar) > tol:
                return False
    return True


def popa_defect(a, b):
    """
    n · max |τ(a·b)| over the trace-zero spanning sets a = p_k − 1/n of A and b = q_l − 1/n of B.

    n·τ((p_k − 1/n)(q_l − 1/n)) = Tr(p_k q_l) − 1/n, so the defect is on the same scale as
    the flat-modulus test and shares its tolerance. Zero exactly when the pair is orthogonal.
    """
    _check_same_dimension(a, b)
    n = a.n
    centred_a = [p - np.eye(n) / n for p in a.projections]
    centred_b = [q - np.eye(n) / n for q in b.projections]
    return n * max(abs(normalized_trace(x @ y)) for x in centred_a for y in centred_b)
