# ===========================================================================================================
#                                         RelativeEntropy.py
# ===========================================================================================================
# The conditional relative entropies of a pair of MASAs.
#
#   h_φ(D | uDu*) = H_λ(b(u)*) + S(φ|_D) − S(φ|_{uDu*})      (φ with density diagonal in D)
#   h(A | B)      = H(b(u(A, B)))                            (u read in A's matrix units)
#
# Alongside the closed forms this module evaluates the objectives whose suprema define them:
# - over decompositions φ = Σ φ_i with diagonal densities (the family Φ(D)), and
# - over partitions of unity 1 = Σ x_i, either inside A (the families S(A), S'(A)) or arbitrary (S).
# Variational.py searches those families; the closed forms must never be beaten.

from dataclasses import dataclass

import numpy as np

from Backend.Config import DIAGONAL_TOL, HERMITIAN_TOL, MAXIMALITY_TOL, POSITIVITY_TOL, SUM_TOL
from Backend.Errors import DimensionError, InvalidPartitionError, NotDiagonalError, NotStateError
from Backend.Functionals import (
    decomposition_entropy_sum,
    diagonal_projection,
    inner_perturbation,
    restricted_entropy,
    spectral_split,
    trace_eta,
)
from Backend.Masa import (
    conditional_expectation,
    conjugate_masa,
    contains,
    diagonal_masa,
    relative_unitary,
)
from Backend.MatrixCore import as_complex_matrix, as_unitary, dagger, is_hermitian, max_abs
from Backend.Stochastic import entropy, transpose, unistochastic, weighted_entropy

# -------------------------------------------------------------------------------------------------------
#                                         Types
# -------------------------------------------------------------------------------------------------------

@dataclass(frozen=True)
class HPhiBreakdown:
    """h_φ(D | uDu*) with its three summands."""
    weighted_term: float
    entropy_on_d: float
    entropy_on_udu: float

    @property
    def value(self):
        return self.weighted_term + self.entropy_on_d - self.entropy_on_udu


@dataclass(frozen=True)
class PartitionOfUnity:
    """
    Positive matrices x_i with Σ x_i = 1.

    `in_s_prime` marks families whose parts are scalar multiples of projections of a MASA.
    """
    parts: tuple
    in_s_prime: bool = False

    def __post_init__(self):
        parts = tuple(as_complex_matrix(x) for x in self.parts)
        if not parts:
            raise InvalidPartitionError("a partition of unity needs at least one part")
        n = parts[0].shape[0]
        if any(x.shape != (n, n) for x in parts):
            raise InvalidPartitionError("parts have different dimensions")
        for x in parts:
            if not is_hermitian(x, HERMITIAN_TOL):
                raise InvalidPartitionError("partition parts must be Hermitian")
            if np.linalg.eigvalsh((x + dagger(x)) / 2)[0] < -POSITIVITY_TOL:
                raise InvalidPartitionError("partition parts must be positive")
        deviation = max_abs(sum(parts) - np.eye(n))
        if deviation > SUM_TOL:
            raise InvalidPartitionError(f"parts do not sum to 1 (deviation {deviation:.3e})")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self):
        return self.parts[0].shape[0]

    def __len__(self):
        return len(self.parts)

# -------------------------------------------------------------------------------------------------------
#                                         Helper Functions
# -------------------------------------------------------------------------------------------------------

def _require_diagonal(q, what):
    if max_abs(q - np.diag(np.diag(q))) > DIAGONAL_TOL:
        raise NotDiagonalError(f"{what} is not diagonal within {DIAGONAL_TOL:.1e}")


def _pair_of_algebras(n, u):
    """(D, uDu*) for a unitary u of size n."""
    u = as_unitary(u)
    if u.shape[0] != n:
        raise DimensionError(f"unitary is {u.shape[0]}x{u.shape[0]}, state lives on M_{n}")
    d = diagonal_masa(n)
    return d, conjugate_masa(d, u), u

# -------------------------------------------------------------------------------------------------------
#                                         Closed Forms
# -------------------------------------------------------------------------------------------------------

def h_phi_breakdown(phi, u):
    """
    The three summands of h_φ(D | uDu*) for a state whose density is diagonal.

    λ_k is read at the position of e_k, so it stays paired with row k of b(u).

    Raises:
        NotStateError: If φ is not normalized.
        NotDiagonalError: If Q_φ is not diagonal.
    """
    if not phi.is_state():
        raise NotStateError(f"h_φ needs a state, trace is {phi.trace:.12g}")
    _require_diagonal(phi.q, "density operator")
    phi = diagonal_projection(phi)

    d, udu, u = _pair_of_algebras(phi.n, u)
    lam = np.clip(np.real(np.diag(phi.q)), 0.0, None)
    return HPhiBreakdown(
        weighted_term=weighted_entropy(transpose(unistochastic(u)), lam),
        entropy_on_d=restricted_entropy(phi, d),
        entropy_on_udu=restricted_entropy(phi, udu),
    )


def h_phi_closed(phi, u):
    """h_φ(D | uDu*) = H_λ(b(u)*) + S(φ|_D) − S(φ|_{uDu*})."""
    return h_phi_breakdown(phi, u).value


def h_phi_perturbed(phi, u):
    """
    h_{φ_v}(D | uDu*) for an arbitrary state.

    The state is first aligned with D by the inner perturbation through its own
    eigenbasis v, so the density of φ_v is diag(λ) with λ descending.

    Returns:
        tuple[HPhiBreakdown, StateFunctional]: The breakdown and the aligned state φ_v.
    """
    _, eigenbasis, _ = spectral_split(phi)
    aligned = inner_perturbation(phi, eigenbasis.diagonalizer)
    return h_phi_breakdown(aligned, u), aligned


def h_closed(a, b):
    """h(A | B) = H(b(u)) with u = u(A, B) in A's matrix units. Lies in [0, ln n]."""
    return entropy(unistochastic(relative_unitary(a, b)))


def is_entropy_maximal(a, b, tol=MAXIMALITY_TOL):
    """True iff h(A | B) = ln n within tol, i.e. the pair is orthogonal."""
    return abs(h_closed(a, b) - np.log(a.n)) <= tol

# -------------------------------------------------------------------------------------------------------
#                                         Objectives
# -------------------------------------------------------------------------------------------------------

def decomposition_objective(d, u):
    """
    Σ_i S(φ_i|_D, φ|_D) − S(φ_i|_{uDu*}, φ|_{uDu*}) for a decomposition in Φ(D).

    Both sums are evaluated through the decomposition identity
    Σ_i S(φ_i|_A, φ|_A) = −Σ_i S(φ_i|_A) + S(φ|_A).
    """
    _require_diagonal(d.whole.q, "decomposed state")
    for part in d.parts:
        _require_diagonal(part.q, "decomposition part")
    diagonal, udu, _ = _pair_of_algebras(d.whole.n, u)
    return decomposition_entropy_sum(d, diagonal) - decomposition_entropy_sum(d, udu)


def _tau_eta(x):
    return trace_eta(x) / x.shape[0]


def partition_objective(p, a, b):
    """
    Σ_i τη(E_B(x_i)) − τη(x_i) for a partition of unity inside A.

    Raises:
        InvalidPartitionError: If some x_i is not in A.
    """
    if p.n != a.n or a.n != b.n:
        raise DimensionError("partition and MASAs have different dimensions")
    for x in p.parts:
        if not contains(a, x):
            raise InvalidPartitionError("partition part does not lie in A")
    return float(sum(_tau_eta(conditional_expectation(b, x)) - _tau_eta(x) for x in p.parts))


def conditioned_partition_objective(p, a, b):
    """Σ_i τη(E_B(E_A(x_i))) − τη(E_A(x_i)), the objective over every partition of unity."""
    if p.n != a.n or a.n != b.n:
        raise DimensionError("partition and MASAs have different dimensions")
    total = 0.0
    for x in p.parts:
        in_a = conditional_expectation(a, x)
        total += _tau_eta(conditional_expectation(b, in_a)) - _tau_eta(in_a)
    return float(total)

# -------------------------------------------------------------------------------------------------------
#                                         Partition Samplers
# -------------------------------------------------------------------------------------------------------

def minimal_projection_partition(a):
    """{p_1, ..., p_n}: the family that attains h(A | B)."""
    return PartitionOfUnity(a.projections, in_s_prime=True)


def random_s_prime_partition(a, rng):
    """
    A random family of scalar multiples of projections of A.

    Layers with Dirichlet weights w_l each cut {1..n} into random blocks;
    every block contributes w_l · Σ_{k ∈ block} p_k, so the family sums to Σ_l w_l = 1.
    """
    n = a.n
    layers = int(rng.integers(1, n + 1))
    weights = rng.dirichlet(np.ones(layers))
    parts = []
    for weight in weights:
        labels = rng.integers(0, n, size=n)
        for label in np.unique(labels):
            block = sum(a.projections[k] for k in np.flatnonzero(labels == label))
            parts.append(weight * block)
    return PartitionOfUnity(tuple(parts), in_s_prime=True)


def random_partition_in_masa(a, parts, rng):
    """A random family in S(A): x_i = Σ_k c(k,i) p_k with Dirichlet rows c(k, ·)."""
    c = rng.dirichlet(np.ones(parts), size=a.n)
    w = a.diagonalizer
    return PartitionOfUnity(tuple((w * c[:, i]) @ dagger(w) for i in range(parts)))


def random_partition_of_unity(n, parts, rng):
    """
    A random family in S: S^{-1/2} G_i G_i* S^{-1/2} with S = Σ G_i G_i*.
    """
    blocks = []
    for _ in range(parts):
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        blocks.append(g @ dagger(g))
    s_val, s_vec = np.linalg.eigh(sum(blocks))
    s_inv_half = (s_vec / np.sqrt(s_val)) @ dagger(s_vec)
    return PartitionOfUnity(tuple(s_inv_half @ x @ s_inv_half for x in blocks))
