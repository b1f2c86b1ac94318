# ===========================================================================================================
#                                         Functionals.py
# ===========================================================================================================
# Positive linear functionals on M_n(C), always represented by their density operator Q_ψ
# (ψ(x) = Tr(Q_ψ x)).
#
# Key Features:
# - The η function and the von Neumann / relative entropies built on it.
# - Restrictions of functionals to a MASA and their entropies.
# - Decompositions φ = Σ φ_i, including the spectral split that attains the closed forms.
# - Inner perturbation φ_v(x) = φ(v x v*), the move that aligns a state with the diagonal algebra.
#
# Subnormalized functionals (trace < 1) go through the exact same formulas.

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from Backend.Config import HERMITIAN_TOL, POSITIVITY_TOL, SUM_TOL, SUPPORT_TOL, UNITARY_TOL
from Backend.Errors import (
    DimensionError,
    InvalidDecompositionError,
    NotHermitianError,
    NotPositiveError,
    NotStateError,
)
from Backend.Masa import Masa
from Backend.MatrixCore import (
    as_complex_matrix,
    as_unitary,
    dagger,
    frozen,
    hermitian_eigendecomposition,
    is_hermitian,
    max_abs,
    random_state_spectrum,
    random_unitary,
)

# -------------------------------------------------------------------------------------------------------
#                                         Types
# -------------------------------------------------------------------------------------------------------

@dataclass(frozen=True)
class StateFunctional:
    """
    A positive linear functional given by its density operator.

    The density is symmetrized on construction and stored read-only.
    """
    q: np.ndarray

    def __post_init__(self):
        q = as_complex_matrix(self.q)
        if not is_hermitian(q, HERMITIAN_TOL):
            raise NotHermitianError("density operator is not Hermitian")
        q = frozen((q + dagger(q)) / 2)
        smallest = float(np.linalg.eigvalsh(q)[0])
        if smallest < -POSITIVITY_TOL:
            raise NotPositiveError(f"density operator has eigenvalue {smallest:.3e} < 0")
        object.__setattr__(self, "q", q)

    @property
    def n(self):
        return self.q.shape[0]

    @property
    def trace(self):
        return float(np.real(np.trace(self.q)))

    def is_state(self, tol=SUM_TOL):
        return abs(self.trace - 1.0) <= tol

    @classmethod
    def trace_state(cls, n):
        """The normalized trace τ, with density 1/n."""
        return cls(np.eye(n) / n)

    @classmethod
    def from_spectrum(cls, spectrum, v=None):
        """Density v · diag(spectrum) · v* (diagonal when v is omitted)."""
        q = np.diag(np.asarray(spectrum, dtype=np.complex128))
        if v is not None:
            v = np.asarray(v)
            q = v @ q @ dagger(v)
        return cls(q)


@dataclass(frozen=True)
class Decomposition:
    """A finite family of positive functionals summing to `whole`."""
    parts: tuple
    whole: StateFunctional = field(default=None)

    def __post_init__(self):
        parts = tuple(p if isinstance(p, StateFunctional) else StateFunctional(p) for p in self.parts)
        if not parts:
            raise InvalidDecompositionError("a decomposition needs at least one part")
        total = sum(p.q for p in parts)
        whole = self.whole if self.whole is not None else StateFunctional(total)
        if any(p.n != whole.n for p in parts):
            raise InvalidDecompositionError("parts and whole have different dimensions")
        deviation = max_abs(total - whole.q)
        if deviation > SUM_TOL:
            raise InvalidDecompositionError(f"parts do not sum to the whole (deviation {deviation:.3e})")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "whole", whole)

    def __len__(self):
        return len(self.parts)

# -------------------------------------------------------------------------------------------------------
#                                         Entropy Functions
# -------------------------------------------------------------------------------------------------------

def eta(t):
    """
    η(t) = −t·ln t with η(0) = 0. Accepts scalars or arrays; t > 1 gives negative values.

    Raises:
        ValueError: If any t < 0.
    """
    t = np.asarray(t, dtype=np.float64)
    if np.any(t < 0):
        raise ValueError("η is only defined for t ≥ 0")
    values = special.entr(t)
    return float(values) if values.ndim == 0 else values


def eta_clipped(t):
    """η after clipping round-off negatives to 0."""
    return special.entr(np.clip(np.asarray(t, dtype=np.float64), 0.0, None))


def trace_eta(x):
    """Tr(η(x)) for a Hermitian x, through its eigenvalues."""
    x = np.asarray(x)
    return float(np.sum(eta_clipped(np.linalg.eigvalsh((x + dagger(x)) / 2))))


def von_neumann_entropy(psi):
    """S(ψ) = Tr(η(Q_ψ))."""
    return trace_eta(psi.q)


def _log_on_support(eigenvalues):
    """ln of the eigenvalues above the support threshold, 0 elsewhere."""
    logs = np.zeros_like(eigenvalues)
    support = eigenvalues > SUPPORT_TOL
    logs[support] = np.log(eigenvalues[support])
    return logs, support


def relative_entropy(psi, phi):
    """
    S(ψ, φ) = Tr(Q_ψ (log Q_ψ − log Q_φ)).

    Each logarithm is taken in its own operator's eigenbasis, so the pair need not commute.
    When the support of Q_ψ is not inside the support of Q_φ the value is +inf.

    Args:
        psi (StateFunctional): First argument.
        phi (StateFunctional): Reference functional.

    Returns:
        float: The relative entropy, or math.inf.
    """
    if psi.n != phi.n:
        raise DimensionError("functionals act on different dimensions")

    mu, v = np.linalg.eigh(psi.q)
    nu, w = np.linalg.eigh(phi.q)

    log_nu, support = _log_on_support(nu)
    kernel = w[:, ~support]
    leak = float(np.real(np.trace(dagger(kernel) @ psi.q @ kernel))) if kernel.size else 0.0
    if leak > SUPPORT_TOL:
        return math.inf

    log_mu, _ = _log_on_support(mu)
    psi_log_psi = float(np.sum(np.clip(mu, 0.0, None) * log_mu))
    log_q_phi = (w * log_nu) @ dagger(w)
    psi_log_phi = float(np.real(np.trace(psi.q @ log_q_phi)))
    return psi_log_psi - psi_log_phi

# -------------------------------------------------------------------------------------------------------
#                                         Restrictions to a MASA
# -------------------------------------------------------------------------------------------------------

def evaluate(psi, x):
    """ψ(x) = Tr(Q_ψ x)."""
    return complex(np.trace(psi.q @ np.asarray(x)))


def _masa_weights(psi, masa):
    """(ψ(p_1), ..., ψ(p_n)) for the minimal projections of the MASA."""
    if psi.n != masa.n:
        raise DimensionError(f"functional on M_{psi.n} restricted to a MASA of M_{masa.n}")
    w = masa.diagonalizer
    return np.real(np.diag(dagger(w) @ psi.q @ w))


def restriction(psi, masa):
    """ψ|_A as a functional on M_n: its density is E_A(Q_ψ) = Σ_j ψ(p_j) p_j."""
    weights = np.clip(_masa_weights(psi, masa), 0.0, None)
    w = masa.diagonalizer
    return StateFunctional((w * weights) @ dagger(w))


def restricted_entropy(psi, masa):
    """S(ψ|_A) = Σ_j η(ψ(p_j))."""
    return float(np.sum(eta_clipped(_masa_weights(psi, masa))))


def decomposition_entropy_sum(d, masa):
    """
    −Σ_i S(φ_i|_A) + S(φ|_A), the closed form of Σ_i S(φ_i|_A, φ|_A).

    Raises:
        NotStateError: If the decomposed functional is not a state.
    """
    if not d.whole.is_state():
        raise NotStateError(f"decomposed functional has trace {d.whole.trace:.12g}, expected 1")
    parts_entropy = sum(restricted_entropy(part, masa) for part in d.parts)
    return -parts_entropy + restricted_entropy(d.whole, masa)

# -------------------------------------------------------------------------------------------------------
#                                         Decompositions & Perturbations
# -------------------------------------------------------------------------------------------------------

def spectral_split(phi):
    """
    Splits a state along its eigenprojections: Q_{φ_i} = λ_i e_i.

    Returns:
        tuple[Decomposition, Masa, RealVector]: The decomposition, the MASA D(φ) generated
        by the e_i, and λ sorted descending.
    """
    if not phi.is_state():
        raise NotStateError(f"spectral split needs a state, trace is {phi.trace:.12g}")

    eigenvalues, v = hermitian_eigendecomposition(phi.q)
    spectrum = np.clip(eigenvalues, 0.0, None)
    parts = tuple(
        StateFunctional(spectrum[i] * np.outer(v[:, i], np.conj(v[:, i])))
        for i in range(phi.n)
    )
    return Decomposition(parts, phi), Masa(v), frozen(spectrum.copy())


def diagonal_projection(phi):
    """The functional with density diag(Q_φ): off-diagonal round-off dropped."""
    return StateFunctional(np.diag(np.diag(phi.q)))


def inner_perturbation(phi, v):
    """
    φ_v(x) = φ(v x v*), whose density is v*·Q_φ·v.

    Raises:
        NotUnitaryError: If v is not unitary.
    """
    v = as_unitary(v, UNITARY_TOL)
    if v.shape[0] != phi.n:
        raise DimensionError("unitary and functional have different dimensions")
    return StateFunctional(dagger(v) @ phi.q @ v)

# -------------------------------------------------------------------------------------------------------
#                                         Random Samplers
# -------------------------------------------------------------------------------------------------------

def random_state(n, rng):
    """A state with Dirichlet spectrum in a random eigenbasis."""
    v = random_unitary(n, int(rng.integers(2**31)))
    return StateFunctional.from_spectrum(random_state_spectrum(n, rng), v)


def random_decomposition(phi, parts, rng):
    """
    A random split of φ into `parts` positive functionals (non-commuting in general).

    Random PSD matrices G_i G_i* are congruence-normalised so they sum to Q_φ:
    Q_i = Q^{1/2} S^{-1/2} G_i G_i* S^{-1/2} Q^{1/2} with S = Σ G_i G_i*.
    """
    n = phi.n
    blocks = []
    for _ in range(parts):
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        blocks.append(g @ dagger(g))

    s_val, s_vec = np.linalg.eigh(sum(blocks))
    s_inv_half = (s_vec / np.sqrt(s_val)) @ dagger(s_vec)
    q_val, q_vec = np.linalg.eigh(phi.q)
    q_half = (q_vec * np.sqrt(np.clip(q_val, 0.0, None))) @ dagger(q_vec)

    congruence = q_half @ s_inv_half
    split = [congruence @ block @ dagger(congruence) for block in blocks]
    # Absorb round-off in the last part so Σ parts matches the whole to machine precision
    split[-1] = phi.q - sum(split[:-1])
    return Decomposition(tuple(StateFunctional(q) for q in split), phi)
