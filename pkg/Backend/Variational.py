# ===========================================================================================================
#                                         Variational.py
# ===========================================================================================================
# Independent checks of the closed forms in RelativeEntropy.py.
#
# The closed forms are suprema over families of decompositions / partitions. The searches here
# try concrete families and report the best objective they reach:
# - h_phi_variational: decompositions in Φ(D), starting from the spectral split plus Dirichlet
#   random splits, each polished by greedy weight transfers.
# - h_trace_variational: the minimal projections of A plus random families in S'(A).
#
# These are verifiers, not global solvers: what must hold is "never above the closed form"
# and "the canonical witness reaches it".

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from rich.console import Console

from Backend.Config import DIAGONAL_TOL, settings
from Backend.Errors import NotDiagonalError
from Backend.Functionals import (
    Decomposition,
    StateFunctional,
    diagonal_projection,
    eta_clipped,
    spectral_split,
)
from Backend.MatrixCore import as_unitary, max_abs
from Backend.RelativeEntropy import (
    decomposition_objective,
    h_closed,
    h_phi_closed,
    minimal_projection_partition,
    partition_objective,
    random_s_prime_partition,
)
from Backend.Stochastic import unistochastic

# -------------------------------------------------------------------------------------------------------
#                                         Configuration
# -------------------------------------------------------------------------------------------------------

console = Console(stderr=True)

# Local search stops once a sweep at this step size finds nothing
MIN_STEP = 1e-9
MIN_GAIN = 1e-12
MAX_SWEEPS = 400

# -------------------------------------------------------------------------------------------------------
#                                         Types
# -------------------------------------------------------------------------------------------------------

@dataclass(frozen=True)
class VariationalReport:
    best_value: float
    closed_form: float
    iterations: int
    seed: int
    witness: object

    @property
    def gap(self):
        """closed form − best value; ≥ −tolerance whenever the closed form is a true supremum."""
        return self.closed_form - self.best_value

    def as_dict(self):
        return {
            "value": self.best_value,
            "closed_form": self.closed_form,
            "gap": self.gap,
            "iterations": self.iterations,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class _Candidate:
    value: float
    iterations: int
    witness: object

# -------------------------------------------------------------------------------------------------------
#                                         Φ(D) Weight Arithmetic
# -------------------------------------------------------------------------------------------------------
# A decomposition in Φ(D) is a weight matrix W (parts × n): part i has density diag(W[i]).
# Its columns sum to λ. The objective only needs W, λ and b = b(u):
#   Σ_i S(φ_i|_D, φ|_D)       = −Σ η(W)    + Σ η(λ)
#   Σ_i S(φ_i|_uDu*, φ|_uDu*) = −Σ η(W b)  + Σ η(λ b)

def _weights_objective(weights, lam, b):
    on_d = -eta_clipped(weights).sum() + eta_clipped(lam).sum()
    on_udu = -eta_clipped(weights @ b).sum() + eta_clipped(lam @ b).sum()
    return float(on_d - on_udu)


def weights_to_decomposition(weights, phi):
    """The Φ(D) decomposition whose part i has density diag(W[i])."""
    parts = tuple(StateFunctional(np.diag(row.astype(np.complex128))) for row in weights)
    return Decomposition(parts, phi)


def random_diagonal_decomposition(phi, rng, parts=None):
    """
    A random member of Φ(D): λ_k is split across parts by a Dirichlet(1, ..., 1) column.

    Returns:
        np.ndarray: weight matrix W with W[i, k] = c(i, k)·λ_k.
    """
    n = phi.n
    parts = n if parts is None else parts
    lam = np.clip(np.real(np.diag(phi.q)), 0.0, None)
    columns = rng.dirichlet(np.ones(parts), size=n).T
    return columns * lam


def _improve(weights, lam, b):
    """
    Greedy coordinate transfer: move a fraction `step` of W[i, k] to W[j, k] when it helps,
    halve the step when a full sweep finds nothing.
    """
    weights = weights.copy()
    current = _weights_objective(weights, lam, b)
    parts, n = weights.shape
    evaluations = 0
    step = 0.5

    for _ in range(MAX_SWEEPS):
        if step < MIN_STEP:
            break
        improved = False
        for k in range(n):
            for i in range(parts):
                for j in range(parts):
                    amount = step * weights[i, k]
                    if i == j or amount <= 0.0:
                        continue
                    weights[i, k] -= amount
                    weights[j, k] += amount
                    value = _weights_objective(weights, lam, b)
                    evaluations += 1
                    if value > current + MIN_GAIN:
                        current = value
                        improved = True
                    else:
                        weights[i, k] += amount
                        weights[j, k] -= amount
        if not improved:
            step /= 2

    return weights, evaluations


def _run_restart(phi, u, lam, b, child_seed):
    rng = np.random.default_rng(child_seed)
    start = random_diagonal_decomposition(phi, rng)
    weights, evaluations = _improve(start, lam, b)
    witness = weights_to_decomposition(weights, phi)
    return _Candidate(decomposition_objective(witness, u), evaluations + 1, witness)


def _best(candidates):
    """First candidate with the largest value; the order of the list decides ties."""
    best = candidates[0]
    for candidate in candidates[1:]:
        if candidate.value > best.value:
            best = candidate
    return best

# -------------------------------------------------------------------------------------------------------
#                                         Searches
# -------------------------------------------------------------------------------------------------------

def h_phi_variational(phi, u, restarts, seed, workers=None):
    """
    Lower-bounds h_φ(D | uDu*) by searching Φ(D).

    The spectral split is always the first candidate. Each restart draws its own generator
    from SeedSequence(seed).spawn, so running restarts on a thread pool gives the same report
    as running them one after another.

    Args:
        phi (StateFunctional): A state with diagonal density.
        u (ComplexMatrix): The unitary defining uDu*.
        restarts (int): Number of random starting decompositions (≥ 0).
        seed (int): Master seed.
        workers (int | None): Thread count; defaults to the WORKERS setting.

    Returns:
        VariationalReport: Best objective, closed form, summed evaluation count, seed, witness.
    """
    if restarts < 0:
        raise ValueError(f"restarts must be ≥ 0, got {restarts}")
    if max_abs(phi.q - np.diag(np.diag(phi.q))) > DIAGONAL_TOL:
        raise NotDiagonalError("h_φ search needs a state with diagonal density")
    phi = diagonal_projection(phi)

    u = as_unitary(u)
    closed = h_phi_closed(phi, u)
    canonical, _, _ = spectral_split(phi)
    candidates = [_Candidate(decomposition_objective(canonical, u), 1, canonical)]

    lam = np.clip(np.real(np.diag(phi.q)), 0.0, None)
    b = unistochastic(u).entries
    children = np.random.SeedSequence(seed).spawn(restarts)
    workers = settings.workers if workers is None else workers

    if workers > 1 and restarts > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            candidates.extend(pool.map(lambda child: _run_restart(phi, u, lam, b, child), children))
    else:
        candidates.extend(_run_restart(phi, u, lam, b, child) for child in children)

    best = _best(candidates)
    return VariationalReport(
        best_value=best.value,
        closed_form=closed,
        iterations=sum(c.iterations for c in candidates),
        seed=seed,
        witness=best.witness,
    )


def h_trace_variational(a, b, restarts, seed):
    """
    Lower-bounds h(A | B) over S'(A): the minimal projections of A plus `restarts` random families.
    """
    if restarts < 0:
        raise ValueError(f"restarts must be ≥ 0, got {restarts}")

    rng = np.random.default_rng(seed)
    canonical = minimal_projection_partition(a)
    candidates = [_Candidate(partition_objective(canonical, a, b), 1, canonical)]
    for _ in range(restarts):
        family = random_s_prime_partition(a, rng)
        candidates.append(_Candidate(partition_objective(family, a, b), 1, family))

    best = _best(candidates)
    return VariationalReport(
        best_value=best.value,
        closed_form=h_closed(a, b),
        iterations=len(candidates),
        seed=seed,
        witness=best.witness,
    )

# -------------------------------------------------------------------------------------------------------
#                                         Main Execution (Test Node)
# -------------------------------------------------------------------------------------------------------

if __name__ == "__main__":
    from Backend.MatrixCore import fourier_matrix

    report = h_phi_variational(StateFunctional.trace_state(3), fourier_matrix(3), restarts=4, seed=1)
    console.print(f"[green]h_τ search on F_3:[/green] {report.as_dict()}")
