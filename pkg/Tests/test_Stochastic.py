import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from Backend.Errors import NotBistochasticError
from Backend.MatrixCore import fourier_matrix, permutation_unitary, random_unitary
from Backend.Stochastic import (
    BistochasticMatrix,
    as_probability_vector,
    entropy,
    flat_matrix,
    row_entropies,
    transpose,
    unistochastic,
    weighted_entropy,
)


def test_rejects_non_bistochastic():
    with pytest.raises(NotBistochasticError):
        BistochasticMatrix([[0.5, 0.5], [0.6, 0.4]])
    with pytest.raises(NotBistochasticError):
        BistochasticMatrix([[1.5, -0.5], [-0.5, 1.5]])
    with pytest.raises(NotBistochasticError):
        BistochasticMatrix([[1.0, 0.0, 0.0]])


def test_unistochastic_of_rotation(rotation):
    b = unistochastic(rotation)
    np.testing.assert_allclose(b.entries, [[0.9, 0.1], [0.1, 0.9]], atol=1e-15)
    h = -0.9 * math.log(0.9) - 0.1 * math.log(0.1)
    assert entropy(b) == pytest.approx(h, abs=1e-12)
    assert entropy(b) == pytest.approx(0.3250829734, abs=1e-9)


@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_flat_matrix_has_maximal_entropy(n):
    assert entropy(flat_matrix(n)) == pytest.approx(math.log(n), abs=1e-12)
    assert entropy(unistochastic(fourier_matrix(n))) == pytest.approx(math.log(n), abs=1e-12)


def test_permutation_has_zero_entropy():
    assert entropy(unistochastic(permutation_unitary([2, 0, 1]))) == 0.0


def test_weighted_entropy_uses_columns():
    b = BistochasticMatrix([[1.0, 0.0], [0.0, 1.0]])
    assert weighted_entropy(b, [0.5, 0.5]) == 0.0
    c = BistochasticMatrix([[0.5, 0.5, 0.0], [0.5, 0.5, 0.0], [0.0, 0.0, 1.0]])
    # columns 1 and 2 carry ln 2, column 3 carries nothing
    assert weighted_entropy(c, [0.25, 0.25, 0.5]) == pytest.approx(0.5 * math.log(2))
    assert weighted_entropy(transpose(c), [0.25, 0.25, 0.5]) == pytest.approx(0.5 * math.log(2))


def test_weighted_entropy_at_uniform_weights_is_entropy():
    b = unistochastic(random_unitary(4, 3))
    assert weighted_entropy(b, np.full(4, 0.25)) == pytest.approx(entropy(b), abs=1e-12)


def test_probability_vector_validation():
    with pytest.raises(ValueError):
        as_probability_vector([0.5, 0.6])
    with pytest.raises(ValueError):
        as_probability_vector([1.2, -0.2])
    np.testing.assert_array_equal(as_probability_vector([0.25, 0.75]), [0.25, 0.75])


@settings(deadline=None, max_examples=30)
@given(st.integers(min_value=1, max_value=7), st.integers(min_value=0, max_value=2**31 - 1))
def test_entropy_bounds(n, seed):
    b = unistochastic(random_unitary(n, seed))
    h = entropy(b)
    assert -1e-12 <= h <= math.log(n) + 1e-12
    assert np.all(row_entropies(b) <= math.log(n) + 1e-12)
    # H(b) = H(b*)
    assert entropy(transpose(b)) == pytest.approx(h, abs=1e-12)
