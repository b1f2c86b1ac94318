# Shared fixtures for the test suite.

import numpy as np
import pytest

from Backend.Masa import conjugate_masa, diagonal_masa
from Backend.MatrixCore import fourier_matrix

# cos²θ = 0.9
COS = np.sqrt(0.9)
SIN = np.sqrt(0.1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def rotation():
    """The real 2x2 rotation with |u(j,k)|² ∈ {0.9, 0.1}."""
    return np.array([[COS, -SIN], [SIN, COS]], dtype=np.complex128)


@pytest.fixture(params=[2, 3, 4, 5])
def fourier_pair(request):
    n = request.param
    d = diagonal_masa(n)
    return d, conjugate_masa(d, fourier_matrix(n))
