import math

import numpy as np
import pytest

from Backend.Errors import NotDiagonalError
from Backend.Functionals import StateFunctional
from Backend.Masa import Masa, diagonal_masa, random_masa
from Backend.MatrixCore import fourier_matrix, random_unitary
from Backend.Variational import (
    h_phi_variational,
    h_trace_variational,
    random_diagonal_decomposition,
    weights_to_decomposition,
)


def test_random_diagonal_decomposition_columns_sum_to_lambda(rng):
    phi = StateFunctional(np.diag([0.5, 0.3, 0.2]))
    weights = random_diagonal_decomposition(phi, rng, parts=4)
    assert weights.shape == (4, 3)
    np.testing.assert_allclose(weights.sum(axis=0), [0.5, 0.3, 0.2], atol=1e-14)
    assert len(weights_to_decomposition(weights, phi)) == 4


def test_without_restarts_the_spectral_split_is_reported(rotation):
    phi = StateFunctional(np.diag([0.7, 0.3]))
    report = h_phi_variational(phi, rotation, restarts=0, seed=3)
    assert report.iterations == 1
    assert report.best_value == pytest.approx(0.294911798, abs=1e-8)
    assert abs(report.gap) <= 1e-12


def test_search_never_beats_closed_form():
    phi = StateFunctional(np.diag([0.5, 0.3, 0.2]))
    report = h_phi_variational(phi, random_unitary(3, 21), restarts=3, seed=5)
    assert report.gap >= -1e-9
    assert report.gap <= 1e-12
    assert report.iterations > 3
    assert set(report.as_dict()) == {"value", "closed_form", "gap", "iterations", "seed"}


def test_search_is_reproducible_across_worker_counts():
    phi = StateFunctional(np.diag([0.6, 0.4]))
    u = random_unitary(2, 2)
    serial = h_phi_variational(phi, u, restarts=3, seed=9, workers=1)
    threaded = h_phi_variational(phi, u, restarts=3, seed=9, workers=3)
    assert serial.best_value == threaded.best_value
    assert serial.iterations == threaded.iterations


def test_search_input_checks(rotation):
    with pytest.raises(ValueError):
        h_phi_variational(StateFunctional.trace_state(2), rotation, restarts=-1, seed=0)
    with pytest.raises(NotDiagonalError):
        h_phi_variational(StateFunctional(np.array([[0.5, 0.2], [0.2, 0.5]])), rotation, restarts=0, seed=0)


def test_search_accepts_state_with_off_diagonal_round_off():
    noisy = StateFunctional(np.array([[0.5, 1e-11], [1e-11, 0.5]]))
    report = h_phi_variational(noisy, fourier_matrix(2), restarts=0, seed=0)
    assert report.best_value == pytest.approx(math.log(2), abs=1e-12)
    assert abs(report.gap) <= 1e-12


def test_trace_search_on_fourier_pair_reaches_log_n():
    d = diagonal_masa(3)
    report = h_trace_variational(d, Masa(fourier_matrix(3)), restarts=10, seed=1)
    assert report.best_value == pytest.approx(math.log(3), abs=1e-12)
    assert report.iterations == 11


def test_trace_search_stays_below_closed_form():
    a, b = random_masa(4, 1), random_masa(4, 2)
    report = h_trace_variational(a, b, restarts=20, seed=4)
    assert report.gap == pytest.approx(0.0, abs=1e-12)
