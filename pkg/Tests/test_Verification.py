import pytest

from Backend.Errors import DimensionError, UnknownSuiteError
from Backend.Verification import SUITES, CheckResult, SuiteResult, run_suite


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("name", ["lemma1", "corollary3", "corollary5", "gauge"])
def test_cheap_suites_pass(name, n):
    result = run_suite(name, n, seed=1, trials=6)
    assert result.passed, [c for c in result.checks if not c.passed]
    assert result.name == name and result.n == n and result.trials == 6


@pytest.mark.parametrize("n", [2, 3])
def test_spectral_split_suite_passes(n):
    result = run_suite("theorem2", n, seed=2, trials=3, samples=15, restarts=1)
    assert result.passed, [c for c in result.checks if not c.passed]


@pytest.mark.parametrize("n", [2, 3])
def test_partition_suite_passes(n):
    result = run_suite("corollary4", n, seed=3, trials=3, samples=20)
    assert result.passed, [c for c in result.checks if not c.passed]


def test_suites_are_reproducible():
    first = run_suite("gauge", 3, seed=7, trials=3)
    second = run_suite("gauge", 3, seed=7, trials=3)
    assert first == second


def test_two_level_bound_is_enforced_but_larger_n_is_informational():
    two = {c.name: c for c in run_suite("corollary3", 2, seed=0, trials=4).checks}
    three = {c.name: c for c in run_suite("corollary3", 3, seed=0, trials=4).checks}
    assert not two["below_h_closed"].informational
    assert three["below_h_closed"].informational
    assert "states_above_h_closed" in three and "states_above_h_closed" not in two


def test_zero_trials_are_allowed():
    result = run_suite("lemma1", 3, seed=0, trials=0)
    assert result.passed
    assert all(c.max_deviation == 0.0 for c in result.checks)


def test_tolerance_override_can_fail_a_suite():
    # deviations are never negative
    result = run_suite("corollary5", 3, seed=0, trials=2, tol=-1.0)
    assert not result.passed


def test_run_suite_input_checks():
    with pytest.raises(UnknownSuiteError):
        run_suite("theorem9", 2, seed=0, trials=1)
    with pytest.raises(DimensionError):
        run_suite("lemma1", 0, seed=0, trials=1)


def test_informational_checks_never_fail():
    check = CheckResult("count", 5.0, 0.0, informational=True)
    assert check.passed
    assert SuiteResult("x", 2, 0, 1, (check,)).passed
    assert not SuiteResult("x", 2, 0, 1, (CheckResult("gap", 1e-3, 1e-9),)).passed


def test_every_suite_is_registered():
    assert set(SUITES) == {"lemma1", "theorem2", "corollary3", "corollary4", "corollary5", "gauge"}
