import pytest

from Backend.Config import Settings, load_settings
from Backend.Errors import ConfigError


def test_missing_file_gives_defaults(tmp_path):
    assert load_settings(tmp_path / "absent.env") == Settings()


def test_overrides_are_typed(tmp_path):
    env = tmp_path / ".env"
    env.write_text("UNITARY_TOL=1e-8\nDEFAULT_TRIALS=12\nWORKERS=\n")
    loaded = load_settings(env)
    assert loaded.unitary_tol == 1e-8
    assert loaded.default_trials == 12 and isinstance(loaded.default_trials, int)
    assert loaded.workers == Settings().workers


def test_unparseable_value_falls_back(tmp_path):
    env = tmp_path / ".env"
    env.write_text("SUM_TOL=tiny\n")
    assert load_settings(env).sum_tol == Settings().sum_tol


def test_negative_value_is_rejected(tmp_path):
    env = tmp_path / ".env"
    env.write_text("DEFAULT_SEED=-3\n")
    with pytest.raises(ConfigError):
        load_settings(env)


@pytest.mark.parametrize("line, field", [
    ("WORKERS=1.7", "workers"),
    ("UNITARY_TOL=nan", "unitary_tol"),
    ("DEFAULT_TRIALS=inf", "default_trials"),
    ("VARIATIONAL_TOL=inf", "variational_tol"),
])
def test_fractional_or_non_finite_value_falls_back(tmp_path, line, field):
    env = tmp_path / ".env"
    env.write_text(line + "\n")
    assert getattr(load_settings(env), field) == getattr(Settings(), field)


def test_whole_float_count_is_accepted(tmp_path):
    env = tmp_path / ".env"
    env.write_text("WORKERS=4.0\n")
    loaded = load_settings(env)
    assert loaded.workers == 4 and isinstance(loaded.workers, int)
