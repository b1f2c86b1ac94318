# ===========================================================================================================
#                                         Config.py
# ===========================================================================================================
# Central configuration for the toolkit.
# Every tolerance, default seed and sampling count is read from the '.env' file once at import time,
# so that the CLI, the verification suites and the tests all share the same numbers.
#
# Keys are documented in '.env.example'. Anything missing falls back to the defaults below.

import math
from dataclasses import dataclass, fields
from dotenv import dotenv_values
from rich.console import Console

from Backend.Errors import ConfigError

# -------------------------------------------------------------------------------------------------------
#                                         Configuration
# -------------------------------------------------------------------------------------------------------

# Warnings about bad values go to stderr so they never pollute a report on stdout
console = Console(stderr=True)

ENV_FILE = ".env"


@dataclass(frozen=True)
class Settings:
    unitary_tol: float = 1e-10
    hermitian_tol: float = 1e-10
    positivity_tol: float = 1e-12
    support_tol: float = 1e-12
    sum_tol: float = 1e-10
    bistochastic_tol: float = 1e-9
    orthogonality_tol: float = 1e-9
    diagonal_tol: float = 1e-9
    variational_tol: float = 1e-9
    maximality_tol: float = 1e-6
    default_seed: int = 0
    default_restarts: int = 0
    default_trials: int = 100
    decomposition_samples: int = 200
    report_digits: int = 9
    workers: int = 1


def _coerce(name, raw, default):
    """
    Converts one raw '.env' string to the type of its default.
    Unparseable or non-finite values, and fractional counts, are reported and replaced by the default.
    """
    try:
        value = float(raw)
    except (TypeError, ValueError):
        return _fallback(name, raw, default, "not a number")
    if not math.isfinite(value):
        return _fallback(name, raw, default, "not finite")

    if value < 0:
        raise ConfigError(f"{name} must be non-negative, got {raw}")
    if isinstance(default, int):
        if not value.is_integer():
            return _fallback(name, raw, default, "not a whole number")
        return int(value)
    return value


def _fallback(name, raw, default, reason):
    console.print(f"[yellow]⚠ Ignoring {name}={raw!r}: {reason}. Using {default}.[/yellow]")
    return default


def load_settings(path=ENV_FILE):
    """
    Builds a Settings object from an env file.

    Args:
        path (str): The env file to read. A missing file simply yields the defaults.

    Returns:
        Settings: The merged configuration.
    """
    env_vars = dotenv_values(path)
    overrides = {}

    for field in fields(Settings):
        raw = env_vars.get(field.name.upper())
        if raw is None or raw.strip() == "":
            continue
        overrides[field.name] = _coerce(field.name.upper(), raw.strip(), field.default)

    return Settings(**overrides)


settings = load_settings()

# Module constants used as keyword defaults across the Backend
UNITARY_TOL = settings.unitary_tol
HERMITIAN_TOL = settings.hermitian_tol
POSITIVITY_TOL = settings.positivity_tol
SUPPORT_TOL = settings.support_tol
SUM_TOL = settings.sum_tol
BISTOCHASTIC_TOL = settings.bistochastic_tol
ORTHOGONALITY_TOL = settings.orthogonality_tol
DIAGONAL_TOL = settings.diagonal_tol
VARIATIONAL_TOL = settings.variational_tol
MAXIMALITY_TOL = settings.maximality_tol
