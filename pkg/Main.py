# ===========================================================================================================
#                                         Main.py (Command-Line Orchestrator)
# ===========================================================================================================
# The single entry point of the toolkit. It:
# 1. Parses the command line into a RunConfig (defaults come from '.env' via Backend/Config.py).
# 2. Loads matrix files (Backend/MatrixIO.py).
# 3. Routes the verb to the right Backend computation.
# 4. Prints a key/value report (Frontend/Report.py) and maps failures to exit codes:
#      0 success, 1 verification failure, 2 input / parse error, 3 invalid matrix or state.
#
# Verbs: entropy, hphi, hclosed, orthogonal, gen, verify.

import argparse
import sys
from dataclasses import dataclass

import numpy as np
from rich.console import Console

from Backend.Config import settings
from Backend.Errors import ConfigError, DimensionError, MasaEntropyError, MatrixFileError, UnknownSuiteError
from Backend.Functionals import StateFunctional
from Backend.Masa import (
    Masa,
    conjugate_masa,
    diagonal_masa,
    is_commuting_square,
    is_orthogonal_pair,
    popa_defect,
)
from Backend.MatrixCore import as_unitary, fourier_matrix, permutation_unitary, random_unitary
from Backend.MatrixIO import dumps_matrix, load_matrix, save_matrix
from Backend.RelativeEntropy import h_closed, h_phi_perturbed, is_entropy_maximal
from Backend.Stochastic import entropy, unistochastic
from Backend.Variational import h_phi_variational, h_trace_variational
from Backend.Verification import SUITES, run_suite
from Frontend.Report import Report, emit, suite_report

# -------------------------------------------------------------------------------------------------------
#                                         Initialization
# -------------------------------------------------------------------------------------------------------

# Diagnostics only; reports go through Frontend.Report
err_console = Console(stderr=True)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_INVALID_MATRIX = 3


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs, after merging flags with the settings."""
    command: str
    inputs: tuple = ()
    n: int = 2
    seed: int = 0
    restarts: int = 0
    trials: int = 100
    tol: float = None
    out: str = None
    as_json: bool = False
    kind: str = None
    perm: tuple = ()
    workers: int = 1

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise ConfigError(f"--tol must be positive, got {self.tol}")
        if self.restarts < 0:
            raise ConfigError(f"--restarts must be ≥ 0, got {self.restarts}")
        if self.trials < 0:
            raise ConfigError(f"--trials must be ≥ 0, got {self.trials}")
        if self.workers < 1:
            raise ConfigError(f"--workers must be ≥ 1, got {self.workers}")

    def tolerance(self, default):
        return default if self.tol is None else self.tol

# -------------------------------------------------------------------------------------------------------
#                                         Argument Parsing
# -------------------------------------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=int(settings.default_seed))
    common.add_argument("--restarts", type=int, default=int(settings.default_restarts))
    common.add_argument("--tol", type=float, default=None, help="override the check tolerance")
    common.add_argument("--out", default=None, help="write the report to this file")
    common.add_argument("--json", dest="as_json", action="store_true", help="emit a JSON object")
    common.add_argument("--workers", type=int, default=int(settings.workers))

    parser = argparse.ArgumentParser(
        prog="Main.py",
        description="Conditional relative entropy of maximal abelian subalgebras of M_n(C).",
    )
    verbs = parser.add_subparsers(dest="command", required=True)

    p = verbs.add_parser("entropy", parents=[common], help="H(b(u)) of a unitary file")
    p.add_argument("unitary")

    p = verbs.add_parser("hphi", parents=[common], help="h_φ(D | uDu*) of a state and a unitary")
    p.add_argument("state")
    p.add_argument("unitary")

    p = verbs.add_parser("hclosed", parents=[common], help="h(A | B) of two MASA diagonalizers")
    p.add_argument("masa_a")
    p.add_argument("masa_b")

    p = verbs.add_parser("orthogonal", parents=[common], help="Popa orthogonality of two MASAs")
    p.add_argument("masa_a")
    p.add_argument("masa_b")

    p = verbs.add_parser("gen", parents=[common], help="write a unitary matrix file")
    p.add_argument("kind", choices=["fourier", "random", "permutation"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--perm", default=None, help="1-based permutation, e.g. 2,3,1")

    p = verbs.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--trials", type=int, default=int(settings.default_trials))

    return parser


def _parse_perm(text):
    if text is None:
        return ()
    try:
        return tuple(int(p) - 1 for p in text.split(","))
    except ValueError as e:
        raise ConfigError(f"--perm must be a comma-separated list of integers, got {text!r}") from e


def parse_config(argv=None):
    args = build_parser().parse_args(argv)
    inputs = tuple(
        getattr(args, name) for name in ("unitary", "state", "masa_a", "masa_b")
        if getattr(args, name, None) is not None
    )
    if args.command == "hphi":
        inputs = (args.state, args.unitary)

    return RunConfig(
        command=args.command,
        inputs=inputs,
        n=getattr(args, "n", 2),
        seed=args.seed,
        restarts=args.restarts,
        trials=getattr(args, "trials", int(settings.default_trials)),
        tol=args.tol,
        out=args.out,
        as_json=args.as_json,
        kind=getattr(args, "kind", None) if args.command == "gen" else getattr(args, "suite", None),
        perm=_parse_perm(getattr(args, "perm", None)),
        workers=args.workers,
    )

# -------------------------------------------------------------------------------------------------------
#                                         Commands
# -------------------------------------------------------------------------------------------------------

def _render(report, config):
    return report.to_json() if config.as_json else report.to_text()


def cmd_entropy(config):
    """H(b(u)), ln n and whether D and uDu* are an orthogonal pair."""
    u = as_unitary(load_matrix(config.inputs[0]), settings.unitary_tol)
    n = u.shape[0]
    d = diagonal_masa(n)
    report = Report()
    report.add("n", n)
    report.add("h", entropy(unistochastic(u)))
    report.add("log_n", float(np.log(n)))
    report.add("orthogonal", is_orthogonal_pair(d, conjugate_masa(d, u), config.tolerance(settings.orthogonality_tol)))
    return report, EXIT_OK


def cmd_hphi(config):
    """Closed form of h_φ(D | uDu*) after aligning the state with D, plus an optional search."""
    phi = StateFunctional(load_matrix(config.inputs[0]))
    u = as_unitary(load_matrix(config.inputs[1]), settings.unitary_tol)

    breakdown, aligned = h_phi_perturbed(phi, u)
    report = Report()
    report.add("n", phi.n)
    report.add("h_phi", breakdown.value)
    report.add("weighted_entropy", breakdown.weighted_term)
    report.add("entropy_on_d", breakdown.entropy_on_d)
    report.add("entropy_on_udu", breakdown.entropy_on_udu)

    if config.restarts > 0:
        search = h_phi_variational(aligned, u, config.restarts, config.seed, workers=config.workers)
        report.update(search.as_dict(), prefix="search.")
    return report, EXIT_OK


def cmd_hclosed(config):
    """h(A | B) for two MASAs stored as diagonalizers."""
    a = Masa(load_matrix(config.inputs[0]))
    b = Masa(load_matrix(config.inputs[1]))
    report = Report()
    report.add("n", a.n)
    report.add("h", h_closed(a, b))
    report.add("log_n", float(np.log(a.n)))
    report.add("maximal", is_entropy_maximal(a, b, config.tolerance(settings.maximality_tol)))

    if config.restarts > 0:
        search = h_trace_variational(a, b, config.restarts, config.seed)
        report.update(search.as_dict(), prefix="search.")
    return report, EXIT_OK


def cmd_orthogonal(config):
    a = Masa(load_matrix(config.inputs[0]))
    b = Masa(load_matrix(config.inputs[1]))
    tol = config.tolerance(settings.orthogonality_tol)
    report = Report()
    report.add("n", a.n)
    report.add("orthogonal", is_orthogonal_pair(a, b, tol))
    report.add("commuting_square", is_commuting_square(a, b, tol))
    report.add("popa_defect", popa_defect(a, b))
    report.add("entropy_maximal", is_entropy_maximal(a, b, settings.maximality_tol))
    return report, EXIT_OK


def cmd_gen(config):
    """Writes a Fourier, random or permutation unitary in the matrix file format."""
    if config.kind == "fourier":
        u = fourier_matrix(config.n)
    elif config.kind == "random":
        u = random_unitary(config.n, config.seed)
    else:
        if not config.perm:
            raise ConfigError("gen permutation needs --perm")
        try:
            u = permutation_unitary(config.perm)
        except DimensionError as e:
            raise ConfigError(f"--perm: {e}") from e

    if config.out:
        save_matrix(config.out, u)
    else:
        emit(dumps_matrix(u))
    return None, EXIT_OK


def cmd_verify(config):
    """Runs a named suite; exit code 1 when any non-informational check fails."""
    if config.kind not in SUITES:
        raise UnknownSuiteError(f"unknown suite {config.kind!r}; choose from {', '.join(SUITES)}")
    result = run_suite(
        config.kind,
        config.n,
        config.seed,
        config.trials,
        tol=config.tol,
        restarts=config.restarts,
        progress=err_console.is_terminal,
    )
    return suite_report(result), EXIT_OK if result.passed else EXIT_VERIFICATION_FAILED


COMMANDS = {
    "entropy": cmd_entropy,
    "hphi": cmd_hphi,
    "hclosed": cmd_hclosed,
    "orthogonal": cmd_orthogonal,
    "gen": cmd_gen,
    "verify": cmd_verify,
}

# -------------------------------------------------------------------------------------------------------
#                                         Entry Point
# -------------------------------------------------------------------------------------------------------

def main(argv=None):
    """Runs one command and returns its exit code."""
    try:
        config = parse_config(argv)
    except SystemExit as e:
        # argparse already printed usage; --help exits with 0
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT_ERROR
    except ConfigError as e:
        err_console.print(f"[bold red]Input error:[/bold red] {e}")
        return EXIT_INPUT_ERROR

    try:
        report, code = COMMANDS[config.command](config)
        if report is not None:
            emit(_render(report, config), config.out)
        return code

    except (MatrixFileError, UnknownSuiteError, ConfigError) as e:
        err_console.print(f"[bold red]Input error:[/bold red] {e}")
        return EXIT_INPUT_ERROR
    except MasaEntropyError as e:
        err_console.print(f"[bold red]Invalid input:[/bold red] {e}")
        return EXIT_INVALID_MATRIX
    except OSError as e:
        err_console.print(f"[bold red]I/O error:[/bold red] {e}")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
