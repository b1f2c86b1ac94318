# ===========================================================================================================
#                                         Report.py
# ===========================================================================================================
# Turns results into the machine-readable reports the CLI prints.
#
# Two renderings of the same ordered key/value pairs:
# - text: one "key: value" line per item (the default),
# - json: a single JSON object (--json).
# Floats are printed with a fixed number of significant digits so that two runs with the same
# inputs and seed produce byte-identical output.

import json
import math

from rich.console import Console

from Backend.Config import settings
from Backend.MatrixIO import write_text_atomic

# -------------------------------------------------------------------------------------------------------
#                                         Configuration
# -------------------------------------------------------------------------------------------------------

# Plain stdout: no markup, no highlighting, no wrapping
console = Console(highlight=False, soft_wrap=True, emoji=False)

# -------------------------------------------------------------------------------------------------------
#                                         Formatting
# -------------------------------------------------------------------------------------------------------

def format_value(value, digits=None):
    digits = settings.report_digits if digits is None else digits
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.{digits}g}"
    return str(value)


def _json_value(value, digits):
    if isinstance(value, float) and not isinstance(value, bool):
        if math.isinf(value) or math.isnan(value):
            return format_value(value, digits)
        return float(f"{value:.{digits}g}")
    return value


class Report:
    """An ordered list of key/value pairs."""

    def __init__(self):
        self.items = []

    def add(self, key, value):
        if hasattr(value, "item"):  # numpy scalars
            value = value.item()
        self.items.append((key, value))
        return self

    def update(self, mapping, prefix=""):
        for key, value in mapping.items():
            self.add(f"{prefix}{key}", value)
        return self

    def to_text(self, digits=None):
        return "\n".join(f"{key}: {format_value(value, digits)}" for key, value in self.items)

    def to_json(self, digits=None):
        digits = settings.report_digits if digits is None else digits
        return json.dumps({key: _json_value(value, digits) for key, value in self.items})

# -------------------------------------------------------------------------------------------------------
#                                         Builders
# -------------------------------------------------------------------------------------------------------

def suite_report(result):
    """A flat report for a SuiteResult: header, one block per check, overall verdict."""
    report = Report()
    report.add("suite", result.name).add("n", result.n).add("seed", result.seed).add("trials", result.trials)
    for check in result.checks:
        status = "info" if check.informational else ("pass" if check.passed else "fail")
        report.add(f"{check.name}.max_deviation", check.max_deviation)
        report.add(f"{check.name}.tolerance", check.tolerance)
        report.add(f"{check.name}.status", status)
    report.add("result", "pass" if result.passed else "fail")
    return report


def emit(text, out=None):
    """Prints to stdout, or writes to `out` atomically when given."""
    if out:
        write_text_atomic(out, text + "\n")
    else:
        console.print(text, markup=False, highlight=False)
