import json
import math

import numpy as np

from Backend.Verification import CheckResult, SuiteResult
from Frontend.Report import Report, format_value, suite_report


def test_format_value():
    assert format_value(True) == "true"
    assert format_value(3) == "3"
    assert format_value(math.log(2)) == "0.693147181"
    assert format_value(math.inf) == "inf"
    assert format_value(0.5, digits=3) == "0.5"


def test_text_and_json_keep_order():
    report = Report().add("n", np.int64(2)).add("h", np.float64(0.1234567891234)).add("ok", np.bool_(False))
    assert report.to_text() == "n: 2\nh: 0.123456789\nok: false"
    assert list(json.loads(report.to_json())) == ["n", "h", "ok"]
    assert json.loads(report.to_json())["ok"] is False


def test_infinite_values_in_json():
    assert json.loads(Report().add("s", math.inf).to_json()) == {"s": "inf"}


def test_suite_report_statuses():
    result = SuiteResult("corollary3", 3, 1, 5, (
        CheckResult("below_log_n", 0.0, 1e-9),
        CheckResult("below_h_closed", 0.2, 1e-9, informational=True),
    ))
    lines = suite_report(result).to_text().splitlines()
    assert lines[:4] == ["suite: corollary3", "n: 3", "seed: 1", "trials: 5"]
    assert "below_log_n.status: pass" in lines
    assert "below_h_closed.status: info" in lines
    assert lines[-1] == "result: pass"
