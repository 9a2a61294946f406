"""Acceptance criteria 1-11, evaluated through the installed command line.

The report from a single ``trisqueeze selfcheck --json`` run backs criteria
1-10; criterion 11 is that run's exit status.  Every criterion records a
PASS/FAIL line that the terminal summary prints at the end of the session.
"""

import json
import subprocess
import sys

import pytest

from trisqueeze.checks import CRITERIA

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def selfcheck_report():
    proc = subprocess.run(
        [sys.executable, "-m", "trisqueeze.cli", "selfcheck", "--json"],
        capture_output=True,
        text=True,
        timeout=900,
    )
    payload = json.loads(proc.stdout)
    return proc.returncode, {c["number"]: c for c in payload["checks"]}


def _line(number, name, passed, detail):
    text = f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {name}"
    if detail:
        text += f"  [{detail}]"
    ACCEPTANCE_LINES.append(text)
    print(text)


def _fmt(x):
    return "n/a" if x is None else f"{x:.3g}"


@pytest.mark.slow
@pytest.mark.parametrize("number,name", [(n, name) for n, name, _ in CRITERIA], ids=[f"criterion_{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(selfcheck_report, number, name):
    _, checks = selfcheck_report
    c = checks[number]
    detail = f"residual={_fmt(c['residual'])} tol={_fmt(c['tolerance'])} {c['seconds']:.1f}s"
    if c["message"]:
        detail += f"; {c['message']}"
    _line(number, name, c["passed"], detail)
    assert c["passed"], c["message"] or c["details"]


@pytest.mark.slow
def test_criterion_11_selfcheck_exit_status(selfcheck_report):
    code, checks = selfcheck_report
    failing = sorted(n for n, c in checks.items() if not c["passed"])
    _line(11, "selfcheck exits 0", code == 0, f"exit={code}; failing={failing}")
    assert code == 0
