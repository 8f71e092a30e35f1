import os

import pytest

from btcycles.cli import load_problem

PROBLEM_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "problems")


def problem_names():
    return sorted(f[:-5] for f in os.listdir(PROBLEM_DIR)
                  if f.endswith(".json"))


def problem_path(name):
    return os.path.join(PROBLEM_DIR, name + ".json")


@pytest.fixture(scope="session")
def problems():
    """All problem fixtures, parsed and validated once."""
    return {name: load_problem(problem_path(name))
            for name in problem_names()}


# one PASS/FAIL line per acceptance criterion at the end of the run

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.skipped):
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        outcome = _ACCEPTANCE[name]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line("%-60s %s" % (name, verdict))
