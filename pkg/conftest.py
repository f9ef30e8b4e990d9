"""Project-wide acceptance reporting.

Tests marked @pytest.mark.acceptance("<name>") get one summary line each,
`[ACCEPTANCE] <name>: PASS` or `FAIL`, printed independently of verbosity so
a criterion's status is always visible in the terminal output.
"""
import pytest


def pytest_configure(config):
    config._acceptance_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    name = mark.args[0] if mark.args else item.name
    results = item.config._acceptance_results
    if rep.when == "call":
        results[name] = rep.passed
    elif rep.failed or (rep.skipped and name not in results):
        # setup errors and skips both mean the criterion was not demonstrated
        results[name] = False


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance_results", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in results.items():
        terminalreporter.write_line(
            f"[ACCEPTANCE] {name}: {'PASS' if passed else 'FAIL'}")
