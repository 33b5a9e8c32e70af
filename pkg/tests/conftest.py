import pytest

_acceptance_reports = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        _acceptance_reports.append((marker.args[0], report.passed))


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(name): acceptance criterion implemented by this test"
    )


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_reports:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, passed in _acceptance_reports:
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
