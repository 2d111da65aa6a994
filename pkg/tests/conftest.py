import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion reported in the summary")
    config._acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    results = item.config._acceptance
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        results[number] = (title, report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config._acceptance
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, outcome, duration = results[number]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:2d}. {title} ({duration:.1f}s)")
