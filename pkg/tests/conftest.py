import pytest

# criterion number -> (title, outcome)
_criteria: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    title, prev = _criteria.get(number, (title, "PASS"))
    if report.when == "call" or report.failed:
        ok = prev == "PASS" and not report.failed and not report.skipped
        _criteria[number] = (title, "PASS" if ok else "FAIL")
    else:
        _criteria.setdefault(number, (title, prev))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcome = _criteria[number]
        terminalreporter.write_line(f"[{outcome}] criterion {number}: {title}")
