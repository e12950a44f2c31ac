import re

_CRITERIA = {}
_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_collection_modifyitems(items):
    for item in items:
        m = _PATTERN.search(item.nodeid)
        if m:
            doc = (item.obj.__doc__ or "").strip().splitlines()
            _CRITERIA[item.nodeid] = [int(m.group(1)), doc[0] if doc else "", "NOT RUN"]


def pytest_runtest_logreport(report):
    entry = _CRITERIA.get(report.nodeid)
    if entry is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        entry[2] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(_CRITERIA.values()):
        terminalreporter.write_line(f"criterion {number:2d}: {outcome:4s}  {title}")
