import os

import pytest

LONG = os.environ.get("GRAPHRECON_LONG") == "1"

_criteria: dict[int, dict[str, list[str]]] = {}
_criterion_of: dict[str, int] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion covered by the test")


def pytest_collection_modifyitems(config, items):
    skip = pytest.mark.skip(reason="desk-scale run; set GRAPHRECON_LONG=1")
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criterion_of[item.nodeid] = mark.args[0]
        if not LONG and "long" in item.keywords:
            item.add_marker(skip)


def pytest_runtest_logreport(report):
    n = _criterion_of.get(report.nodeid)
    if n is None:
        return
    if report.when == "call" or report.outcome != "passed":
        slot = _criteria.setdefault(n, {"passed": [], "failed": [], "skipped": []})
        slot[report.outcome].append(report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        slot = _criteria[n]
        status = "FAIL" if slot["failed"] else ("PASS" if slot["passed"] else "NOT RUN")
        note = f"{len(slot['passed'])} passed"
        if slot["failed"]:
            note += f", failed: {', '.join(slot['failed'])}"
        if slot["skipped"]:
            note += f", {len(slot['skipped'])} long part(s) skipped"
        terminalreporter.write_line(f"criterion {n}: {status} ({note})")
