import pytest


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False,
                     help="run the long full-group scans")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="long-running scan; enable with --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(label, ok, detail)``."""

    def record(label, ok, detail=""):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {label}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    skipped = [
        rep.nodeid.split("::")[-1]
        for rep in terminalreporter.stats.get("skipped", [])
        if "test_acceptance" in rep.nodeid
    ]
    if _ACCEPTANCE or skipped:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
        for name in skipped:
            terminalreporter.write_line(f"[SKIP] {name}: long-running, enable with --run-slow")
