import pytest

_RESULTS = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: criterion(ok, detail) then assert ok."""

    def record(ok, detail=""):
        name = request.node.name
        _RESULTS.append((name, bool(ok), detail))
        print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
