import pytest

_lines = []


@pytest.fixture
def report():
    def record(criterion, passed, detail=""):
        _lines.append(f"criterion {criterion:>2}: {'PASS' if passed else 'FAIL'}  {detail}")
        print(_lines[-1])
    return record


def pytest_terminal_summary(terminalreporter):
    if _lines:
        terminalreporter.section("acceptance criteria")
        for line in _lines:
            terminalreporter.write_line(line)
