import time

import pytest

ACCEPTANCE = {}
_START = time.perf_counter()


@pytest.fixture
def record():
    """record(number, ok, detail): store the one-line verdict of an acceptance criterion."""
    def _record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE[number] = line
        print(line)
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
    terminalreporter.write_line(f"total session time: {time.perf_counter() - _START:.1f} s")
